#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace eccforge::cnf {

/// Variables are 0-based internally; DIMACS variable v maps to index v-1.
struct Literal {
    int var;
    bool positive;

    [[nodiscard]] Literal negated() const { return {var, !positive}; }
    auto operator<=>(const Literal&) const = default;
};

using Clause = std::vector<Literal>;

struct Formula {
    int num_vars = 0;
    std::vector<Clause> clauses;
    /// Variables [0, num_input_vars) are the ones the user wrote; anything
    /// above was introduced by normalization.
    int num_input_vars = 0;
    /// Set by normalize when an empty clause was found.
    bool trivially_unsat = false;

    friend bool operator==(const Formula&, const Formula&) = default;
};

/// Formula over n = 2^ell variables with the dummy at index 0 and the
/// negated duplicate of variable i at index i + dup_offset.
struct RegularFormula {
    Formula base;
    int ell = 0;
    std::vector<int> dummy_indices;  // variables occurring in no clause, sorted
    int dup_offset = 0;              // n / 2
    std::vector<int> orig_map;       // normalized-formula variable -> regular index

    [[nodiscard]] int n() const { return base.num_vars; }
    [[nodiscard]] int m() const { return static_cast<int>(base.clauses.size()); }

    /// Variable index of literal alpha (1-based) of clause j.
    [[nodiscard]] int var_of(int j, int alpha) const { return base.clauses[j][alpha - 1].var; }
    /// 1 for a positive literal, 0 for a negative one.
    [[nodiscard]] int sign_of(int j, int alpha) const {
        return base.clauses[j][alpha - 1].positive ? 1 : 0;
    }

    friend bool operator==(const RegularFormula&, const RegularFormula&) = default;
};

using Assignment = std::vector<std::uint8_t>;

inline constexpr int kDefaultBruteForceMaxVars = 24;

/// Strict DIMACS CNF reader. Throws InputError.
[[nodiscard]] Formula parse_dimacs(std::string_view text);
[[nodiscard]] Formula parse_dimacs(std::istream& in);

void write_dimacs(std::ostream& out, const Formula& f);

/// Exactly-3-distinct-variable clauses, tautologies and duplicate clauses
/// removed, short clauses widened with fresh variables. Clauses wider than
/// three are rejected with InputError.
[[nodiscard]] Formula normalize(const Formula& f);

/// Pads with dummies to a power of two (dummy at 0) and appends the
/// negated duplicate formula.
[[nodiscard]] RegularFormula regularize(const Formula& normalized);

/// Throws PreconditionError on a length mismatch.
[[nodiscard]] bool evaluate(const Formula& f, const Assignment& a);
[[nodiscard]] bool evaluate(const RegularFormula& f, const Assignment& a);

/// Exhaustive search. Throws GuardExceeded above max_vars variables.
[[nodiscard]] std::optional<Assignment> brute_force_sat(const Formula& f,
                                                        int max_vars = kDefaultBruteForceMaxVars);

/// Lifts an assignment of the normalized formula to the regular one:
/// dummies false, duplicates negated.
[[nodiscard]] Assignment lift_assignment(const RegularFormula& f, const Assignment& normalized);

/// Reads `[v] ±x ±y ... [0]` or `UNSAT`. Variables not mentioned are false.
/// Returns nullopt for UNSAT.
[[nodiscard]] std::optional<Assignment> parse_assignment(std::istream& in, int num_vars);
void write_assignment(std::ostream& out, const std::optional<Assignment>& a);

}  // namespace eccforge::cnf
