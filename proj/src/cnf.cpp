#include "eccforge/cnf.hpp"

#include "eccforge/errors.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

namespace eccforge::cnf {
namespace {

long long parse_number(const std::string& token, std::size_t line_no) {
    std::size_t used = 0;
    long long value = 0;
    try {
        value = std::stoll(token, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != token.size()) {
        throw InputError("line " + std::to_string(line_no) + ": bad number '" + token + "'");
    }
    return value;
}

bool clause_satisfied(const Clause& clause, const Assignment& a) {
    return std::any_of(clause.begin(), clause.end(), [&a](const Literal& lit) {
        return (a[lit.var] != 0) == lit.positive;
    });
}

}  // namespace

Formula parse_dimacs(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_dimacs(in);
}

Formula parse_dimacs(std::istream& in) {
    Formula f;
    bool have_header = false;
    long long declared_clauses = 0;
    Clause current;
    bool open_clause = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream tokens(line);
        std::string token;
        if (!(tokens >> token)) continue;
        if (token == "c") continue;
        if (token == "%") break;  // SATLIB end marker
        if (token == "p") {
            if (have_header) throw InputError("line " + std::to_string(line_no) + ": second header");
            std::string format, nv, nc, extra;
            if (!(tokens >> format >> nv >> nc) || format != "cnf") {
                throw InputError("line " + std::to_string(line_no) + ": malformed header, expected 'p cnf <vars> <clauses>'");
            }
            if (tokens >> extra) {
                throw InputError("line " + std::to_string(line_no) + ": trailing token in header");
            }
            const long long vars = parse_number(nv, line_no);
            declared_clauses = parse_number(nc, line_no);
            if (vars < 0 || declared_clauses < 0 || vars > std::numeric_limits<int>::max() / 4) {
                throw InputError("line " + std::to_string(line_no) + ": malformed header counts");
            }
            f.num_vars = static_cast<int>(vars);
            f.num_input_vars = f.num_vars;
            have_header = true;
            continue;
        }
        if (!have_header) {
            throw InputError("line " + std::to_string(line_no) + ": clause before 'p cnf' header");
        }
        do {
            const long long lit = parse_number(token, line_no);
            if (lit == 0) {
                f.clauses.push_back(std::move(current));
                current.clear();
                open_clause = false;
                continue;
            }
            const long long var = lit < 0 ? -lit : lit;
            if (var > f.num_vars) {
                throw InputError("line " + std::to_string(line_no) + ": literal " + token +
                                 " out of range (" + std::to_string(f.num_vars) + " variables)");
            }
            current.push_back({static_cast<int>(var - 1), lit > 0});
            open_clause = true;
        } while (tokens >> token);
    }
    if (!have_header) throw InputError("missing 'p cnf' header");
    if (open_clause) throw InputError("unterminated clause at end of input");
    if (static_cast<long long>(f.clauses.size()) != declared_clauses) {
        throw InputError("header declares " + std::to_string(declared_clauses) + " clauses, found " +
                         std::to_string(f.clauses.size()));
    }
    return f;
}

void write_dimacs(std::ostream& out, const Formula& f) {
    out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
    for (const Clause& clause : f.clauses) {
        for (const Literal& lit : clause) out << (lit.positive ? lit.var + 1 : -(lit.var + 1)) << ' ';
        out << "0\n";
    }
}

Formula normalize(const Formula& f) {
    Formula out;
    out.num_vars = f.num_vars;
    out.num_input_vars = f.num_input_vars;
    out.trivially_unsat = f.trivially_unsat;

    std::set<Clause> seen;
    for (const Clause& raw : f.clauses) {
        Clause clause;
        bool tautology = false;
        for (const Literal& lit : raw) {
            if (lit.var < 0 || lit.var >= f.num_vars) {
                throw InputError("literal variable " + std::to_string(lit.var + 1) + " out of range");
            }
            if (std::find(clause.begin(), clause.end(), lit) != clause.end()) continue;
            if (std::find(clause.begin(), clause.end(), lit.negated()) != clause.end()) tautology = true;
            clause.push_back(lit);
        }
        if (tautology) continue;
        if (clause.empty()) {
            out.trivially_unsat = true;
            continue;
        }
        if (clause.size() > 3) {
            throw InputError("clause with " + std::to_string(clause.size()) +
                             " distinct variables; only 3-CNF input is supported");
        }
        Clause key = clause;
        std::sort(key.begin(), key.end());
        if (!seen.insert(key).second) continue;

        // Widen C to C v y and C v -y, repeatedly, with a fresh y per step.
        std::vector<Clause> widened{clause};
        while (widened.front().size() < 3) {
            const int fresh = out.num_vars++;
            std::vector<Clause> next;
            next.reserve(widened.size() * 2);
            for (const Clause& c : widened) {
                for (bool positive : {true, false}) {
                    Clause extended = c;
                    extended.push_back({fresh, positive});
                    next.push_back(std::move(extended));
                }
            }
            widened = std::move(next);
        }
        for (Clause& c : widened) out.clauses.push_back(std::move(c));
    }
    return out;
}

RegularFormula regularize(const Formula& normalized) {
    for (const Clause& clause : normalized.clauses) {
        if (clause.size() != 3) {
            throw PreconditionError("regularize expects a normalized formula (3 literals per clause)");
        }
    }
    RegularFormula r;
    const int original = normalized.num_vars;
    // At least one dummy, so strictly more than `original` slots.
    const int half = static_cast<int>(std::bit_ceil(static_cast<unsigned>(original) + 1U));
    const int n = 2 * half;

    r.ell = std::countr_zero(static_cast<unsigned>(n));
    r.dup_offset = half;
    r.base.num_vars = n;
    r.base.num_input_vars = normalized.num_input_vars;
    r.base.trivially_unsat = normalized.trivially_unsat;

    r.orig_map.resize(static_cast<std::size_t>(original));
    for (int v = 0; v < original; ++v) r.orig_map[static_cast<std::size_t>(v)] = v + 1;

    r.base.clauses.reserve(normalized.clauses.size() * 2);
    for (const Clause& clause : normalized.clauses) {
        Clause shifted;
        for (const Literal& lit : clause) shifted.push_back({lit.var + 1, lit.positive});
        r.base.clauses.push_back(std::move(shifted));
    }
    const std::size_t first_half = r.base.clauses.size();
    for (std::size_t j = 0; j < first_half; ++j) {
        Clause mirrored;
        for (const Literal& lit : r.base.clauses[j]) {
            mirrored.push_back({lit.var + half, !lit.positive});
        }
        r.base.clauses.push_back(std::move(mirrored));
    }

    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (const Clause& clause : r.base.clauses) {
        for (const Literal& lit : clause) used[static_cast<std::size_t>(lit.var)] = true;
    }
    for (int v = 0; v < n; ++v) {
        if (!used[static_cast<std::size_t>(v)]) r.dummy_indices.push_back(v);
    }
    return r;
}

bool evaluate(const Formula& f, const Assignment& a) {
    if (a.size() != static_cast<std::size_t>(f.num_vars)) {
        throw PreconditionError("assignment has " + std::to_string(a.size()) +
                                " values, formula has " + std::to_string(f.num_vars) + " variables");
    }
    if (f.trivially_unsat) return false;
    return std::all_of(f.clauses.begin(), f.clauses.end(),
                       [&a](const Clause& clause) { return clause_satisfied(clause, a); });
}

bool evaluate(const RegularFormula& f, const Assignment& a) { return evaluate(f.base, a); }

std::optional<Assignment> brute_force_sat(const Formula& f, int max_vars) {
    if (f.num_vars > max_vars) {
        throw GuardExceeded("brute_force_sat: " + std::to_string(f.num_vars) +
                            " variables exceeds the limit of " + std::to_string(max_vars));
    }
    if (f.trivially_unsat) return std::nullopt;
    const std::uint64_t total = std::uint64_t{1} << f.num_vars;
    Assignment a(static_cast<std::size_t>(f.num_vars), 0);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        for (int v = 0; v < f.num_vars; ++v) a[static_cast<std::size_t>(v)] = (mask >> v) & 1U;
        if (evaluate(f, a)) return a;
    }
    return std::nullopt;
}

Assignment lift_assignment(const RegularFormula& f, const Assignment& normalized) {
    if (normalized.size() != f.orig_map.size()) {
        throw PreconditionError("assignment has " + std::to_string(normalized.size()) +
                                " values, expected " + std::to_string(f.orig_map.size()));
    }
    Assignment phi(static_cast<std::size_t>(f.n()), 0);
    for (std::size_t v = 0; v < normalized.size(); ++v) {
        phi[static_cast<std::size_t>(f.orig_map[v])] = normalized[v] ? 1 : 0;
    }
    for (int i = 0; i < f.dup_offset; ++i) {
        phi[static_cast<std::size_t>(i + f.dup_offset)] = 1 - phi[static_cast<std::size_t>(i)];
    }
    return phi;
}

std::optional<Assignment> parse_assignment(std::istream& in, int num_vars) {
    Assignment a(static_cast<std::size_t>(num_vars), 0);
    std::vector<bool> mentioned(static_cast<std::size_t>(num_vars), false);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream tokens(line);
        std::string token;
        if (!(tokens >> token)) continue;
        if (token == "c" || token == "s") continue;
        if (token == "UNSAT" || token == "UNSATISFIABLE") return std::nullopt;
        if (token == "v" && !(tokens >> token)) continue;
        do {
            const long long lit = parse_number(token, line_no);
            if (lit == 0) continue;
            const long long var = lit < 0 ? -lit : lit;
            if (var > num_vars) {
                throw InputError("line " + std::to_string(line_no) + ": literal " + token +
                                 " out of range (" + std::to_string(num_vars) + " variables)");
            }
            const auto idx = static_cast<std::size_t>(var - 1);
            const std::uint8_t value = lit > 0 ? 1 : 0;
            if (mentioned[idx] && a[idx] != value) {
                throw InputError("line " + std::to_string(line_no) + ": variable " +
                                 std::to_string(var) + " assigned both ways");
            }
            mentioned[idx] = true;
            a[idx] = value;
        } while (tokens >> token);
    }
    return a;
}

void write_assignment(std::ostream& out, const std::optional<Assignment>& a) {
    if (!a) {
        out << "UNSAT\n";
        return;
    }
    for (std::size_t v = 0; v < a->size(); ++v) {
        if (v) out << ' ';
        const long long lit = static_cast<long long>(v) + 1;
        out << ((*a)[v] ? lit : -lit);
    }
    out << '\n';
}

}  // namespace eccforge::cnf
