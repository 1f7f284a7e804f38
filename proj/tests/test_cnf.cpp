#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eccforge/cnf.hpp"
#include "eccforge/errors.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <set>
#include <sstream>

using namespace eccforge;
using namespace eccforge::cnf;

namespace {

// Satisfiability by plain enumeration, kept apart from brute_force_sat.
bool satisfiable_by_enumeration(const Formula& f) {
    if (f.trivially_unsat) return false;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << f.num_vars); ++mask) {
        bool all = true;
        for (const Clause& c : f.clauses) {
            bool any = false;
            for (const Literal& lit : c) any = any || (((mask >> lit.var) & 1U) == (lit.positive ? 1U : 0U));
            all = all && any;
        }
        if (all) return true;
    }
    return false;
}

Formula random_mixed(std::mt19937_64& rng, int vars, int clauses) {
    Formula f;
    f.num_vars = f.num_input_vars = vars;
    std::uniform_int_distribution<int> var(0, vars - 1);
    std::uniform_int_distribution<int> width(1, 3);
    for (int j = 0; j < clauses; ++j) {
        Clause c;
        const int w = width(rng);
        for (int a = 0; a < w; ++a) c.push_back({var(rng), (rng() & 1U) != 0});
        f.clauses.push_back(c);
    }
    return f;
}

}  // namespace

TEST_CASE("parse_dimacs examples") {
    const Formula one = parse_dimacs("p cnf 1 1\n1 0\n");
    CHECK(one.num_vars == 1);
    REQUIRE(one.clauses.size() == 1);
    CHECK(one.clauses[0] == Clause{{0, true}});

    const Formula three = parse_dimacs("p cnf 3 1\n1 -2 3 0\n");
    CHECK(three.clauses[0] == Clause{{0, true}, {1, false}, {2, true}});

    const Formula dup = parse_dimacs("p cnf 2 1\n1 1 -1 0");
    CHECK(dup.clauses[0].size() == 3);

    // Clauses may span lines; comments and the SATLIB end marker are skipped.
    const Formula spread = parse_dimacs("c hi\np cnf 3 2\n1 2\n3 0 -1\n0\n%\n0\n");
    CHECK(spread.clauses.size() == 2);
}

TEST_CASE("parse_dimacs errors") {
    CHECK_THROWS_AS((void)parse_dimacs("p cnf x 1\n1 0\n"), InputError);
    CHECK_THROWS_AS((void)parse_dimacs("p dnf 1 1\n1 0\n"), InputError);
    CHECK_THROWS_AS((void)parse_dimacs("1 0\n"), InputError);
    CHECK_THROWS_AS((void)parse_dimacs("p cnf 2 1\n3 0\n"), InputError);
    CHECK_THROWS_AS((void)parse_dimacs("p cnf 2 1\n1 2\n"), InputError);
    CHECK_THROWS_AS((void)parse_dimacs("p cnf 2 2\n1 2 0\n"), InputError);
    CHECK_THROWS_AS((void)parse_dimacs("p cnf 2 1\n1 a 0\n"), InputError);
}

TEST_CASE("write_dimacs round trip") {
    const Formula f = parse_dimacs("p cnf 4 2\n1 -2 3 0\n-4 2 1 0\n");
    std::ostringstream out;
    write_dimacs(out, f);
    CHECK(parse_dimacs(out.str()) == f);
}

TEST_CASE("normalize examples") {
    SUBCASE("a unit clause is widened twice") {
        const Formula f = normalize(parse_dimacs("p cnf 1 1\n1 0\n"));
        CHECK(f.num_vars == 3);
        CHECK(f.num_input_vars == 1);
        REQUIRE(f.clauses.size() == 4);
        std::set<Clause> distinct(f.clauses.begin(), f.clauses.end());
        CHECK(distinct.size() == 4);
        for (const Clause& c : f.clauses) {
            CHECK(c.size() == 3);
            CHECK(c[0] == Literal{0, true});
        }
        // Equisatisfiable: x1 = 1 works, x1 = 0 never does.
        for (int mask = 0; mask < 8; ++mask) {
            const Assignment a{static_cast<std::uint8_t>(mask & 1), static_cast<std::uint8_t>(mask >> 1 & 1),
                               static_cast<std::uint8_t>(mask >> 2 & 1)};
            CHECK(evaluate(f, a) == ((mask & 1) == 1));
        }
    }
    SUBCASE("tautologies are dropped") {
        const Formula f = normalize(parse_dimacs("p cnf 2 1\n1 -1 2 0\n"));
        CHECK(f.clauses.empty());
        CHECK_FALSE(f.trivially_unsat);
    }
    SUBCASE("strict 3-CNF is unchanged") {
        const Formula in = parse_dimacs("p cnf 4 2\n1 -2 3 0\n-4 2 1 0\n");
        CHECK(normalize(in) == in);
        CHECK(normalize(normalize(in)) == in);
    }
    SUBCASE("duplicate literals and clauses collapse") {
        const Formula f = normalize(parse_dimacs("p cnf 3 3\n1 2 3 0\n3 2 1 0\n1 1 2 3 0\n"));
        CHECK(f.clauses.size() == 1);
    }
    SUBCASE("empty clause marks the formula") {
        const Formula f = normalize(parse_dimacs("p cnf 3 2\n0\n1 2 3 0\n"));
        CHECK(f.trivially_unsat);
        CHECK_FALSE(brute_force_sat(f).has_value());
    }
    SUBCASE("wide clauses are rejected") {
        CHECK_THROWS_AS((void)normalize(parse_dimacs("p cnf 4 1\n1 2 3 4 0\n")), InputError);
    }
}

TEST_CASE("normalize preserves satisfiability") {
    std::mt19937_64 rng(11);
    int sat = 0;
    int unsat = 0;
    for (int round = 0; round < 300; ++round) {
        const int vars = std::uniform_int_distribution<int>(1, 8)(rng);
        const Formula f = random_mixed(rng, vars, std::uniform_int_distribution<int>(1, 6)(rng));
        const Formula g = normalize(f);
        for (const Clause& c : g.clauses) {
            REQUIRE(c.size() == 3);
            REQUIRE(c[0].var != c[1].var);
            REQUIRE(c[0].var != c[2].var);
            REQUIRE(c[1].var != c[2].var);
        }
        const bool expected = satisfiable_by_enumeration(f);
        CHECK(brute_force_sat(g).has_value() == expected);
        CHECK(brute_force_sat(f).has_value() == expected);
        (expected ? sat : unsat)++;
        if (!g.trivially_unsat && !g.clauses.empty() && g.num_vars <= 7) {
            CHECK(brute_force_sat(regularize(g).base).has_value() == expected);
        }
    }
    CHECK(sat > 0);
    CHECK(unsat > 0);
}

TEST_CASE("regularize examples") {
    SUBCASE("3 variables, 2 clauses") {
        const RegularFormula r = regularize(normalize(parse_dimacs("p cnf 3 2\n1 2 3 0\n-1 -2 3 0\n")));
        CHECK(r.n() == 8);
        CHECK(r.ell == 3);
        CHECK(r.m() == 4);
        CHECK(r.dup_offset == 4);
        CHECK(r.orig_map == std::vector<int>{1, 2, 3});
        CHECK(r.dummy_indices == std::vector<int>{0, 4});
        // Mirror clause j + m/2 negates clause j over the duplicates.
        for (int j = 0; j < 2; ++j) {
            for (int a = 1; a <= 3; ++a) {
                CHECK(r.var_of(j + 2, a) == r.var_of(j, a) + 4);
                CHECK(r.sign_of(j + 2, a) == 1 - r.sign_of(j, a));
            }
        }
    }
    SUBCASE("4 variables need 8 slots") {
        const RegularFormula r = regularize(normalize(parse_dimacs("p cnf 4 1\n1 2 4 0\n")));
        CHECK(r.n() == 16);
        CHECK(r.ell == 4);
    }
    SUBCASE("unnormalized input is rejected") {
        CHECK_THROWS_AS((void)regularize(parse_dimacs("p cnf 2 1\n1 2 0\n")), PreconditionError);
    }
}

TEST_CASE("regularize properties") {
    std::mt19937_64 rng(5);
    for (int round = 0; round < 200; ++round) {
        const int vars = std::uniform_int_distribution<int>(3, 9)(rng);
        const Formula g = normalize(random_mixed(rng, vars, std::uniform_int_distribution<int>(1, 8)(rng)));
        if (g.trivially_unsat || g.clauses.empty()) continue;
        const RegularFormula r = regularize(g);
        const int n = r.n();
        REQUIRE(std::has_single_bit(static_cast<unsigned>(n)));
        REQUIRE(n == 1 << r.ell);
        CHECK(r.m() == 2 * static_cast<int>(g.clauses.size()));
        for (const Clause& c : r.base.clauses) {
            for (const Literal& lit : c) CHECK(lit.var != 0);
        }
        CHECK(r.dummy_indices.front() == 0);

        // The negated extension of any assignment is balanced and evaluates
        // like the normalized formula.
        for (int sample = 0; sample < 8; ++sample) {
            Assignment a(static_cast<std::size_t>(g.num_vars));
            for (auto& bit : a) bit = static_cast<std::uint8_t>(rng() & 1U);
            const Assignment lifted = lift_assignment(r, a);
            CHECK(std::count(lifted.begin(), lifted.end(), 1) == n / 2);
            CHECK(lifted[0] == 0);
            CHECK(evaluate(r, lifted) == evaluate(g, a));
        }
    }
}

TEST_CASE("evaluate and brute_force_sat") {
    const Formula unit = parse_dimacs("p cnf 1 1\n1 0\n");
    CHECK(evaluate(unit, Assignment{1}));
    CHECK_FALSE(evaluate(unit, Assignment{0}));
    CHECK_THROWS_AS((void)evaluate(unit, Assignment{1, 0}), PreconditionError);

    CHECK_FALSE(brute_force_sat(parse_dimacs("p cnf 1 2\n1 0\n-1 0\n")).has_value());
    const Formula three = parse_dimacs("p cnf 3 1\n1 2 3 0\n");
    const auto w = brute_force_sat(three);
    REQUIRE(w.has_value());
    CHECK(evaluate(three, *w));

    Formula big;
    big.num_vars = 25;
    CHECK_THROWS_AS((void)brute_force_sat(big), GuardExceeded);

    std::mt19937_64 rng(3);
    for (int round = 0; round < 50; ++round) {
        const Formula f = random_mixed(rng, 8, 20);
        const auto found = brute_force_sat(f);
        CHECK(found.has_value() == satisfiable_by_enumeration(f));
        if (found) CHECK(evaluate(f, *found));
    }
}

TEST_CASE("assignment files") {
    std::istringstream plain("v 1 -2 3 0\n");
    CHECK(parse_assignment(plain, 3) == Assignment{1, 0, 1});
    std::istringstream partial("c comment\ns SATISFIABLE\n-1\n3\n");
    CHECK(parse_assignment(partial, 4) == Assignment{0, 0, 1, 0});
    std::istringstream unsat("UNSAT\n");
    CHECK_FALSE(parse_assignment(unsat, 3).has_value());
    std::istringstream conflict("1 -1\n");
    CHECK_THROWS_AS((void)parse_assignment(conflict, 2), InputError);
    std::istringstream range("5\n");
    CHECK_THROWS_AS((void)parse_assignment(range, 2), InputError);

    std::ostringstream out;
    write_assignment(out, Assignment{1, 0, 1});
    CHECK(out.str() == "1 -2 3\n");
    std::istringstream back(out.str());
    CHECK(parse_assignment(back, 3) == Assignment{1, 0, 1});
    std::ostringstream none;
    write_assignment(none, std::nullopt);
    CHECK(none.str() == "UNSAT\n");
}
