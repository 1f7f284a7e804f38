#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eccforge/cocktail.hpp"
#include "eccforge/errors.hpp"
#include "eccforge/solver.hpp"
#include "support.hpp"

#include <algorithm>
#include <random>

using namespace eccforge;
using namespace eccforge::solver;
using testsupport::cocktail_by_definition;
using testsupport::from_edges;

namespace {

std::vector<VertexSet> sorted_subsets(const Graph& g) {
    auto out = testsupport::maximal_cliques_by_subsets(g);
    std::sort(out.begin(), out.end());
    return out;
}

Graph triangle() { return from_edges(3, {{0, 1}, {1, 2}, {0, 2}}); }

}  // namespace

TEST_CASE("Bron-Kerbosch examples") {
    CHECK(enumerate_maximal_cliques(triangle()) == std::vector<VertexSet>{{0, 1, 2}});
    CHECK(enumerate_maximal_cliques(cocktail_by_definition(2)) ==
          std::vector<VertexSet>{{0, 2}, {0, 3}, {1, 2}, {1, 3}});

    const auto h3 = enumerate_maximal_cliques(cocktail_by_definition(3));
    CHECK(h3.size() == 16);
    std::vector<VertexSet> lazy;
    cocktail::MaxCliqueEnumerator it = cocktail::enumerate_max_cliques_cocktail(3);
    while (auto c = it.next()) lazy.push_back(*c);
    std::sort(lazy.begin(), lazy.end());
    CHECK(h3 == lazy);

    GraphBuilder b(3);
    b.add_edge(0, 1);
    const Graph with_isolated = std::move(b).build();
    CHECK(enumerate_maximal_cliques(with_isolated) == std::vector<VertexSet>{{0, 1}, {2}});

    CHECK_THROWS_AS((void)enumerate_maximal_cliques(cocktail_by_definition(3), 4), GuardExceeded);
}

TEST_CASE("Bron-Kerbosch agrees with subset enumeration") {
    std::mt19937_64 rng(17);
    for (int round = 0; round < 120; ++round) {
        const int n = std::uniform_int_distribution<int>(1, 12)(rng);
        const double p = std::uniform_real_distribution<double>(0.1, 0.9)(rng);
        const Graph g = testsupport::random_graph(rng, n, p);
        REQUIRE(enumerate_maximal_cliques(g) == sorted_subsets(g));
    }
}

TEST_CASE("oracle examples and guards") {
    GraphBuilder b(4);
    CHECK(min_cover_oracle(std::move(b).build()).size == 0);
    CHECK(min_cover_oracle(triangle()).size == 1);
    CHECK(min_cover_oracle(cocktail_by_definition(2)).size == 4);
    const OracleResult h3 = min_cover_oracle(cocktail_by_definition(3));
    CHECK(h3.size == 5);
    CHECK(h3.cover.size() == 5);
    CHECK(verify_cover(cocktail_by_definition(3), h3.cover).valid);

    CHECK_THROWS_AS((void)min_cover_oracle(cocktail_by_definition(4)), GuardExceeded);
    CHECK_THROWS_AS((void)min_cover_oracle(cocktail_by_definition(3), OracleLimits{10, 3}), GuardExceeded);
}

TEST_CASE("oracle agrees with subset enumeration") {
    std::mt19937_64 rng(23);
    for (int round = 0; round < 80; ++round) {
        const int n = std::uniform_int_distribution<int>(1, 8)(rng);
        const Graph g = testsupport::random_graph(rng, n, 0.5);
        const OracleResult r = min_cover_oracle(g);
        REQUIRE(r.size == testsupport::min_cover_by_subsets(g));
        CHECK(verify_cover(g, r.cover).valid);
    }
}

TEST_CASE("kernel on small graphs") {
    SUBCASE("triangle") {
        const KernelResult k = kernelize(triangle(), 1);
        CHECK(k.reduced.vertex_count() == 0);
        CHECK(k.k_reduced == 0);
        CHECK_FALSE(k.proven_no());
        REQUIRE(k.forced_cliques.size() == 1);
        CHECK(k.forced_cliques[0] == VertexSet{0, 1, 2});
        CHECK(verify_cover(triangle(), lift(k, CliqueCover{})).valid);
    }
    SUBCASE("triangle with no budget") {
        CHECK(kernelize(triangle(), 0).proven_no());
    }
    SUBCASE("H_3 and H_4 are already reduced") {
        for (int ell = 3; ell <= 4; ++ell) {
            const Graph h = cocktail_by_definition(ell);
            const KernelResult k = kernelize(h, cocktail::gregory_pullman_opt(std::int64_t{1} << (ell - 1)));
            CHECK(k.trace.empty());
            CHECK(k.reduced == h);
        }
    }
    SUBCASE("H_2 is solved by the kernel") {
        // Each edge of the 4-cycle is its own maximal clique.
        const KernelResult k = kernelize(cocktail_by_definition(2), 4);
        CHECK_FALSE(k.trace.empty());
        CHECK(k.k_reduced == 0);
        CHECK(k.forced_cliques.size() == 4);
        CHECK(kernelize(cocktail_by_definition(2), 3).proven_no());
    }
    SUBCASE("closed twins") {
        // K4 minus an edge: vertices 0 and 1 share N[] = {0,1,2,3}.
        const Graph g = from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}});
        const KernelResult k = kernelize(g, 2);
        CHECK_FALSE(k.proven_no());
        CHECK(kernel_decides_yes(g, 2));
        CHECK_FALSE(kernel_decides_yes(g, 1));
    }
}

TEST_CASE("kernel agrees with the oracle on random graphs") {
    std::mt19937_64 rng(41);
    for (int round = 0; round < 150; ++round) {
        const int n = std::uniform_int_distribution<int>(2, 9)(rng);
        const double p = std::uniform_real_distribution<double>(0.2, 0.8)(rng);
        const Graph g = testsupport::random_graph(rng, n, p);
        const auto opt = static_cast<std::int64_t>(min_cover_oracle(g).size);
        if (opt > 0) REQUIRE_FALSE(kernel_decides_yes(g, opt - 1));
        REQUIRE(kernel_decides_yes(g, opt));
        REQUIRE(kernel_decides_yes(g, opt + 1));

        // A cover of the reduced instance lifts to a cover of g.
        const KernelResult k = kernelize(g, opt);
        REQUIRE_FALSE(k.proven_no());
        SolveOptions imp_only;
        imp_only.required = EdgeFilter::imp;
        const auto reduced = solve_exact(k.reduced, k.k_reduced, imp_only);
        REQUIRE(reduced.has_value());
        const CliqueCover lifted = lift(k, *reduced);
        CHECK(verify_cover(g, lifted).valid);
        CHECK(static_cast<std::int64_t>(lifted.size()) <= opt);
    }
}

TEST_CASE("solve_exact on cocktail graphs") {
    const Graph h2 = cocktail_by_definition(2);
    CHECK_FALSE(solve_exact(h2, 3).has_value());
    const auto four = solve_exact(h2, 4);
    REQUIRE(four.has_value());
    CHECK(verify_cover(h2, *four).valid);

    const Graph h3 = cocktail_by_definition(3);
    CHECK_FALSE(solve_exact(h3, 4).has_value());
    const auto five = solve_exact(h3, 5);
    REQUIRE(five.has_value());
    CHECK(five->size() <= 5);
    CHECK(verify_cover(h3, *five).valid);

    const Graph h4 = cocktail_by_definition(4);
    CHECK(solve_minimum(h4).size() == static_cast<std::size_t>(cocktail::gregory_pullman_opt(8)));
}

TEST_CASE("solve_minimum agrees with the oracle") {
    std::mt19937_64 rng(43);
    for (int round = 0; round < 100; ++round) {
        const int n = std::uniform_int_distribution<int>(1, 10)(rng);
        const Graph g = testsupport::random_graph(rng, n, 0.5);
        const CliqueCover c = solve_minimum(g);
        REQUIRE(verify_cover(g, c).valid);
        REQUIRE(c.size() == min_cover_oracle(g).size);
    }
}

TEST_CASE("determinism and threads") {
    std::mt19937_64 rng(47);
    SolveOptions strict;
    strict.strict_deterministic = true;
    SolveOptions parallel;
    parallel.threads = 4;
    for (int round = 0; round < 20; ++round) {
        const Graph g = testsupport::random_graph(rng, 14, 0.5);
        const CliqueCover a = solve_minimum(g, strict);
        const CliqueCover b = solve_minimum(g, strict);
        CHECK(a == b);
        const CliqueCover c = solve_minimum(g, parallel);
        CHECK(verify_cover(g, c).valid);
        CHECK(c.size() == a.size());
    }
}

TEST_CASE("solver guards") {
    SolveOptions small;
    small.max_vertices = 4;
    CHECK_THROWS_AS((void)solve_exact(cocktail_by_definition(3), 5, small), GuardExceeded);
    CHECK_FALSE(solve_exact(triangle(), -1).has_value());
    GraphBuilder b(2);
    const auto empty = solve_exact(std::move(b).build(), 0);
    REQUIRE(empty.has_value());
    CHECK(empty->size() == 0);
}
