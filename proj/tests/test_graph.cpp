#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eccforge/errors.hpp"
#include "eccforge/graph.hpp"
#include "eccforge/graph_io.hpp"
#include "support.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

using namespace eccforge;
using testsupport::cocktail_by_definition;

namespace {

// Label of vertex v in H_3 seen as the cube: pair t gets t and its
// complement. Face (gamma, c) is every vertex whose label has bit gamma = c.
std::uint32_t cube_label(VertexId v) {
    const std::uint32_t t = v >> 1;
    return (v & 1U) ? (7U & ~t) : t;
}

std::vector<VertexSet> cube_faces() {
    std::vector<VertexSet> faces;
    for (int gamma = 0; gamma < 3; ++gamma) {
        for (std::uint32_t c = 0; c < 2; ++c) {
            VertexSet face;
            for (VertexId v = 0; v < 8; ++v) {
                if ((cube_label(v) >> gamma & 1U) == c) face.push_back(v);
            }
            faces.push_back(face);
        }
    }
    return faces;
}

}  // namespace

TEST_CASE("is_clique on singletons, the 4-cycle and H_3") {
    const Graph h2 = cocktail_by_definition(2);
    for (VertexId v = 0; v < 4; ++v) CHECK(is_clique(h2, VertexSet{v}));
    CHECK_FALSE(is_clique(h2, VertexSet{0, 1}));
    CHECK(is_clique(h2, VertexSet{0, 2}));
    CHECK(is_clique(h2, VertexSet{}));

    // All 4-subsets of H_3: exactly the 16 one-endpoint-per-pair sets are cliques.
    const Graph h3 = cocktail_by_definition(3);
    int cliques = 0;
    for (std::uint32_t s = 0; s < 256; ++s) {
        if (std::popcount(s) != 4) continue;
        VertexSet set;
        for (VertexId v = 0; v < 8; ++v) {
            if (s >> v & 1U) set.push_back(v);
        }
        bool one_per_pair = true;
        for (int t = 0; t < 4; ++t) one_per_pair = one_per_pair && ((s >> (2 * t)) & 3U) != 3U;
        CHECK(is_clique(h3, set) == one_per_pair);
        cliques += is_clique(h3, set) ? 1 : 0;
    }
    CHECK(cliques == 16);
}

TEST_CASE("is_clique rejects out-of-range ids") {
    const Graph g = cocktail_by_definition(2);
    CHECK_THROWS_AS((void)is_clique(g, VertexSet{0, 7}), InputError);
}

TEST_CASE("verify_cover examples") {
    SUBCASE("edgeless graph, empty cover") {
        GraphBuilder b(3);
        const Graph g = std::move(b).build();
        CHECK(verify_cover(g, CliqueCover{}).valid);
    }
    SUBCASE("the four edges of the 4-cycle") {
        const Graph h2 = cocktail_by_definition(2);
        const CliqueCover cover{{{0, 2}, {0, 3}, {1, 2}, {1, 3}}};
        CHECK(verify_cover(h2, cover).valid);
    }
    SUBCASE("H_3 with one cube face missing") {
        const Graph h3 = cocktail_by_definition(3);
        const auto faces = cube_faces();
        CHECK(verify_cover(h3, CliqueCover{faces}).valid);
        for (std::size_t drop = 0; drop < faces.size(); ++drop) {
            CliqueCover five;
            for (std::size_t f = 0; f < faces.size(); ++f) {
                if (f != drop) five.cliques.push_back(faces[f]);
            }
            const CoverReport report = verify_cover(h3, five);
            REQUIRE_FALSE(report.valid);
            REQUIRE(std::holds_alternative<UncoveredEdge>(*report.first_violation));
            const auto e = std::get<UncoveredEdge>(*report.first_violation);
            // The reported edge lies in the dropped face and in no other.
            const auto& gone = faces[drop];
            CHECK(std::count(gone.begin(), gone.end(), e.u) == 1);
            CHECK(std::count(gone.begin(), gone.end(), e.v) == 1);
            for (const auto& face : five.cliques) {
                const bool both = std::count(face.begin(), face.end(), e.u) && std::count(face.begin(), face.end(), e.v);
                CHECK_FALSE(both);
            }
        }
    }
    SUBCASE("a non-clique member and an empty member are reported") {
        const Graph h2 = cocktail_by_definition(2);
        const CoverReport bad = verify_cover(h2, CliqueCover{{{0, 1}}});
        REQUIRE(std::holds_alternative<NotAClique>(*bad.first_violation));
        CHECK(std::get<NotAClique>(*bad.first_violation).clique_index == 0);
        const CoverReport empty = verify_cover(h2, CliqueCover{{{0, 2}, {}}});
        CHECK(std::holds_alternative<EmptyClique>(*empty.first_violation));
        const CoverReport range = verify_cover(h2, CliqueCover{{{9}}});
        CHECK_FALSE(range.valid);
        CHECK(range.describe().find("out-of-range") != std::string::npos);
    }
}

TEST_CASE("verify_cover honours the edge filter") {
    GraphBuilder b(3);
    b.add_edge(0, 1, EdgeClass::imp);
    b.add_edge(1, 2, EdgeClass::free);
    const Graph g = std::move(b).build();
    const CliqueCover only_imp{{{0, 1}}};
    CHECK(verify_cover(g, only_imp, EdgeFilter::imp).valid);
    CHECK_FALSE(verify_cover(g, only_imp, EdgeFilter::free).valid);
    CHECK_FALSE(verify_cover(g, only_imp).valid);
}

TEST_CASE("cover properties on random graphs") {
    std::mt19937_64 rng(7);
    for (int round = 0; round < 100; ++round) {
        const int n = std::uniform_int_distribution<int>(1, 12)(rng);
        const Graph g = testsupport::random_graph(rng, n, 0.5);
        CliqueCover per_edge;
        for (const Edge& e : g.edges()) per_edge.cliques.push_back({e.u, e.v});
        REQUIRE(verify_cover(g, per_edge).valid);

        // Monotone: adding a clique keeps a valid cover valid.
        CliqueCover more = per_edge;
        more.cliques.push_back({static_cast<VertexId>(n - 1)});
        CHECK(verify_cover(g, more).valid);

        // Hereditary: subsets of a clique are cliques.
        const auto maximal = testsupport::maximal_cliques_by_subsets(g);
        for (const auto& c : maximal) {
            REQUIRE(is_clique(g, c));
            for (std::uint32_t s = 0; s < (1U << c.size()); ++s) {
                VertexSet sub;
                for (std::size_t i = 0; i < c.size(); ++i) {
                    if (s >> i & 1U) sub.push_back(c[i]);
                }
                CHECK(is_clique(g, sub));
            }
        }
    }
}

TEST_CASE("GraphBuilder rejects self-loops, duplicates and repeated names") {
    GraphBuilder b(3);
    CHECK_THROWS_AS(b.add_edge(1, 1), InputError);
    b.add_edge(0, 2);
    CHECK_THROWS_AS(b.add_edge(2, 0), InputError);
    CHECK_THROWS_AS(b.add_edge(0, 3), InputError);
    b.set_name(0, QName{1, 1});
    b.set_name(1, QName{1, 1});
    CHECK_THROWS_AS((void)std::move(b).build(), InputError);
}

TEST_CASE("edges are canonical and classes are kept") {
    GraphBuilder b(4);
    b.add_edge(3, 1, EdgeClass::free);
    b.add_edge(2, 0);
    const Graph g = std::move(b).build();
    REQUIRE(g.edge_count() == 2);
    CHECK(g.edges()[0] == Edge{0, 2, EdgeClass::imp});
    CHECK(g.edges()[1] == Edge{1, 3, EdgeClass::free});
    CHECK(g.edge_class(1, 3) == EdgeClass::free);
    CHECK(g.edge_class(3, 1) == EdgeClass::free);
    CHECK_FALSE(g.edge_class(0, 1).has_value());
}

TEST_CASE("subgraphs") {
    GraphBuilder b(4);
    b.add_edge(0, 1, EdgeClass::imp);
    b.add_edge(1, 2, EdgeClass::free);
    b.add_edge(2, 3, EdgeClass::imp);
    b.set_name(2, SName{5});
    const Graph g = std::move(b).build();
    const Graph free = edge_subgraph(g, EdgeClass::free);
    CHECK(free.vertex_count() == 4);
    CHECK(free.edge_count() == 1);
    const VertexSet keep{1, 2};
    const Graph induced = induced_subgraph(g, keep);
    CHECK(induced.vertex_count() == 2);
    CHECK(induced.edge_class(0, 1) == EdgeClass::free);
    CHECK(induced.find(SName{5}) == VertexId{1});
}

TEST_CASE("graph file round trip") {
    GraphBuilder b(5);
    b.set_name(0, WName{1, 0, 1});
    b.set_name(1, UName{2, 1});
    b.set_name(2, PName{3, 2, 1});
    b.set_name(3, QName{2, 2});
    b.set_name(4, SName{0});
    b.add_edge(0, 1, EdgeClass::imp);
    b.add_edge(2, 3, EdgeClass::free);
    b.add_edge(3, 4, EdgeClass::free);
    const Graph g = std::move(b).build();

    std::stringstream text;
    write_graph(text, g, 17, {"hello"});
    const GraphFile back = read_graph(text);
    CHECK(back.graph == g);
    CHECK(back.k == 17);
    REQUIRE(back.comments.size() == 1);
    CHECK(back.comments[0] == "hello");

    std::stringstream again;
    write_graph(again, back.graph, back.k, back.comments);
    std::stringstream first;
    write_graph(first, g, 17, {"hello"});
    CHECK(again.str() == first.str());
}

TEST_CASE("graph file errors") {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return read_graph(in);
    };
    CHECK_THROWS_AS(parse("p ecc 2 2 -1\ne 0 1 imp\ne 1 0 imp\n"), InputError);
    CHECK_THROWS_AS(parse("p ecc 2 2 -1\ne 0 1 imp\n"), InputError);
    CHECK_THROWS_AS(parse("p ecc 2 1 -1\ne 0 0 imp\n"), InputError);
    CHECK_THROWS_AS(parse("p ecc 2 1 -1\ne 0 1 heavy\n"), InputError);
    CHECK_THROWS_AS(parse("p ecc 2 1 -1\ne 0 5 imp\n"), InputError);
    CHECK_THROWS_AS(parse("e 0 1 imp\n"), InputError);
    CHECK_THROWS_AS(parse("p cnf 2 1\n"), InputError);
    CHECK_THROWS_AS(parse("p ecc 2 0 -1\nv 0 x 1\n"), InputError);
    CHECK_THROWS_AS(parse("p ecc 2 1 -1\ne 0 1 imp extra\n"), InputError);
    const GraphFile ok = parse("c tiny\np ecc 3 1 -1\ne 0 2 free\n");
    CHECK(ok.graph.vertex_count() == 3);
    CHECK(ok.k == -1);
}

TEST_CASE("cover file round trip") {
    const CliqueCover cover{{{0, 2, 5}, {1}, {3, 4}}};
    std::stringstream text;
    write_cover(text, cover);
    CHECK(read_cover(text) == cover);

    std::istringstream commented("c note\n\n0 1\nc more\n2 3\n");
    CHECK(read_cover(commented) == CliqueCover{{{0, 1}, {2, 3}}});
    std::istringstream bad("0 x\n");
    CHECK_THROWS_AS((void)read_cover(bad), InputError);
}
