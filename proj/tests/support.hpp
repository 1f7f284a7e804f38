// Helpers shared by the unit tests. Everything here is built from the
// definitions directly and does not go through the library under test.
#pragma once

#include "eccforge/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace testsupport {

using eccforge::Graph;
using eccforge::GraphBuilder;
using eccforge::VertexId;

/// 2^ell vertices, u ~ v iff u and v are not {2t, 2t+1}.
inline Graph cocktail_by_definition(int ell) {
    const VertexId n = VertexId{1} << ell;
    GraphBuilder b(n);
    for (VertexId u = 0; u < n; ++u) {
        for (VertexId v = u + 1; v < n; ++v) {
            if (u / 2 != v / 2) b.add_edge(u, v);
        }
    }
    return std::move(b).build();
}

inline Graph random_graph(std::mt19937_64& rng, int n, double p) {
    GraphBuilder b(static_cast<std::size_t>(n));
    std::bernoulli_distribution coin(p);
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (coin(rng)) b.add_edge(static_cast<VertexId>(u), static_cast<VertexId>(v));
        }
    }
    return std::move(b).build();
}

inline Graph from_edges(std::size_t n, const std::vector<std::pair<VertexId, VertexId>>& edges) {
    GraphBuilder b(n);
    for (auto [u, v] : edges) b.add_edge(u, v);
    return std::move(b).build();
}

/// Subsets of [0, n) as bit masks with every pair adjacent.
inline bool mask_is_clique(const Graph& g, std::uint32_t mask) {
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
        if (!(mask >> u & 1U)) continue;
        for (VertexId v = u + 1; v < g.vertex_count(); ++v) {
            if ((mask >> v & 1U) && !g.adjacent(u, v)) return false;
        }
    }
    return true;
}

/// Every maximal clique by subset enumeration (n <= 16).
inline std::vector<std::vector<VertexId>> maximal_cliques_by_subsets(const Graph& g) {
    const auto n = static_cast<std::uint32_t>(g.vertex_count());
    std::vector<std::vector<VertexId>> out;
    for (std::uint32_t s = 1; s < (1U << n); ++s) {
        if (!mask_is_clique(g, s)) continue;
        bool maximal = true;
        for (std::uint32_t v = 0; v < n && maximal; ++v) {
            if (!(s >> v & 1U) && mask_is_clique(g, s | (1U << v))) maximal = false;
        }
        if (!maximal) continue;
        std::vector<VertexId> c;
        for (std::uint32_t v = 0; v < n; ++v) {
            if (s >> v & 1U) c.push_back(v);
        }
        out.push_back(c);
    }
    return out;
}

/// Minimum edge clique cover size by trying clique-mask subsets of growing
/// size (tiny graphs only).
inline std::size_t min_cover_by_subsets(const Graph& g) {
    const auto cliques = maximal_cliques_by_subsets(g);
    std::vector<std::uint64_t> masks;
    std::uint64_t all = 0;
    for (const auto& c : cliques) {
        std::uint64_t m = 0;
        std::size_t idx = 0;
        for (const auto& e : g.edges()) {
            const bool in = std::find(c.begin(), c.end(), e.u) != c.end() &&
                            std::find(c.begin(), c.end(), e.v) != c.end();
            if (in) m |= std::uint64_t{1} << idx;
            ++idx;
        }
        masks.push_back(m);
    }
    if (g.edge_count() == 0) return 0;
    all = g.edge_count() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g.edge_count()) - 1;
    for (std::size_t size = 1;; ++size) {
        std::vector<std::size_t> pick(size);
        for (std::size_t i = 0; i < size; ++i) pick[i] = i;
        if (size > masks.size()) return masks.size();
        while (true) {
            std::uint64_t u = 0;
            for (auto i : pick) u |= masks[i];
            if (u == all) return size;
            std::size_t i = size;
            while (i > 0 && pick[i - 1] == masks.size() - size + i - 1) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
}

}  // namespace testsupport
