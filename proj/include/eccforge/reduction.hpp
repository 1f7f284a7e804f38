#pragma once

#include "eccforge/cnf.hpp"
#include "eccforge/graph.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace eccforge::reduction {

/// ceil(log2 m) for m >= 1.
[[nodiscard]] int ceil_log2(std::int64_t m);

/// Number of cliques in the free-edge cover: 46 + 36 ceil(log2 m) + 24 ell.
[[nodiscard]] std::int64_t free_cover_size(int ell, std::int64_t m);

struct Budget {
    std::int64_t k0;  // cliques reserved for important edges (4 ell)
    std::int64_t k;   // k0 plus one per simplicial vertex
    friend bool operator==(const Budget&, const Budget&) = default;
};

/// Throws PreconditionError unless ell >= 1 and m >= 1.
[[nodiscard]] Budget budget(int ell, std::int64_t m);

/// Dense id assignment. Blocks in order: W^1, W^2, U^1, U^2, P, Q, S.
struct GadgetLayout {
    int n = 0;
    int m = 0;
    int ell = 0;
    VertexId w_begin[2]{};
    VertexId u_begin[2]{};
    VertexId p_begin = 0;
    VertexId q_begin = 0;
    VertexId s_begin = 0;
    VertexId vertex_count = 0;

    [[nodiscard]] static GadgetLayout make(int n, int m, int ell);

    /// eta in {1,2}, i in [0,n), c in {0,1}
    [[nodiscard]] VertexId w(int eta, int i, int c) const {
        return w_begin[eta - 1] + static_cast<VertexId>(2 * i + c);
    }
    /// gamma in [1, ell)
    [[nodiscard]] VertexId u(int eta, int gamma) const {
        return u_begin[eta - 1] + static_cast<VertexId>(gamma - 1);
    }
    /// alpha in {1,2,3}, beta in {1,2}
    [[nodiscard]] VertexId p(int j, int alpha, int beta) const {
        return p_begin + static_cast<VertexId>(6 * j + 2 * (alpha - 1) + (beta - 1));
    }
    /// a, b in {1,2}
    [[nodiscard]] VertexId q(int a, int b) const {
        return q_begin + static_cast<VertexId>(2 * (a - 1) + (b - 1));
    }
    [[nodiscard]] VertexId s(int t) const { return s_begin + static_cast<VertexId>(t); }

    friend bool operator==(const GadgetLayout&, const GadgetLayout&) = default;
};

struct ReductionInstance {
    Graph graph;
    std::int64_t k = 0;
    std::int64_t k0 = 0;
    cnf::RegularFormula formula;
    GadgetLayout layout;
    /// Free-edge cliques in construction order; clique t is the open
    /// neighbourhood of simplicial vertex simplicial_of_clique[t].
    std::vector<VertexSet> free_cover;
    std::vector<VertexId> simplicial_of_clique;
};

/// Throws PreconditionError if f is not a well-formed regular formula
/// (power-of-two n, no clause on variable 0, three distinct variables per
/// clause, at least one clause).
void check_regular(const cnf::RegularFormula& f);

/// The free-edge clique cover, family by family in construction order.
[[nodiscard]] std::vector<VertexSet> build_free_cover(const cnf::RegularFormula& f,
                                                      const GadgetLayout& layout);

[[nodiscard]] ReductionInstance reduce(const cnf::RegularFormula& f);

/// |V| predicted by the layout: 2(2n + ell - 1) + 6m + 4 + |free cover|.
[[nodiscard]] std::int64_t predicted_vertex_count(int n, int m, int ell);

/// Important-edge count: 2(n^2 - n) + 4n(ell - 1) + 3m + 2.
[[nodiscard]] std::int64_t predicted_imp_edge_count(int n, int m, int ell);

/// Graph file with `k` in the header and the variable map in a comment.
void write_instance(std::ostream& out, const ReductionInstance& inst);

/// Reads a file written by write_instance and rebuilds every derived field.
/// Throws InputError if the graph is not exactly a reduction output.
[[nodiscard]] ReductionInstance read_instance(std::istream& in);

}  // namespace eccforge::reduction
