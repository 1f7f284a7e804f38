#pragma once

#include <boost/dynamic_bitset.hpp>

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace eccforge {

using VertexId = std::uint32_t;
using Bitset = boost::dynamic_bitset<std::uint64_t>;

/// Sorted, duplicate-free list of vertex ids.
using VertexSet = std::vector<VertexId>;

enum class EdgeClass : std::uint8_t { imp, free };

/// Which edges a cover is required to cover.
enum class EdgeFilter : std::uint8_t { all, imp, free };

[[nodiscard]] inline bool passes(EdgeFilter filter, EdgeClass cls) {
    switch (filter) {
        case EdgeFilter::all: return true;
        case EdgeFilter::imp: return cls == EdgeClass::imp;
        case EdgeFilter::free: return cls == EdgeClass::free;
    }
    return false;
}

// Gadget vertex names. Index conventions: eta, alpha, beta, a, b are
// 1-based; i, c, j, gamma, t are as in the construction (i, j, t from 0,
// gamma from 1).
struct WName {
    int eta, i, c;
    auto operator<=>(const WName&) const = default;
};
struct UName {
    int eta, gamma;
    auto operator<=>(const UName&) const = default;
};
struct PName {
    int j, alpha, beta;
    auto operator<=>(const PName&) const = default;
};
struct QName {
    int a, b;
    auto operator<=>(const QName&) const = default;
};
struct SName {
    int t;
    auto operator<=>(const SName&) const = default;
};

using VertexName = std::variant<WName, UName, PName, QName, SName>;

std::string to_string(const VertexName& name);

struct Edge {
    VertexId u;  // u < v
    VertexId v;
    EdgeClass cls;
    auto operator<=>(const Edge&) const = default;
};

/// Immutable undirected graph with per-edge classes and optional vertex
/// names. Built through GraphBuilder.
class Graph {
public:
    Graph() = default;

    [[nodiscard]] std::size_t vertex_count() const { return adjacency_.size(); }
    [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }

    [[nodiscard]] bool adjacent(VertexId u, VertexId v) const;
    [[nodiscard]] std::optional<EdgeClass> edge_class(VertexId u, VertexId v) const;

    /// Open neighbourhood as a bit row.
    [[nodiscard]] const Bitset& neighbors(VertexId v) const { return adjacency_.at(v); }
    [[nodiscard]] std::size_t degree(VertexId v) const { return adjacency_.at(v).count(); }

    /// Edges sorted by (u, v).
    [[nodiscard]] std::span<const Edge> edges() const { return edges_; }

    [[nodiscard]] bool has_names() const { return !name_index_.empty(); }
    [[nodiscard]] const std::optional<VertexName>& name(VertexId v) const { return names_.at(v); }
    [[nodiscard]] std::optional<VertexId> find(const VertexName& name) const;

    /// Throws InputError if v is not a vertex of this graph.
    void check_vertex(VertexId v) const;

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.edges_ == b.edges_ && a.names_ == b.names_ &&
               a.adjacency_.size() == b.adjacency_.size();
    }

private:
    friend class GraphBuilder;

    std::vector<Bitset> adjacency_;
    std::vector<Bitset> imp_;
    std::vector<Edge> edges_;
    std::vector<std::optional<VertexName>> names_;
    std::map<VertexName, VertexId> name_index_;
};

class GraphBuilder {
public:
    GraphBuilder() = default;
    explicit GraphBuilder(std::size_t vertex_count);

    VertexId add_vertex();
    VertexId add_vertex(VertexName name);
    void set_name(VertexId v, VertexName name);

    /// Throws InputError on self-loops, duplicate edges or bad ids.
    void add_edge(VertexId u, VertexId v, EdgeClass cls = EdgeClass::imp);

    [[nodiscard]] bool has_edge(VertexId u, VertexId v) const;
    [[nodiscard]] std::size_t vertex_count() const { return adjacency_.size(); }

    [[nodiscard]] Graph build() &&;

private:
    void check(VertexId v) const;

    std::vector<Bitset> adjacency_;
    std::vector<Bitset> imp_;
    std::vector<Edge> edges_;
    std::vector<std::optional<VertexName>> names_;
};

struct CliqueCover {
    std::vector<VertexSet> cliques;

    [[nodiscard]] std::size_t size() const { return cliques.size(); }
    friend bool operator==(const CliqueCover&, const CliqueCover&) = default;
};

/// Sorts and deduplicates.
VertexSet make_vertex_set(std::vector<VertexId> ids);

/// True iff every pair in s is adjacent. Throws InputError on bad ids.
[[nodiscard]] bool is_clique(const Graph& g, std::span<const VertexId> s);

/// Same check, and additionally every internal edge must belong to `cls`.
[[nodiscard]] bool is_clique_of_class(const Graph& g, std::span<const VertexId> s, EdgeClass cls);

struct NotAClique {
    std::size_t clique_index;
    VertexId u, v;  // non-adjacent pair, or u == v for an out-of-range id
};
struct UncoveredEdge {
    VertexId u, v;
};
struct EmptyClique {
    std::size_t clique_index;
};
using CoverViolation = std::variant<NotAClique, UncoveredEdge, EmptyClique>;

struct CoverReport {
    bool valid = true;
    std::optional<CoverViolation> first_violation;

    [[nodiscard]] std::string describe() const;
};

/// Checks that every member set is a clique of g and that every edge
/// passing `required` lies inside at least one member.
[[nodiscard]] CoverReport verify_cover(const Graph& g, const CliqueCover& cover,
                                       EdgeFilter required = EdgeFilter::all);

/// Graph restricted to the edges of one class (vertex set and names kept).
[[nodiscard]] Graph edge_subgraph(const Graph& g, EdgeClass cls);

/// Subgraph induced by `keep` (sorted); vertex i of the result is keep[i].
[[nodiscard]] Graph induced_subgraph(const Graph& g, std::span<const VertexId> keep);

}  // namespace eccforge
