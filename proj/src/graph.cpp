#include "eccforge/graph.hpp"

#include "eccforge/errors.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace eccforge {

std::string to_string(const VertexName& name) {
    std::ostringstream out;
    std::visit(
        [&out](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, WName>) {
                out << "w " << n.eta << ' ' << n.i << ' ' << n.c;
            } else if constexpr (std::is_same_v<T, UName>) {
                out << "u " << n.eta << ' ' << n.gamma;
            } else if constexpr (std::is_same_v<T, PName>) {
                out << "p " << n.j << ' ' << n.alpha << ' ' << n.beta;
            } else if constexpr (std::is_same_v<T, QName>) {
                out << "q " << n.a << ' ' << n.b;
            } else {
                out << "s " << n.t;
            }
        },
        name);
    return out.str();
}

void Graph::check_vertex(VertexId v) const {
    if (v >= vertex_count()) {
        throw InputError("vertex id " + std::to_string(v) + " out of range (graph has " +
                         std::to_string(vertex_count()) + " vertices)");
    }
}

bool Graph::adjacent(VertexId u, VertexId v) const {
    check_vertex(u);
    check_vertex(v);
    return adjacency_[u].test(v);
}

std::optional<EdgeClass> Graph::edge_class(VertexId u, VertexId v) const {
    if (!adjacent(u, v)) return std::nullopt;
    return imp_[u].test(v) ? EdgeClass::imp : EdgeClass::free;
}

std::optional<VertexId> Graph::find(const VertexName& name) const {
    auto it = name_index_.find(name);
    if (it == name_index_.end()) return std::nullopt;
    return it->second;
}

GraphBuilder::GraphBuilder(std::size_t vertex_count)
    : adjacency_(vertex_count), imp_(vertex_count), names_(vertex_count) {
    for (std::size_t v = 0; v < vertex_count; ++v) {
        adjacency_[v].resize(vertex_count);
        imp_[v].resize(vertex_count);
    }
}

VertexId GraphBuilder::add_vertex() {
    const auto id = static_cast<VertexId>(adjacency_.size());
    for (auto& row : adjacency_) row.push_back(false);
    for (auto& row : imp_) row.push_back(false);
    adjacency_.emplace_back(id + 1);
    imp_.emplace_back(id + 1);
    names_.emplace_back();
    return id;
}

VertexId GraphBuilder::add_vertex(VertexName name) {
    const VertexId id = add_vertex();
    names_[id] = std::move(name);
    return id;
}

void GraphBuilder::set_name(VertexId v, VertexName name) {
    check(v);
    names_[v] = std::move(name);
}

void GraphBuilder::check(VertexId v) const {
    if (v >= adjacency_.size()) {
        throw InputError("vertex id " + std::to_string(v) + " out of range");
    }
}

bool GraphBuilder::has_edge(VertexId u, VertexId v) const {
    check(u);
    check(v);
    return adjacency_[u].test(v);
}

void GraphBuilder::add_edge(VertexId u, VertexId v, EdgeClass cls) {
    check(u);
    check(v);
    if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
    if (adjacency_[u].test(v)) {
        throw InputError("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    }
    adjacency_[u].set(v);
    adjacency_[v].set(u);
    if (cls == EdgeClass::imp) {
        imp_[u].set(v);
        imp_[v].set(u);
    }
    edges_.push_back({std::min(u, v), std::max(u, v), cls});
}

Graph GraphBuilder::build() && {
    Graph g;
    std::sort(edges_.begin(), edges_.end());
    g.adjacency_ = std::move(adjacency_);
    g.imp_ = std::move(imp_);
    g.edges_ = std::move(edges_);
    g.names_ = std::move(names_);
    for (std::size_t v = 0; v < g.names_.size(); ++v) {
        if (!g.names_[v]) continue;
        auto [it, inserted] = g.name_index_.emplace(*g.names_[v], static_cast<VertexId>(v));
        if (!inserted) {
            throw InputError("vertex name '" + to_string(*g.names_[v]) + "' used twice");
        }
    }
    return g;
}

VertexSet make_vertex_set(std::vector<VertexId> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

bool is_clique(const Graph& g, std::span<const VertexId> s) {
    for (VertexId v : s) g.check_vertex(v);
    for (std::size_t a = 0; a < s.size(); ++a) {
        const Bitset& row = g.neighbors(s[a]);
        for (std::size_t b = a + 1; b < s.size(); ++b) {
            if (s[a] != s[b] && !row.test(s[b])) return false;
        }
    }
    return true;
}

bool is_clique_of_class(const Graph& g, std::span<const VertexId> s, EdgeClass cls) {
    if (!is_clique(g, s)) return false;
    for (std::size_t a = 0; a < s.size(); ++a) {
        for (std::size_t b = a + 1; b < s.size(); ++b) {
            if (s[a] != s[b] && g.edge_class(s[a], s[b]) != cls) return false;
        }
    }
    return true;
}

std::string CoverReport::describe() const {
    if (valid) return "valid";
    std::ostringstream out;
    std::visit(
        [&out](const auto& violation) {
            using T = std::decay_t<decltype(violation)>;
            if constexpr (std::is_same_v<T, NotAClique>) {
                if (violation.u == violation.v) {
                    out << "clique " << violation.clique_index << " contains out-of-range vertex "
                        << violation.u;
                } else {
                    out << "clique " << violation.clique_index << " is not a clique: "
                        << violation.u << " and " << violation.v << " are not adjacent";
                }
            } else if constexpr (std::is_same_v<T, UncoveredEdge>) {
                out << "edge " << violation.u << " " << violation.v << " is not covered";
            } else {
                out << "clique " << violation.clique_index << " is empty";
            }
        },
        *first_violation);
    return out.str();
}

CoverReport verify_cover(const Graph& g, const CliqueCover& cover, EdgeFilter required) {
    const std::size_t n = g.vertex_count();
    // membership[v] has bit t set iff clique t contains v.
    std::vector<Bitset> membership(n, Bitset(cover.size()));
    for (std::size_t t = 0; t < cover.size(); ++t) {
        const VertexSet& clique = cover.cliques[t];
        if (clique.empty()) return {false, EmptyClique{t}};
        for (VertexId v : clique) {
            if (v >= n) return {false, NotAClique{t, v, v}};
        }
        for (std::size_t a = 0; a < clique.size(); ++a) {
            const Bitset& row = g.neighbors(clique[a]);
            for (std::size_t b = a + 1; b < clique.size(); ++b) {
                if (clique[a] != clique[b] && !row.test(clique[b])) {
                    return {false, NotAClique{t, clique[a], clique[b]}};
                }
            }
        }
        for (VertexId v : clique) membership[v].set(t);
    }
    for (const Edge& e : g.edges()) {
        if (!passes(required, e.cls)) continue;
        if (!membership[e.u].intersects(membership[e.v])) {
            return {false, UncoveredEdge{e.u, e.v}};
        }
    }
    return {};
}

Graph edge_subgraph(const Graph& g, EdgeClass cls) {
    GraphBuilder builder(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (g.name(v)) builder.set_name(v, *g.name(v));
    }
    for (const Edge& e : g.edges()) {
        if (e.cls == cls) builder.add_edge(e.u, e.v, e.cls);
    }
    return std::move(builder).build();
}

Graph induced_subgraph(const Graph& g, std::span<const VertexId> keep) {
    std::vector<VertexId> local(g.vertex_count(), std::numeric_limits<VertexId>::max());
    GraphBuilder builder(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) {
        g.check_vertex(keep[i]);
        local[keep[i]] = static_cast<VertexId>(i);
        if (g.name(keep[i])) builder.set_name(static_cast<VertexId>(i), *g.name(keep[i]));
    }
    for (const Edge& e : g.edges()) {
        if (local[e.u] == std::numeric_limits<VertexId>::max() ||
            local[e.v] == std::numeric_limits<VertexId>::max()) {
            continue;
        }
        builder.add_edge(local[e.u], local[e.v], e.cls);
    }
    return std::move(builder).build();
}

}  // namespace eccforge
