#include "eccforge/solver.hpp"

#include "eccforge/errors.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>

namespace eccforge::solver {
namespace {

using Mask = std::uint64_t;

std::vector<Mask> adjacency_masks(const Graph& g) {
    std::vector<Mask> rows(g.vertex_count(), 0);
    for (const Edge& e : g.edges()) {
        rows[e.u] |= Mask{1} << e.v;
        rows[e.v] |= Mask{1} << e.u;
    }
    return rows;
}

VertexSet to_set(Mask m) {
    VertexSet out;
    while (m) {
        out.push_back(static_cast<VertexId>(std::countr_zero(m)));
        m &= m - 1;
    }
    return out;
}

void bron_kerbosch(const std::vector<Mask>& adj, Mask r, Mask p, Mask x, std::vector<Mask>& out) {
    if (p == 0) {
        if (x == 0) out.push_back(r);
        return;
    }
    // Pivot with the most neighbours in P.
    Mask candidates = p | x;
    int pivot = std::countr_zero(candidates);
    int best = -1;
    while (candidates) {
        const int u = std::countr_zero(candidates);
        candidates &= candidates - 1;
        const int score = std::popcount(p & adj[static_cast<std::size_t>(u)]);
        if (score > best) {
            best = score;
            pivot = u;
        }
    }
    Mask branch = p & ~adj[static_cast<std::size_t>(pivot)];
    while (branch) {
        const int v = std::countr_zero(branch);
        branch &= branch - 1;
        const Mask bit = Mask{1} << v;
        const Mask nv = adj[static_cast<std::size_t>(v)];
        bron_kerbosch(adj, r | bit, p & nv, x & nv, out);
        p &= ~bit;
        x |= bit;
    }
}

void check_guard(const Graph& g, std::size_t max_vertices, const char* who) {
    const std::size_t limit = std::min(max_vertices, kMaxEnumerateVertices);
    if (g.vertex_count() > limit) {
        throw GuardExceeded(std::string(who) + ": " + std::to_string(g.vertex_count()) +
                            " vertices exceeds the limit of " + std::to_string(limit));
    }
}

// Branch-and-bound state shared by solve_exact and solve_minimum.
class CoverSearch {
public:
    CoverSearch(const Graph& g, EdgeFilter required) {
        const std::vector<Mask> adj = adjacency_masks(g);
        for (const Edge& e : g.edges()) {
            if (passes(required, e.cls)) edges_.push_back(e);
        }
        const std::size_t m = edges_.size();

        std::vector<Mask> all;
        bron_kerbosch(adj, 0, g.vertex_count() == 64 ? ~Mask{0} : (Mask{1} << g.vertex_count()) - 1, 0,
                      all);
        std::sort(all.begin(), all.end(), [](Mask a, Mask b) { return to_set(a) < to_set(b); });
        cliques_of_edge_.resize(m);
        for (Mask clique : all) {
            Bitset covers(m);
            for (std::size_t e = 0; e < m; ++e) {
                const Mask ends = (Mask{1} << edges_[e].u) | (Mask{1} << edges_[e].v);
                if ((clique & ends) == ends) covers.set(e);
            }
            if (covers.none()) continue;
            for (std::size_t e = covers.find_first(); e != Bitset::npos; e = covers.find_next(e)) {
                cliques_of_edge_[e].push_back(cliques_.size());
            }
            cliques_.push_back(clique);
            clique_edges_.push_back(std::move(covers));
        }

        // compatible_[e] holds f iff some clique contains both e and f.
        compatible_.assign(m, Bitset(m));
        for (std::size_t e = 0; e < m; ++e) {
            const Mask ends_e = (Mask{1} << edges_[e].u) | (Mask{1} << edges_[e].v);
            for (std::size_t f = 0; f < m; ++f) {
                const Mask ends = ends_e | (Mask{1} << edges_[f].u) | (Mask{1} << edges_[f].v);
                bool clique = true;
                for (Mask rest = ends; rest && clique; rest &= rest - 1) {
                    const int v = std::countr_zero(rest);
                    clique = (ends & ~(Mask{1} << v) & ~adj[static_cast<std::size_t>(v)]) == 0;
                }
                if (clique) compatible_[e].set(f);
            }
        }
    }

    [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }

    /// Greedy set of uncovered edges no two of which share a clique.
    [[nodiscard]] std::size_t lower_bound(const Bitset& covered) const {
        Bitset blocked = covered;
        std::size_t count = 0;
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            if (blocked.test(e)) continue;
            ++count;
            blocked |= compatible_[e];
        }
        return count;
    }

    /// Runs the search; on success writes the chosen clique indices.
    bool run(std::int64_t k_limit, bool strict, unsigned threads, std::vector<std::size_t>& chosen) {
        Bitset covered(edges_.size());
        stop_ = false;
        if (k_limit < 0) return false;
        if (edges_.empty()) return true;
        if (static_cast<std::int64_t>(lower_bound(covered)) > k_limit) return false;
        if (strict || threads <= 1) {
            std::vector<std::size_t> stack;
            if (!search(covered, stack, k_limit)) return false;
            chosen = std::move(stack);
            return true;
        }
        // Root candidates are split across workers; first success wins.
        const std::vector<std::size_t> roots = candidates(covered);
        std::atomic<std::size_t> next{0};
        std::mutex result_mutex;
        std::vector<std::thread> workers;
        for (unsigned w = 0; w < threads; ++w) {
            workers.emplace_back([&] {
                for (std::size_t i = next++; i < roots.size() && !stop_; i = next++) {
                    std::vector<std::size_t> stack{roots[i]};
                    if (search(covered | clique_edges_[roots[i]], stack, k_limit)) {
                        std::lock_guard lock(result_mutex);
                        if (!stop_.exchange(true)) chosen = std::move(stack);
                    }
                }
            });
        }
        for (auto& t : workers) t.join();
        return stop_.load();
    }

    [[nodiscard]] VertexSet clique(std::size_t index) const { return to_set(cliques_[index]); }

private:
    /// Maximal cliques through the uncovered edge with the fewest of them,
    /// most new coverage first, dominated candidates dropped.
    [[nodiscard]] std::vector<std::size_t> candidates(const Bitset& covered) const {
        std::size_t branch_edge = Bitset::npos;
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            if (covered.test(e)) continue;
            if (branch_edge == Bitset::npos ||
                cliques_of_edge_[e].size() < cliques_of_edge_[branch_edge].size()) {
                branch_edge = e;
            }
        }
        const std::vector<std::size_t>& through = cliques_of_edge_[branch_edge];
        std::vector<Bitset> gain;
        gain.reserve(through.size());
        for (std::size_t c : through) gain.push_back(clique_edges_[c] - covered);

        std::vector<std::size_t> order;
        for (std::size_t a = 0; a < through.size(); ++a) {
            bool dominated = false;
            for (std::size_t b = 0; b < through.size() && !dominated; ++b) {
                if (a == b || !gain[a].is_subset_of(gain[b])) continue;
                dominated = gain[a] != gain[b] || b < a;
            }
            if (!dominated) order.push_back(a);
        }
        std::stable_sort(order.begin(), order.end(), [&gain](std::size_t a, std::size_t b) {
            return gain[a].count() > gain[b].count();
        });
        std::vector<std::size_t> out;
        out.reserve(order.size());
        for (std::size_t a : order) out.push_back(through[a]);
        return out;
    }

    bool search(const Bitset& covered, std::vector<std::size_t>& stack, std::int64_t k_limit) {
        if (stop_) return false;
        if (covered.all()) return true;
        const auto depth = static_cast<std::int64_t>(stack.size());
        if (depth + static_cast<std::int64_t>(lower_bound(covered)) > k_limit) return false;
        for (std::size_t c : candidates(covered)) {
            stack.push_back(c);
            if (search(covered | clique_edges_[c], stack, k_limit)) return true;
            stack.pop_back();
        }
        return false;
    }

    std::vector<Edge> edges_;
    std::vector<Mask> cliques_;
    std::vector<Bitset> clique_edges_;
    std::vector<std::vector<std::size_t>> cliques_of_edge_;
    std::vector<Bitset> compatible_;
    std::atomic<bool> stop_{false};
};

unsigned worker_count(const SolveOptions& options) {
    if (options.strict_deterministic) return 1;
    const unsigned hw = options.threads ? options.threads : std::thread::hardware_concurrency();
    return std::max(1U, hw);
}

}  // namespace

std::vector<VertexSet> enumerate_maximal_cliques(const Graph& g, std::size_t max_vertices) {
    check_guard(g, max_vertices, "enumerate_maximal_cliques");
    if (g.vertex_count() == 0) return {};
    const std::vector<Mask> adj = adjacency_masks(g);
    const Mask everything = g.vertex_count() == 64 ? ~Mask{0} : (Mask{1} << g.vertex_count()) - 1;
    std::vector<Mask> found;
    bron_kerbosch(adj, 0, everything, 0, found);
    std::vector<VertexSet> out;
    out.reserve(found.size());
    for (Mask m : found) out.push_back(to_set(m));
    std::sort(out.begin(), out.end());
    return out;
}

OracleResult min_cover_oracle(const Graph& g, const OracleLimits& limits) {
    if (g.vertex_count() > limits.max_vertices) {
        throw GuardExceeded("min_cover_oracle: " + std::to_string(g.vertex_count()) +
                            " vertices exceeds the limit of " + std::to_string(limits.max_vertices));
    }
    const std::vector<VertexSet> cliques = enumerate_maximal_cliques(g);
    if (cliques.size() > limits.max_cliques) {
        throw GuardExceeded("min_cover_oracle: " + std::to_string(cliques.size()) +
                            " maximal cliques exceeds the limit of " +
                            std::to_string(limits.max_cliques));
    }
    // Edge e <-> bit e; at most 45 edges on 10 vertices.
    const auto edges = g.edges();
    if (edges.size() > 64) throw GuardExceeded("min_cover_oracle: too many edges");
    const Mask full = edges.size() == 64 ? ~Mask{0} : (Mask{1} << edges.size()) - 1;
    std::vector<Mask> covers(cliques.size(), 0);
    for (std::size_t c = 0; c < cliques.size(); ++c) {
        for (std::size_t e = 0; e < edges.size(); ++e) {
            if (std::binary_search(cliques[c].begin(), cliques[c].end(), edges[e].u) &&
                std::binary_search(cliques[c].begin(), cliques[c].end(), edges[e].v)) {
                covers[c] |= Mask{1} << e;
            }
        }
    }
    std::vector<Mask> suffix(cliques.size() + 1, 0);
    for (std::size_t c = cliques.size(); c-- > 0;) suffix[c] = suffix[c + 1] | covers[c];

    std::vector<std::size_t> pick;
    // Lexicographic combinations of `size` cliques starting at `from`.
    auto combine = [&](auto&& self, std::size_t from, std::size_t size, Mask covered) -> bool {
        if (pick.size() == size) return covered == full;
        if ((covered | suffix[from]) != full) return false;
        for (std::size_t c = from; c + (size - pick.size()) <= cliques.size(); ++c) {
            pick.push_back(c);
            if (self(self, c + 1, size, covered | covers[c])) return true;
            pick.pop_back();
        }
        return false;
    };
    for (std::size_t size = 0; size <= cliques.size(); ++size) {
        pick.clear();
        if (combine(combine, 0, size, 0)) {
            OracleResult result;
            result.size = size;
            for (std::size_t c : pick) result.cover.cliques.push_back(cliques[c]);
            return result;
        }
    }
    // Every edge lies in some maximal clique, so size == #cliques always succeeds.
    throw Error("min_cover_oracle: unreachable");
}

KernelResult kernelize(const Graph& g, std::int64_t k) {
    const std::size_t n = g.vertex_count();
    std::vector<Bitset> adj(n);
    std::vector<Bitset> uncovered(n);
    for (VertexId v = 0; v < n; ++v) {
        adj[v] = g.neighbors(v);
        uncovered[v] = g.neighbors(v);
    }
    Bitset alive(n);
    alive.set();

    KernelResult result;
    auto closed = [&](VertexId v) {
        Bitset row = adj[v] & alive;
        row.set(v);
        return row;
    };
    auto is_clique_set = [&](const Bitset& set) {
        for (std::size_t x = set.find_first(); x != Bitset::npos; x = set.find_next(x)) {
            Bitset others = set;
            others.reset(x);
            if (!others.is_subset_of(adj[x])) return false;
        }
        return true;
    };

    bool changed = true;
    while (changed && k >= 0) {
        changed = false;

        // Vertices all of whose remaining edges are covered.
        for (std::size_t v = alive.find_first(); v != Bitset::npos; v = alive.find_next(v)) {
            if (!(uncovered[v] & alive).none()) continue;
            alive.reset(v);
            result.trace.push_back({Rule::isolated, {}, static_cast<VertexId>(v), 0});
            changed = true;
        }
        if (changed) continue;

        // An uncovered edge inside exactly one maximal clique.
        for (std::size_t u = alive.find_first(); u != Bitset::npos && !changed; u = alive.find_next(u)) {
            const Bitset open = uncovered[u] & alive;
            for (std::size_t v = open.find_next(u); v != Bitset::npos; v = open.find_next(v)) {
                const Bitset common = closed(static_cast<VertexId>(u)) & closed(static_cast<VertexId>(v));
                if (!is_clique_set(common)) continue;
                VertexSet clique;
                for (std::size_t x = common.find_first(); x != Bitset::npos; x = common.find_next(x)) {
                    clique.push_back(static_cast<VertexId>(x));
                    uncovered[x] -= common;
                }
                --k;
                result.forced_cliques.push_back(clique);
                result.trace.push_back({Rule::unique_maximal_clique, std::move(clique), 0, 0});
                changed = true;
                break;
            }
        }
        if (changed) continue;

        // Adjacent vertices with equal closed neighbourhoods.
        for (std::size_t u = alive.find_first(); u != Bitset::npos && !changed; u = alive.find_next(u)) {
            const Bitset near = adj[u] & alive;
            for (std::size_t v = near.find_next(u); v != Bitset::npos; v = near.find_next(v)) {
                if (closed(static_cast<VertexId>(u)) != closed(static_cast<VertexId>(v))) continue;
                // v disappears into u; u inherits v's uncovered edges. If uv
                // itself is uncovered, u must keep another uncovered edge so
                // that some clique of the solution contains it.
                Bitset merged = (uncovered[u] | uncovered[v]) & alive;
                merged.reset(u);
                merged.reset(v);
                if (uncovered[u].test(v) && merged.none()) continue;
                for (std::size_t x = merged.find_first(); x != Bitset::npos; x = merged.find_next(x)) {
                    uncovered[u].set(x);
                    uncovered[x].set(u);
                }
                alive.reset(v);
                result.trace.push_back({Rule::closed_twins, {}, static_cast<VertexId>(v),
                                        static_cast<VertexId>(u)});
                changed = true;
                break;
            }
        }
    }
    result.k_reduced = k;

    std::vector<VertexId> reduced_id(n, 0);
    for (std::size_t v = alive.find_first(); v != Bitset::npos; v = alive.find_next(v)) {
        reduced_id[v] = static_cast<VertexId>(result.original_ids.size());
        result.original_ids.push_back(static_cast<VertexId>(v));
    }
    GraphBuilder builder(result.original_ids.size());
    for (VertexId r = 0; r < result.original_ids.size(); ++r) {
        if (g.name(result.original_ids[r])) builder.set_name(r, *g.name(result.original_ids[r]));
    }
    for (const Edge& e : g.edges()) {
        if (!alive.test(e.u) || !alive.test(e.v)) continue;
        builder.add_edge(reduced_id[e.u], reduced_id[e.v],
                         uncovered[e.u].test(e.v) ? EdgeClass::imp : EdgeClass::free);
    }
    result.reduced = std::move(builder).build();
    return result;
}

CliqueCover lift(const KernelResult& kernel, const CliqueCover& reduced_cover) {
    std::vector<std::vector<VertexId>> cliques;
    for (const VertexSet& clique : reduced_cover.cliques) {
        std::vector<VertexId> mapped;
        for (VertexId v : clique) {
            if (v >= kernel.original_ids.size()) throw InputError("lift: vertex outside the kernel");
            mapped.push_back(kernel.original_ids[v]);
        }
        cliques.push_back(std::move(mapped));
    }
    for (auto it = kernel.trace.rbegin(); it != kernel.trace.rend(); ++it) {
        if (it->rule == Rule::unique_maximal_clique) {
            cliques.push_back(it->clique);
        } else if (it->rule == Rule::closed_twins) {
            for (auto& clique : cliques) {
                if (std::find(clique.begin(), clique.end(), it->kept) != clique.end()) {
                    clique.push_back(it->removed);
                }
            }
        }
    }
    CliqueCover cover;
    for (auto& clique : cliques) cover.cliques.push_back(make_vertex_set(std::move(clique)));
    return cover;
}

std::optional<CliqueCover> solve_exact(const Graph& g, std::int64_t k_limit, const SolveOptions& options) {
    check_guard(g, options.max_vertices, "solve_exact");
    CoverSearch search(g, options.required);
    std::vector<std::size_t> chosen;
    if (!search.run(k_limit, options.strict_deterministic, worker_count(options), chosen)) {
        return std::nullopt;
    }
    CliqueCover cover;
    for (std::size_t c : chosen) cover.cliques.push_back(search.clique(c));
    return cover;
}

CliqueCover solve_minimum(const Graph& g, const SolveOptions& options) {
    check_guard(g, options.max_vertices, "solve_minimum");
    const unsigned threads = worker_count(options);
    CoverSearch search(g, options.required);
    for (auto k = static_cast<std::int64_t>(search.lower_bound(Bitset(search.edge_count())));; ++k) {
        std::vector<std::size_t> chosen;
        if (search.run(k, options.strict_deterministic, threads, chosen)) {
            CliqueCover cover;
            for (std::size_t c : chosen) cover.cliques.push_back(search.clique(c));
            return cover;
        }
    }
}

bool kernel_decides_yes(const Graph& g, std::int64_t k, const SolveOptions& options) {
    const KernelResult kernel = kernelize(g, k);
    if (kernel.proven_no()) return false;
    SolveOptions reduced = options;
    reduced.required = EdgeFilter::imp;
    return solve_exact(kernel.reduced, kernel.k_reduced, reduced).has_value();
}

}  // namespace eccforge::solver
