#pragma once

#include "eccforge/graph.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace eccforge::solver {

inline constexpr std::size_t kMaxEnumerateVertices = 64;
inline constexpr std::size_t kOracleMaxVertices = 10;
inline constexpr std::size_t kOracleMaxCliques = 40;
inline constexpr std::size_t kDefaultSolverMaxVertices = 24;

/// Pivoting Bron-Kerbosch over 64-bit rows. Cliques come back sorted
/// lexicographically; isolated vertices appear as singletons.
/// Throws GuardExceeded above max_vertices (at most 64).
[[nodiscard]] std::vector<VertexSet> enumerate_maximal_cliques(
    const Graph& g, std::size_t max_vertices = kMaxEnumerateVertices);

struct OracleLimits {
    std::size_t max_vertices = kOracleMaxVertices;
    std::size_t max_cliques = kOracleMaxCliques;
};

struct OracleResult {
    std::size_t size = 0;
    CliqueCover cover;
};

/// Tries every subset of maximal cliques in order of increasing size and
/// returns the first one covering all edges. Independent of solve_exact.
[[nodiscard]] OracleResult min_cover_oracle(const Graph& g, const OracleLimits& limits = {});

enum class Rule : std::uint8_t {
    isolated,               // vertex without uncovered edges removed
    unique_maximal_clique,  // N[u] & N[v] is a clique: committed
    closed_twins,           // N[u] == N[v]: one of them removed
};

struct RuleRecord {
    Rule rule;
    VertexSet clique;  // committed clique (unique_maximal_clique), original ids
    VertexId removed = 0;
    VertexId kept = 0;  // twin that stays (closed_twins)
};

/// Reduced instance: cover every `imp` edge of `reduced` with at most
/// k_reduced cliques. `free` edges are already covered and may be reused.
struct KernelResult {
    Graph reduced;
    std::int64_t k_reduced = 0;
    std::vector<VertexSet> forced_cliques;  // original ids
    std::vector<RuleRecord> trace;
    std::vector<VertexId> original_ids;  // reduced id -> original id

    /// k dropped below zero: the original instance has no solution.
    [[nodiscard]] bool proven_no() const { return k_reduced < 0; }
};

/// Applies the isolated-vertex, unique-maximal-clique and closed-twin
/// rules to a fixed point. Every edge of g counts as uncovered.
[[nodiscard]] KernelResult kernelize(const Graph& g, std::int64_t k);

/// Turns a cover of the reduced instance into a cover of the original graph.
[[nodiscard]] CliqueCover lift(const KernelResult& kernel, const CliqueCover& reduced_cover);

struct SolveOptions {
    std::size_t max_vertices = kDefaultSolverMaxVertices;
    /// Single thread, fixed candidate order: identical covers across runs.
    bool strict_deterministic = false;
    /// 0 means std::thread::hardware_concurrency().
    unsigned threads = 0;
    EdgeFilter required = EdgeFilter::all;
};

/// Branch and bound: branch on the uncovered edge contained in the fewest
/// maximal cliques, prune with a lower bound from pairwise non-coverable
/// edges. Returns a cover of size <= k_limit, or nullopt if none exists.
[[nodiscard]] std::optional<CliqueCover> solve_exact(const Graph& g, std::int64_t k_limit,
                                                     const SolveOptions& options = {});

/// Smallest cover, found by raising k from the root lower bound.
[[nodiscard]] CliqueCover solve_minimum(const Graph& g, const SolveOptions& options = {});

/// Answer of the ECC decision problem (g, k) after kernelization.
[[nodiscard]] bool kernel_decides_yes(const Graph& g, std::int64_t k, const SolveOptions& options = {});

}  // namespace eccforge::solver
