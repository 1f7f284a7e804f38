#pragma once

#include "eccforge/graph.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace eccforge::cocktail {

/// Largest ell build_cocktail accepts; H_11 already has ~2 million edges.
inline constexpr int kMaxBuildEll = 11;
/// Largest ell for which a maximum-clique enumerator may be created.
inline constexpr int kMaxEnumerateEll = 20;

/// Complete graph on 2^ell vertices minus the perfect matching {2t, 2t+1}.
class CocktailGraph {
public:
    CocktailGraph(int ell, Graph graph) : ell_(ell), graph_(std::move(graph)) {}

    [[nodiscard]] int ell() const { return ell_; }
    [[nodiscard]] std::size_t vertex_count() const { return graph_.vertex_count(); }
    [[nodiscard]] const Graph& graph() const { return graph_; }
    [[nodiscard]] static VertexId partner(VertexId v) { return v ^ 1U; }

private:
    int ell_;
    Graph graph_;
};

/// A maximum clique and its complement.
struct TwinPair {
    VertexSet side0;
    VertexSet side1;
    friend bool operator==(const TwinPair&, const TwinPair&) = default;
};

struct TwinCover {
    std::vector<TwinPair> pairs;

    /// side0, side1 of pair 0, then pair 1, ...
    [[nodiscard]] CliqueCover flatten() const;
};

/// Throws PreconditionError for ell < 1, GuardExceeded above kMaxBuildEll.
[[nodiscard]] CocktailGraph build_cocktail(int ell);

/// Twin pair from one maximum clique.
[[nodiscard]] TwinPair twin_of(const CocktailGraph& g, VertexSet side0);

/// True iff side0 is a maximum clique of g and side1 its complement.
[[nodiscard]] bool is_twin_pair(const CocktailGraph& g, const TwinPair& pair);

/// Completes `seed` (delta twin pairs whose every side choice intersects in
/// exactly 2^(ell-delta) vertices) to a twin clique cover of ell pairs whose
/// first delta pairs are the seed. Throws PreconditionError when the seed
/// is not admissible.
[[nodiscard]] TwinCover extend_twin_cover(const CocktailGraph& g, std::span<const TwinPair> seed);

/// Least k with num_pairs <= C(k-1, ceil(k/2)): the optimum clique cover
/// size of the cocktail party graph on 2 * num_pairs vertices.
[[nodiscard]] int gregory_pullman_opt(std::int64_t num_pairs);

/// Lazily walks the 2^(2^(ell-1)) maximum cliques (one endpoint of every
/// matching pair) in binary-counter order. Single consumer.
class MaxCliqueEnumerator {
public:
    /// Throws GuardExceeded above kMaxEnumerateEll.
    explicit MaxCliqueEnumerator(int ell);

    /// Next maximum clique, or nullopt once exhausted.
    [[nodiscard]] std::optional<VertexSet> next();

private:
    std::vector<std::uint8_t> choice_;  // choice_[t]: which endpoint of pair t
    bool done_ = false;
};

[[nodiscard]] MaxCliqueEnumerator enumerate_max_cliques_cocktail(const CocktailGraph& g);
[[nodiscard]] MaxCliqueEnumerator enumerate_max_cliques_cocktail(int ell);

}  // namespace eccforge::cocktail
