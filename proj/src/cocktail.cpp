#include "eccforge/cocktail.hpp"

#include "eccforge/errors.hpp"

#include <algorithm>
#include <string>

namespace eccforge::cocktail {
namespace {

VertexSet complement_of(std::size_t vertex_count, const VertexSet& side) {
    VertexSet out;
    out.reserve(vertex_count - side.size());
    auto it = side.begin();
    for (VertexId v = 0; v < vertex_count; ++v) {
        if (it != side.end() && *it == v) {
            ++it;
        } else {
            out.push_back(v);
        }
    }
    return out;
}

}  // namespace

CliqueCover TwinCover::flatten() const {
    CliqueCover cover;
    cover.cliques.reserve(pairs.size() * 2);
    for (const auto& pair : pairs) {
        cover.cliques.push_back(pair.side0);
        cover.cliques.push_back(pair.side1);
    }
    return cover;
}

CocktailGraph build_cocktail(int ell) {
    if (ell < 1) throw PreconditionError("build_cocktail: ell must be at least 1");
    if (ell > kMaxBuildEll) {
        throw GuardExceeded("build_cocktail: ell " + std::to_string(ell) + " exceeds limit " +
                            std::to_string(kMaxBuildEll));
    }
    const auto n = VertexId{1} << ell;
    GraphBuilder builder(n);
    for (VertexId u = 0; u < n; ++u) {
        for (VertexId v = u + 1; v < n; ++v) {
            if (v != CocktailGraph::partner(u)) builder.add_edge(u, v, EdgeClass::imp);
        }
    }
    return CocktailGraph(ell, std::move(builder).build());
}

TwinPair twin_of(const CocktailGraph& g, VertexSet side0) {
    side0 = make_vertex_set(std::move(side0));
    TwinPair pair{side0, complement_of(g.vertex_count(), side0)};
    return pair;
}

bool is_twin_pair(const CocktailGraph& g, const TwinPair& pair) {
    const std::size_t half = g.vertex_count() / 2;
    if (pair.side0.size() != half || pair.side1.size() != half) return false;
    if (!std::is_sorted(pair.side0.begin(), pair.side0.end()) ||
        std::adjacent_find(pair.side0.begin(), pair.side0.end()) != pair.side0.end()) {
        return false;
    }
    if (pair.side0.back() >= g.vertex_count()) return false;
    // A clique of size 2^(ell-1) holds one endpoint of every matching pair.
    for (VertexId v : pair.side0) {
        if (std::binary_search(pair.side0.begin(), pair.side0.end(), CocktailGraph::partner(v))) {
            return false;
        }
    }
    return pair.side1 == complement_of(g.vertex_count(), pair.side0);
}

TwinCover extend_twin_cover(const CocktailGraph& g, std::span<const TwinPair> seed) {
    const int ell = g.ell();
    const int delta = static_cast<int>(seed.size());
    if (delta < 1 || delta > ell) {
        throw PreconditionError("extend_twin_cover: seed size " + std::to_string(delta) +
                                " outside [1, " + std::to_string(ell) + "]");
    }
    for (std::size_t p = 0; p < seed.size(); ++p) {
        if (!is_twin_pair(g, seed[p])) {
            throw PreconditionError("extend_twin_cover: seed pair " + std::to_string(p) +
                                    " is not a pair of clique twins");
        }
    }

    const std::size_t n = g.vertex_count();
    // label bit (gamma - 1) is the side of v in twin pair gamma.
    std::vector<std::uint32_t> label(n, 0);
    for (int p = 0; p < delta; ++p) {
        for (VertexId v : seed[static_cast<std::size_t>(p)].side1) label[v] |= 1U << p;
    }

    // Every side choice intersects in exactly 2^(ell-delta) vertices, i.e.
    // every delta-bit class has that size.
    const std::uint32_t classes = 1U << delta;
    const std::size_t class_size = std::size_t{1} << (ell - delta);
    std::vector<std::vector<VertexId>> members(classes);
    for (VertexId v = 0; v < n; ++v) members[label[v]].push_back(v);
    for (std::uint32_t c = 0; c < classes; ++c) {
        if (members[c].size() != class_size) {
            throw PreconditionError(
                "extend_twin_cover: side choice " + std::to_string(c) + " intersects in " +
                std::to_string(members[c].size()) + " vertices, expected " +
                std::to_string(class_size));
        }
    }

    // Within X_c the t-th vertex (by id) gets suffix t; its partner, which
    // lies in X_{~c}, gets ~t.
    const std::uint32_t class_mask = classes - 1;
    const std::uint32_t suffix_mask = static_cast<std::uint32_t>(class_size - 1);
    for (std::uint32_t c = 0; c < classes; ++c) {
        const std::uint32_t opposite = ~c & class_mask;
        if (c > opposite) continue;
        for (std::uint32_t t = 0; t < members[c].size(); ++t) {
            const VertexId v = members[c][t];
            const VertexId w = CocktailGraph::partner(v);
            label[v] |= t << delta;
            label[w] |= (~t & suffix_mask) << delta;
        }
    }

    TwinCover cover;
    cover.pairs.assign(seed.begin(), seed.end());
    for (int bit = delta; bit < ell; ++bit) {
        TwinPair pair;
        for (VertexId v = 0; v < n; ++v) {
            ((label[v] >> bit) & 1U ? pair.side1 : pair.side0).push_back(v);
        }
        cover.pairs.push_back(std::move(pair));
    }
    return cover;
}

int gregory_pullman_opt(std::int64_t num_pairs) {
    if (num_pairs < 2) throw PreconditionError("gregory_pullman_opt: requires n >= 2");
    // C(k-1, ceil(k/2)) grows without bound, so the loop terminates well
    // before the binomial overflows for any int64 input.
    for (int k = 1;; ++k) {
        const int top = k - 1;
        const int choose = (k + 1) / 2;
        if (choose > top) continue;
        // Exact binomial via multiplicative formula in unsigned 128-bit.
        unsigned __int128 b = 1;
        for (int i = 1; i <= choose; ++i) b = b * static_cast<unsigned>(top - choose + i) / i;
        if (b >= static_cast<unsigned __int128>(num_pairs)) return k;
    }
}

MaxCliqueEnumerator::MaxCliqueEnumerator(int ell) {
    if (ell < 1) throw PreconditionError("enumerate_max_cliques_cocktail: ell must be at least 1");
    if (ell > kMaxEnumerateEll) {
        throw GuardExceeded("enumerate_max_cliques_cocktail: ell " + std::to_string(ell) +
                            " exceeds limit " + std::to_string(kMaxEnumerateEll));
    }
    choice_.assign(std::size_t{1} << (ell - 1), 0);
}

std::optional<VertexSet> MaxCliqueEnumerator::next() {
    if (done_) return std::nullopt;
    VertexSet clique(choice_.size());
    for (std::size_t t = 0; t < choice_.size(); ++t) {
        clique[t] = static_cast<VertexId>(2 * t + choice_[t]);
    }
    // Binary increment; wrap-around means every selection has been seen.
    std::size_t t = 0;
    while (t < choice_.size() && choice_[t] == 1) choice_[t++] = 0;
    if (t == choice_.size()) {
        done_ = true;
    } else {
        choice_[t] = 1;
    }
    return clique;
}

MaxCliqueEnumerator enumerate_max_cliques_cocktail(const CocktailGraph& g) {
    return MaxCliqueEnumerator(g.ell());
}

MaxCliqueEnumerator enumerate_max_cliques_cocktail(int ell) { return MaxCliqueEnumerator(ell); }

}  // namespace eccforge::cocktail
