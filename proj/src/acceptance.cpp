#include "eccforge/acceptance.hpp"

#include "eccforge/cnf.hpp"
#include "eccforge/errors.hpp"
#include "eccforge/graph.hpp"
#include "eccforge/reduction.hpp"
#include "eccforge/solver.hpp"
#include "eccforge/transfer.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <functional>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <sstream>

namespace eccforge::acceptance {
namespace {

using Clock = std::chrono::steady_clock;

// Time limits in seconds, one per criterion.
constexpr double kLimitCocktailOptima = 10.0;
constexpr double kLimitTwinCover = 30.0;
constexpr double kLimitLastTwin = 120.0;
constexpr double kLimitFreeCover = 60.0;
constexpr double kLimitCompleteness = 120.0;
constexpr double kLimitSoundness = 120.0;
constexpr double kLimitSolverAgreement = 300.0;
constexpr double kLimitImmunity = 5.0;
constexpr double kLimitSizeLinearity = 5.0;

// Published optimum cover sizes of H_2 and H_3.
constexpr std::size_t kCaptionOptH2 = 4;
constexpr std::size_t kCaptionOptH3 = 5;

struct Corpora {
    int twin_seeds = 50;
    int free_cover_instances = 20;
    int completeness_formulas = 100;
    int random_graphs = 200;
};

// Fails the criterion with a message.
struct Failure {
    std::string message;
};

[[noreturn]] void fail(const std::string& message) { throw Failure{message}; }

void require(bool condition, const std::string& message) {
    if (!condition) fail(message);
}

int uniform(std::mt19937_64& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Random clauses of width 1..3 over distinct variables (widths weighted
// toward 3 when mixed).
cnf::Formula random_formula(std::mt19937_64& rng, int vars, int clauses, bool width3_only) {
    cnf::Formula f;
    f.num_vars = vars;
    f.num_input_vars = vars;
    std::vector<int> pool(static_cast<std::size_t>(vars));
    std::iota(pool.begin(), pool.end(), 0);
    for (int j = 0; j < clauses; ++j) {
        int width = 3;
        if (!width3_only) {
            const int r = uniform(rng, 0, 9);
            width = r == 0 ? 1 : (r <= 2 ? 2 : 3);
        }
        std::shuffle(pool.begin(), pool.end(), rng);
        cnf::Clause clause;
        for (int a = 0; a < width; ++a) {
            clause.push_back({pool[static_cast<std::size_t>(a)], uniform(rng, 0, 1) == 1});
        }
        f.clauses.push_back(std::move(clause));
    }
    return f;
}

struct CorpusEntry {
    cnf::Formula original;
    cnf::Formula normalized;
    reduction::ReductionInstance instance;
    std::optional<cnf::Assignment> witness;  // of the normalized formula
};

std::vector<CorpusEntry> free_cover_corpus(std::mt19937_64& rng, int count) {
    std::vector<CorpusEntry> corpus;
    while (static_cast<int>(corpus.size()) < count) {
        const int vars = uniform(rng, 3, 10);
        cnf::Formula original = random_formula(rng, vars, uniform(rng, 1, 20), false);
        cnf::Formula normalized = cnf::normalize(original);
        if (normalized.trivially_unsat || normalized.clauses.empty()) continue;
        reduction::ReductionInstance inst = reduction::reduce(cnf::regularize(normalized));
        corpus.push_back({std::move(original), std::move(normalized), std::move(inst), std::nullopt});
    }
    return corpus;
}

std::vector<CorpusEntry> completeness_corpus(std::mt19937_64& rng, int count) {
    std::vector<CorpusEntry> corpus;
    while (static_cast<int>(corpus.size()) < count) {
        const int vars = uniform(rng, 3, 8);
        cnf::Formula original = random_formula(rng, vars, uniform(rng, 1, 5 * vars), true);
        cnf::Formula normalized = cnf::normalize(original);
        if (normalized.trivially_unsat || normalized.clauses.empty()) continue;
        auto witness = cnf::brute_force_sat(normalized);
        reduction::ReductionInstance inst = reduction::reduce(cnf::regularize(normalized));
        corpus.push_back({std::move(original), std::move(normalized), std::move(inst), std::move(witness)});
    }
    return corpus;
}

// --- criteria -------------------------------------------------------------

std::string cocktail_optima() {
    std::ostringstream detail;
    const std::pair<int, std::size_t> cases[] = {{2, kCaptionOptH2}, {3, kCaptionOptH3}};
    for (const auto& [ell, expected] : cases) {
        const cocktail::CocktailGraph h = cocktail::build_cocktail(ell);
        const Graph& g = h.graph();
        const std::size_t oracle = solver::min_cover_oracle(g).size;
        const CliqueCover bnb = solver::solve_minimum(g, {.strict_deterministic = true});
        const auto gp = static_cast<std::size_t>(cocktail::gregory_pullman_opt(std::int64_t{1} << (ell - 1)));
        require(verify_cover(g, bnb).valid, "branch-and-bound cover of H_" + std::to_string(ell) + " invalid");
        const bool below = solver::solve_exact(g, static_cast<std::int64_t>(expected) - 1).has_value();
        detail << "H_" << ell << ": oracle=" << oracle << " bnb=" << bnb.size() << " formula=" << gp
               << " caption=" << expected << "; ";
        require(oracle == expected && bnb.size() == expected && gp == expected && !below,
                detail.str() + "mismatch");
    }
    return detail.str();
}

std::string twin_cover(std::mt19937_64& rng, int seeds) {
    int runs = 0;
    for (int ell = 1; ell <= 6; ++ell) {
        const cocktail::CocktailGraph h = cocktail::build_cocktail(ell);
        for (int delta = 1; delta <= std::min(2, ell); ++delta) {
            for (int s = 0; s < seeds; ++s) {
                const auto seed = random_admissible_seed(h, delta, rng);
                const cocktail::TwinCover cover = cocktail::extend_twin_cover(h, seed);
                const std::string where = "ell=" + std::to_string(ell) + " delta=" + std::to_string(delta) +
                                          " sample=" + std::to_string(s);
                require(static_cast<int>(cover.pairs.size()) == ell, where + ": wrong pair count");
                for (int p = 0; p < delta; ++p) {
                    require(cover.pairs[static_cast<std::size_t>(p)] == seed[static_cast<std::size_t>(p)],
                            where + ": seed pair not kept");
                }
                for (const auto& pair : cover.pairs) {
                    require(cocktail::is_twin_pair(h, pair), where + ": not a twin pair");
                }
                const CliqueCover flat = cover.flatten();
                require(static_cast<int>(flat.size()) == 2 * ell, where + ": cover size != 2 ell");
                require(verify_cover(h.graph(), flat).valid, where + ": not a cover");
                ++runs;
            }
        }
    }
    return std::to_string(runs) + " extensions checked";
}

// Edge masks over H_ell (ell <= 3, at most 24 edges).
std::string last_twin() {
    std::ostringstream detail;
    for (int ell = 2; ell <= 3; ++ell) {
        const int nv = 1 << ell;
        const int half = nv / 2;
        std::vector<std::vector<int>> edge_id(static_cast<std::size_t>(nv), std::vector<int>(nv, -1));
        int edges = 0;
        for (int u = 0; u < nv; ++u) {
            for (int v = u + 1; v < nv; ++v) {
                if ((u ^ v) != 1) edge_id[u][v] = edge_id[v][u] = edges++;
            }
        }
        const std::uint64_t all_edges = (std::uint64_t{1} << edges) - 1;
        auto mask_of = [&](unsigned members) {
            std::uint64_t mask = 0;
            for (int u = 0; u < nv; ++u) {
                for (int v = u + 1; v < nv; ++v) {
                    if ((members >> u & 1U) && (members >> v & 1U)) mask |= std::uint64_t{1} << edge_id[u][v];
                }
            }
            return mask;
        };
        // Every clique with at least two vertices, straight from the definition.
        std::vector<unsigned> cliques;
        for (unsigned s = 0; s < (1U << nv); ++s) {
            bool ok = std::popcount(s) >= 2;
            for (int t = 0; t < half && ok; ++t) ok = ((s >> (2 * t)) & 3U) != 3U;
            if (ok) cliques.push_back(s);
        }
        std::vector<std::uint64_t> clique_mask;
        for (unsigned s : cliques) clique_mask.push_back(mask_of(s));
        // Twin pairs, represented by the side holding vertex 0.
        std::vector<unsigned> twin_sides;
        const unsigned full = (1U << nv) - 1;
        for (unsigned s : cliques) {
            if (std::popcount(s) == half && (s & 1U)) twin_sides.push_back(s);
        }
        auto is_twin = [&](unsigned a, unsigned b) {
            return std::popcount(a) == half && std::popcount(b) == half && (a | b) == full && (a & b) == 0;
        };

        std::size_t checked = 0;
        std::size_t twin_completions = 0;
        std::vector<int> pick(static_cast<std::size_t>(ell - 1));
        std::function<void(int, int)> choose = [&](int depth, int from) {
            if (depth == ell - 1) {
                std::uint64_t covered = 0;
                for (int p : pick) {
                    const unsigned side = twin_sides[static_cast<std::size_t>(p)];
                    covered |= mask_of(side) | mask_of(full & ~side);
                }
                const std::uint64_t rest = all_edges & ~covered;
                ++checked;
                require(rest != 0, "ell=" + std::to_string(ell) + ": " + std::to_string(ell - 1) +
                                       " twin pairs already cover H");
                for (std::size_t a = 0; a < cliques.size(); ++a) {
                    require((clique_mask[a] & rest) != rest,
                            "ell=" + std::to_string(ell) + ": completion with one clique exists");
                    for (std::size_t b = a; b < cliques.size(); ++b) {
                        if (((clique_mask[a] | clique_mask[b]) & rest) != rest) continue;
                        require(is_twin(cliques[a], cliques[b]),
                                "ell=" + std::to_string(ell) + ": size-2 completion that is not a twin pair");
                        ++twin_completions;
                    }
                }
                return;
            }
            for (int p = from; p < static_cast<int>(twin_sides.size()); ++p) {
                pick[static_cast<std::size_t>(depth)] = p;
                choose(depth + 1, p + 1);
            }
        };
        choose(0, 0);
        require(twin_completions > 0, "ell=" + std::to_string(ell) + ": no cover of size 2 ell found at all");
        detail << "ell=" << ell << ": " << checked << " seeds, " << cliques.size() << " cliques, "
               << twin_completions << " twin completions; ";
    }
    return detail.str();
}

std::string free_cover(const std::vector<CorpusEntry>& corpus) {
    int index = 0;
    for (const CorpusEntry& entry : corpus) {
        const auto& inst = entry.instance;
        const auto& l = inst.layout;
        const std::string where = "instance " + std::to_string(index++) + " (n=" + std::to_string(l.n) +
                                  " m=" + std::to_string(l.m) + ")";
        const std::vector<VertexSet> cover = reduction::build_free_cover(inst.formula, l);
        int lg = 0;
        while ((std::int64_t{1} << lg) < l.m) ++lg;
        const auto expected = static_cast<std::size_t>(46 + 36 * lg + 24 * l.ell);
        require(cover.size() == expected, where + ": " + std::to_string(cover.size()) +
                                              " free cliques, expected " + std::to_string(expected));
        for (const VertexSet& clique : cover) {
            require(is_clique_of_class(inst.graph, clique, EdgeClass::free),
                    where + ": a free-cover set is not a clique of free edges");
        }
        // Gadget edges only: the simplicial attachments are covered by their
        // own closed neighbourhoods.
        std::vector<VertexId> gadget(l.s_begin);
        std::iota(gadget.begin(), gadget.end(), VertexId{0});
        const Graph core = induced_subgraph(inst.graph, gadget);
        const CoverReport report = verify_cover(core, CliqueCover{cover}, EdgeFilter::free);
        require(report.valid, where + ": " + report.describe());
    }
    return std::to_string(corpus.size()) + " instances";
}

std::string completeness(const std::vector<CorpusEntry>& corpus) {
    int satisfiable = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const CorpusEntry& entry = corpus[i];
        if (!entry.witness) continue;
        ++satisfiable;
        const auto& inst = entry.instance;
        const cnf::Assignment phi = cnf::lift_assignment(inst.formula, *entry.witness);
        const CliqueCover cover = transfer::cover_from_assignment(inst, phi);
        const std::string where = "formula " + std::to_string(i);
        require(static_cast<std::int64_t>(cover.size()) == inst.k,
                where + ": cover has " + std::to_string(cover.size()) + " cliques, k=" + std::to_string(inst.k));
        const CoverReport report = verify_cover(inst.graph, cover);
        require(report.valid, where + ": " + report.describe());
    }
    require(satisfiable > 0, "corpus has no satisfiable formula");
    return std::to_string(satisfiable) + " of " + std::to_string(corpus.size()) + " satisfiable";
}

std::string soundness(const std::vector<CorpusEntry>& corpus) {
    int round_trips = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const CorpusEntry& entry = corpus[i];
        if (!entry.witness) continue;
        const auto& inst = entry.instance;
        const std::string where = "formula " + std::to_string(i);
        const CliqueCover cover =
            transfer::cover_from_assignment(inst, cnf::lift_assignment(inst.formula, *entry.witness));
        const cnf::Assignment regular = transfer::assignment_from_cover(inst, cover);
        require(cnf::evaluate(inst.formula, regular), where + ": extracted assignment fails the regular formula");
        cnf::Assignment original(static_cast<std::size_t>(entry.original.num_vars), 0);
        for (int v = 0; v < entry.original.num_vars; ++v) {
            original[static_cast<std::size_t>(v)] =
                regular[static_cast<std::size_t>(inst.formula.orig_map[static_cast<std::size_t>(v)])];
        }
        require(cnf::evaluate(entry.original, original), where + ": mapped assignment fails the input formula");
        ++round_trips;
    }
    return std::to_string(round_trips) + " round trips";
}

std::string solver_agreement(std::mt19937_64& rng, int count) {
    for (int i = 0; i < count; ++i) {
        const int n = uniform(rng, 1, 9);
        const double p = std::uniform_real_distribution<double>(0.2, 0.9)(rng);
        GraphBuilder builder(static_cast<std::size_t>(n));
        for (int u = 0; u < n; ++u) {
            for (int v = u + 1; v < n; ++v) {
                if (std::bernoulli_distribution(p)(rng)) builder.add_edge(static_cast<VertexId>(u), static_cast<VertexId>(v));
            }
        }
        const Graph g = std::move(builder).build();
        const std::string where = "graph " + std::to_string(i) + " (|V|=" + std::to_string(n) +
                                  " |E|=" + std::to_string(g.edge_count()) + ")";
        const auto opt = static_cast<std::int64_t>(solver::min_cover_oracle(g).size);
        const CliqueCover best = solver::solve_minimum(g, {.strict_deterministic = true});
        require(static_cast<std::int64_t>(best.size()) == opt,
                where + ": solver " + std::to_string(best.size()) + " vs oracle " + std::to_string(opt));
        require(verify_cover(g, best).valid, where + ": solver cover invalid");
        require(!solver::solve_exact(g, opt - 1).has_value(), where + ": solver finds a cover below the optimum");
        require(solver::kernel_decides_yes(g, opt), where + ": kernel turns YES at k=opt into NO");
        require(!solver::kernel_decides_yes(g, opt - 1), where + ": kernel turns NO at k=opt-1 into YES");
    }
    return std::to_string(count) + " graphs";
}

std::string immunity() {
    std::ostringstream detail;
    bool ok = true;
    for (int ell = 2; ell <= 4; ++ell) {
        const cocktail::CocktailGraph h = cocktail::build_cocktail(ell);
        const int opt = cocktail::gregory_pullman_opt(std::int64_t{1} << (ell - 1));
        const solver::KernelResult kernel = solver::kernelize(h.graph(), opt);
        detail << "H_" << ell << ": " << kernel.trace.size() << " rule applications; ";
        ok = ok && kernel.trace.empty();
    }
    require(ok, detail.str());
    return detail.str();
}

std::string size_linearity(const std::vector<const CorpusEntry*>& corpus) {
    for (const CorpusEntry* entry : corpus) {
        const auto& inst = entry->instance;
        const std::int64_t n = inst.formula.n();
        const std::int64_t m = inst.formula.m();
        const std::int64_t ell = inst.formula.ell;
        std::int64_t lg = 0;
        while ((std::int64_t{1} << lg) < m) ++lg;
        const std::int64_t free = 46 + 36 * lg + 24 * ell;
        const std::int64_t vertices = 2 * (2 * n + ell - 1) + 6 * m + 4 + free;
        const std::int64_t k = 28 * ell + 46 + 36 * lg;
        const std::string where = "n=" + std::to_string(n) + " m=" + std::to_string(m);
        require(static_cast<std::int64_t>(inst.graph.vertex_count()) == vertices,
                where + ": |V|=" + std::to_string(inst.graph.vertex_count()) + " expected " + std::to_string(vertices));
        require(inst.k == k, where + ": k=" + std::to_string(inst.k) + " expected " + std::to_string(k));
        require(inst.k0 == 4 * ell, where + ": k0=" + std::to_string(inst.k0));
    }
    return std::to_string(corpus.size()) + " instances";
}

}  // namespace

std::vector<cocktail::TwinPair> random_admissible_seed(const cocktail::CocktailGraph& h, int delta,
                                                       std::mt19937_64& rng) {
    const int ell = h.ell();
    if (delta < 1 || delta > ell) throw PreconditionError("seed size must lie in [1, ell]");
    const auto half = static_cast<std::uint32_t>(h.vertex_count() / 2);
    const std::uint32_t full = (std::uint32_t{1} << ell) - 1;
    std::vector<std::uint32_t> base(half);
    std::iota(base.begin(), base.end(), 0U);
    std::shuffle(base.begin(), base.end(), rng);
    const auto flip = std::uniform_int_distribution<std::uint32_t>(0, full)(rng);
    std::vector<std::uint32_t> label(h.vertex_count());
    for (std::uint32_t t = 0; t < half; ++t) {
        const std::uint32_t mine = base[t] ^ flip;
        const std::uint32_t o = std::uniform_int_distribution<std::uint32_t>(0, 1)(rng);
        label[2 * t + o] = mine;
        label[2 * t + 1 - o] = full & ~mine;
    }
    std::vector<int> bits(static_cast<std::size_t>(ell));
    std::iota(bits.begin(), bits.end(), 0);
    std::shuffle(bits.begin(), bits.end(), rng);
    std::vector<cocktail::TwinPair> seed(static_cast<std::size_t>(delta));
    for (int p = 0; p < delta; ++p) {
        for (VertexId v = 0; v < h.vertex_count(); ++v) {
            auto& side = (label[v] >> bits[static_cast<std::size_t>(p)] & 1U) ? seed[static_cast<std::size_t>(p)].side1
                                                                              : seed[static_cast<std::size_t>(p)].side0;
            side.push_back(v);
        }
    }
    return seed;
}

std::vector<CriterionResult> run_all(const Options& options, std::ostream& out) {
    Corpora sizes;
    if (options.quick) sizes = {10, 5, 20, 40};
    std::mt19937_64 rng(options.seed);

    std::vector<CorpusEntry> free_corpus;
    std::vector<CorpusEntry> complete_corpus;
    std::vector<CriterionResult> results;

    auto run = [&](int id, std::string name, double limit, const std::function<std::string()>& body) {
        CriterionResult r{id, std::move(name), false, {}, 0.0, limit};
        const auto start = Clock::now();
        try {
            r.detail = body();
            r.passed = true;
        } catch (const Failure& f) {
            r.detail = f.message;
        } catch (const std::exception& e) {
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
        if (r.passed && r.seconds > limit) {
            r.passed = false;
            r.detail += " (time limit exceeded)";
        }
        out << (r.passed ? "PASS" : "FAIL") << " [" << id << "] " << r.name << ": " << r.detail << " ("
            << std::fixed << std::setprecision(2) << r.seconds << "s / " << limit << "s)" << std::endl;
        results.push_back(std::move(r));
    };

    run(1, "cocktail optima", kLimitCocktailOptima, [] { return cocktail_optima(); });
    run(2, "twin-cover construction", kLimitTwinCover, [&] { return twin_cover(rng, sizes.twin_seeds); });
    run(3, "last twin pair", kLimitLastTwin, [] { return last_twin(); });

    // Corpus generation counts toward the criterion that first needs it.
    run(4, "free-cover family", kLimitFreeCover, [&] {
        free_corpus = free_cover_corpus(rng, sizes.free_cover_instances);
        return free_cover(free_corpus);
    });
    run(5, "completeness", kLimitCompleteness, [&] {
        complete_corpus = completeness_corpus(rng, sizes.completeness_formulas);
        return completeness(complete_corpus);
    });
    run(6, "soundness round trip", kLimitSoundness, [&] { return soundness(complete_corpus); });
    run(7, "solver, oracle and kernel agree", kLimitSolverAgreement,
        [&] { return solver_agreement(rng, sizes.random_graphs); });
    run(8, "cocktail graphs immune to kernel rules", kLimitImmunity, [] { return immunity(); });
    run(9, "size linearity", kLimitSizeLinearity, [&] {
        std::vector<const CorpusEntry*> all;
        for (const auto& e : free_corpus) all.push_back(&e);
        for (const auto& e : complete_corpus) all.push_back(&e);
        require(!all.empty(), "instance corpus is empty");
        return size_linearity(all);
    });
    return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
    return std::all_of(results.begin(), results.end(), [](const CriterionResult& r) { return r.passed; });
}

}  // namespace eccforge::acceptance
