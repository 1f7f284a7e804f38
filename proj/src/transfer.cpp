#include "eccforge/transfer.hpp"

#include "eccforge/cocktail.hpp"
#include "eccforge/errors.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace eccforge::transfer {
namespace {

using reduction::GadgetLayout;
using reduction::ReductionInstance;

bool contains(const VertexSet& clique, VertexId v) {
    return std::binary_search(clique.begin(), clique.end(), v);
}

}  // namespace

AssignmentWitness make_witness(const ReductionInstance& inst, const cnf::Assignment& phi) {
    const cnf::RegularFormula& f = inst.formula;
    const auto n = static_cast<std::size_t>(f.n());
    AssignmentWitness w;
    if (phi.size() == n / 2) {
        w.phi.assign(n, 0);
        for (std::size_t i = 0; i < n / 2; ++i) {
            w.phi[i] = phi[i] ? 1 : 0;
            w.phi[i + n / 2] = phi[i] ? 0 : 1;
        }
        w.phi[0] = 0;
        w.phi[n / 2] = 1;
    } else if (phi.size() == n) {
        w.phi = phi;
    } else {
        throw PreconditionError("assignment has " + std::to_string(phi.size()) +
                                " values; expected " + std::to_string(n) + " or " +
                                std::to_string(n / 2));
    }
    if (w.phi[0] != 0) throw PreconditionError("assignment must set dummy variable 0 to false");
    const auto ones = static_cast<std::size_t>(std::count(w.phi.begin(), w.phi.end(), 1));
    if (ones != n / 2) {
        throw PreconditionError("assignment is not balanced: " + std::to_string(ones) + " of " +
                                std::to_string(n) + " variables true");
    }
    if (!cnf::evaluate(f, w.phi)) throw PreconditionError("assignment does not satisfy the formula");

    w.alpha.resize(static_cast<std::size_t>(f.m()));
    for (int j = 0; j < f.m(); ++j) {
        for (int alpha = 1; alpha <= 3; ++alpha) {
            if (w.phi[static_cast<std::size_t>(f.var_of(j, alpha))] == f.sign_of(j, alpha)) {
                w.alpha[static_cast<std::size_t>(j)] = alpha;
                break;
            }
        }
    }
    return w;
}

CliqueCover cover_from_assignment(const ReductionInstance& inst, const cnf::Assignment& phi) {
    const AssignmentWitness witness = make_witness(inst, phi);
    const GadgetLayout& l = inst.layout;
    const int n = l.n;
    const int m = l.m;
    const int ell = l.ell;

    CliqueCover cover;
    cover.cliques.reserve(static_cast<std::size_t>(inst.k));

    // Closed neighbourhoods of the simplicial vertices.
    for (std::size_t t = 0; t < inst.free_cover.size(); ++t) {
        std::vector<VertexId> ids = inst.free_cover[t];
        ids.push_back(inst.simplicial_of_clique[t]);
        cover.cliques.push_back(make_vertex_set(std::move(ids)));
    }

    // Assignment clique twins.
    std::vector<VertexId> assign0;
    std::vector<VertexId> assign1;
    for (int eta = 1; eta <= 2; ++eta) {
        for (int i = 0; i < n; ++i) {
            const int value = witness.phi[static_cast<std::size_t>(i)];
            assign0.push_back(l.w(eta, i, value));
            assign1.push_back(l.w(eta, i, 1 - value));
        }
    }
    for (int j = 0; j < m; ++j) {
        for (int beta = 1; beta <= 2; ++beta) {
            assign0.push_back(l.p(j, witness.alpha[static_cast<std::size_t>(j)], beta));
        }
    }
    cover.cliques.push_back(make_vertex_set(std::move(assign0)));
    cover.cliques.push_back(make_vertex_set(std::move(assign1)));

    // In each copy, W^eta is H_{ell+1} with local id 2i + c. Seed the twin
    // cover with W_0/W_1 and the assignment twins; the ell - 1 completing
    // pairs each take one u vertex.
    const cocktail::CocktailGraph h = cocktail::build_cocktail(ell + 1);
    std::vector<cocktail::TwinPair> seed(2);
    for (int i = 0; i < n; ++i) {
        const int value = witness.phi[static_cast<std::size_t>(i)];
        seed[0].side0.push_back(static_cast<VertexId>(2 * i));
        seed[0].side1.push_back(static_cast<VertexId>(2 * i + 1));
        seed[1].side0.push_back(static_cast<VertexId>(2 * i + value));
        seed[1].side1.push_back(static_cast<VertexId>(2 * i + 1 - value));
    }
    const cocktail::TwinCover twins = cocktail::extend_twin_cover(h, seed);
    for (int eta = 1; eta <= 2; ++eta) {
        for (int gamma = 1; gamma < ell; ++gamma) {
            const cocktail::TwinPair& pair = twins.pairs[static_cast<std::size_t>(gamma + 1)];
            for (const VertexSet* side : {&pair.side0, &pair.side1}) {
                std::vector<VertexId> ids;
                ids.reserve(side->size() + 1);
                for (VertexId local : *side) ids.push_back(l.w_begin[eta - 1] + local);
                ids.push_back(l.u(eta, gamma));
                cover.cliques.push_back(make_vertex_set(std::move(ids)));
            }
        }
    }

    // Guard cliques: the lower remaining literal of every clause joins the
    // first Q edge, the higher one the second.
    std::vector<VertexId> guard1{l.q(1, 1), l.q(1, 2)};
    std::vector<VertexId> guard2{l.q(2, 1), l.q(2, 2)};
    for (int j = 0; j < m; ++j) {
        bool first = true;
        for (int alpha = 1; alpha <= 3; ++alpha) {
            if (alpha == witness.alpha[static_cast<std::size_t>(j)]) continue;
            auto& target = first ? guard1 : guard2;
            target.push_back(l.p(j, alpha, 1));
            target.push_back(l.p(j, alpha, 2));
            first = false;
        }
    }
    cover.cliques.push_back(make_vertex_set(std::move(guard1)));
    cover.cliques.push_back(make_vertex_set(std::move(guard2)));
    return cover;
}

cnf::Assignment assignment_from_cover(const ReductionInstance& inst, const CliqueCover& cover) {
    const CoverReport report = verify_cover(inst.graph, cover, EdgeFilter::all);
    if (!report.valid) throw ExtractionError("not a valid clique cover: " + report.describe());

    const GadgetLayout& l = inst.layout;
    auto holds_edge = [&](const VertexSet& clique, VertexId a, VertexId b) {
        return contains(clique, a) && contains(clique, b);
    };
    auto first_holding = [&](VertexId a, VertexId b) {
        for (std::size_t t = 0; t < cover.size(); ++t) {
            if (holds_edge(cover.cliques[t], a, b)) return t;
        }
        return cover.size();
    };
    const std::size_t guard1 = first_holding(l.q(1, 1), l.q(1, 2));
    const std::size_t guard2 = first_holding(l.q(2, 1), l.q(2, 2));
    if (guard1 == cover.size() || guard2 == cover.size()) {
        throw ExtractionError("guard edges are not covered");
    }
    if (guard1 == guard2) throw ExtractionError("one clique holds both guard edges");

    auto holds_clause_edge = [&](const VertexSet& clique) {
        for (VertexId v : clique) {
            if (v < l.p_begin || v >= l.q_begin) continue;
            if ((v - l.p_begin) % 2 == 0 && contains(clique, v + 1)) return true;
        }
        return false;
    };

    const auto n = static_cast<std::size_t>(l.n);
    bool had_candidate = false;
    for (std::size_t t = 0; t < cover.size(); ++t) {
        if (t == guard1 || t == guard2) continue;
        const VertexSet& clique = cover.cliques[t];
        if (!holds_clause_edge(clique)) continue;
        had_candidate = true;
        for (int eta = 1; eta <= 2; ++eta) {
            cnf::Assignment phi(n, 0);
            bool one_per_pair = true;
            for (std::size_t i = 0; i < n && one_per_pair; ++i) {
                const bool has0 = contains(clique, l.w(eta, static_cast<int>(i), 0));
                const bool has1 = contains(clique, l.w(eta, static_cast<int>(i), 1));
                one_per_pair = has0 != has1;
                phi[i] = has1 ? 1 : 0;
            }
            if (one_per_pair && cnf::evaluate(inst.formula, phi)) return phi;
        }
    }
    if (!had_candidate) {
        throw ExtractionError("no clique outside the guard cliques covers a clause-gadget edge");
    }
    throw ExtractionError(
        "no candidate assignment clique encodes a satisfying assignment in either copy");
}

}  // namespace eccforge::transfer
