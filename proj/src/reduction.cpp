#include "eccforge/reduction.hpp"

#include "eccforge/errors.hpp"
#include "eccforge/graph_io.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace eccforge::reduction {
namespace {

constexpr const char* kOrigMapTag = "eccforge-orig-map";

/// Bit gamma (1-based) of x.
int bit(int x, int gamma) { return (x >> (gamma - 1)) & 1; }

}  // namespace

int ceil_log2(std::int64_t m) {
    if (m < 1) throw PreconditionError("ceil_log2: m must be at least 1");
    return static_cast<int>(std::bit_width(static_cast<std::uint64_t>(m - 1)));
}

std::int64_t free_cover_size(int ell, std::int64_t m) {
    return 46 + 36 * std::int64_t{ceil_log2(m)} + 24 * std::int64_t{ell};
}

Budget budget(int ell, std::int64_t m) {
    if (ell < 1 || m < 1) throw PreconditionError("budget: requires ell >= 1 and m >= 1");
    const std::int64_t k0 = 4 * std::int64_t{ell};
    std::int64_t k = 28 * std::int64_t{ell} + 46 + 36 * std::int64_t{ceil_log2(m)};
#ifdef ECCFORGE_MUTATION_BUDGET
    k += 1;
#endif
    return {k0, k};
}

GadgetLayout GadgetLayout::make(int n, int m, int ell) {
    GadgetLayout l;
    l.n = n;
    l.m = m;
    l.ell = ell;
    const auto w_size = static_cast<VertexId>(2 * n);
    const auto u_size = static_cast<VertexId>(ell - 1);
    l.w_begin[0] = 0;
    l.w_begin[1] = w_size;
    l.u_begin[0] = 2 * w_size;
    l.u_begin[1] = 2 * w_size + u_size;
    l.p_begin = 2 * w_size + 2 * u_size;
    l.q_begin = l.p_begin + static_cast<VertexId>(6 * m);
    l.s_begin = l.q_begin + 4;
    l.vertex_count = l.s_begin + static_cast<VertexId>(free_cover_size(ell, m));
    return l;
}

std::int64_t predicted_vertex_count(int n, int m, int ell) {
    return 2 * (2 * std::int64_t{n} + ell - 1) + 6 * std::int64_t{m} + 4 + free_cover_size(ell, m);
}

std::int64_t predicted_imp_edge_count(int n, int m, int ell) {
    const std::int64_t nn = n;
    return 2 * (nn * nn - nn) + 4 * nn * (ell - 1) + 3 * std::int64_t{m} + 2;
}

void check_regular(const cnf::RegularFormula& f) {
    const int n = f.n();
    if (n < 2 || !std::has_single_bit(static_cast<unsigned>(n)) || (1 << f.ell) != n) {
        throw PreconditionError("reduce: variable count must be 2^ell");
    }
    if (f.dup_offset != n / 2) throw PreconditionError("reduce: duplicate offset must be n/2");
    if (f.m() < 1) throw PreconditionError("reduce: formula has no clauses");
    for (int j = 0; j < f.m(); ++j) {
        const cnf::Clause& clause = f.base.clauses[static_cast<std::size_t>(j)];
        if (clause.size() != 3) throw PreconditionError("reduce: clause without exactly 3 literals");
        for (const cnf::Literal& lit : clause) {
            if (lit.var <= 0 || lit.var >= n) {
                throw PreconditionError("reduce: clause " + std::to_string(j) +
                                        " uses variable 0 or an out-of-range variable");
            }
        }
        if (clause[0].var == clause[1].var || clause[0].var == clause[2].var ||
            clause[1].var == clause[2].var) {
            throw PreconditionError("reduce: clause " + std::to_string(j) + " repeats a variable");
        }
    }
}

std::vector<VertexSet> build_free_cover(const cnf::RegularFormula& f, const GadgetLayout& l) {
    const int n = l.n;
    const int m = l.m;
    const int ell = l.ell;
    const int log_m = ceil_log2(m);
    std::vector<VertexSet> cover;
    cover.reserve(static_cast<std::size_t>(free_cover_size(ell, m)));

    auto emit = [&cover](std::vector<VertexId> ids) { cover.push_back(make_vertex_set(std::move(ids))); };

    // Inside and between the two copies of W.
    for (int c = 0; c <= 1; ++c) {
        for (int c2 = 0; c2 <= 1; ++c2) {
            std::vector<VertexId> ids;
            for (int i = 0; i < n; ++i) {
                ids.push_back(l.w(1, i, c));
                ids.push_back(l.w(2, i, c2));
            }
            emit(std::move(ids));
        }
    }

    // Guard to clause gadgets.
    for (int a = 1; a <= 2; ++a) {
        for (int b = 1; b <= 2; ++b) {
            for (int alpha = 1; alpha <= 3; ++alpha) {
                for (int beta = 1; beta <= 2; ++beta) {
                    std::vector<VertexId> ids{l.q(a, b)};
                    for (int j = 0; j < m; ++j) ids.push_back(l.p(j, alpha, beta));
                    emit(std::move(ids));
                }
            }
        }
    }

    // Between different clause gadgets, split on a differing bit of j.
    for (int gamma = 1; gamma <= log_m; ++gamma) {
        for (int a1 = 1; a1 <= 3; ++a1) {
            for (int b1 = 1; b1 <= 2; ++b1) {
                for (int a2 = 1; a2 <= 3; ++a2) {
                    for (int b2 = 1; b2 <= 2; ++b2) {
                        std::vector<VertexId> ids;
                        for (int j = 0; j < m; ++j) {
                            ids.push_back(bit(j, gamma) == 0 ? l.p(j, a1, b1) : l.p(j, a2, b2));
                        }
                        emit(std::move(ids));
                    }
                }
            }
        }
    }

#ifndef ECCFORGE_MUTATION_DROP_FAMILY
    // Edges at w_{0,0}.
    for (int alpha = 1; alpha <= 3; ++alpha) {
        for (int beta = 1; beta <= 2; ++beta) {
            std::vector<VertexId> ids{l.w(1, 0, 0), l.w(2, 0, 0)};
            for (int j = 0; j < m; ++j) ids.push_back(l.p(j, alpha, beta));
            emit(std::move(ids));
        }
    }
#endif

    // Edges p_{j,alpha,beta} w_{i(j,alpha), c(j,alpha)}.
    for (int alpha = 1; alpha <= 3; ++alpha) {
        for (int beta = 1; beta <= 2; ++beta) {
            for (int c = 0; c <= 1; ++c) {
                std::vector<VertexId> ids;
                for (int eta = 1; eta <= 2; ++eta) {
                    for (int i = 1; i < n; ++i) ids.push_back(l.w(eta, i, c));
                }
                for (int j = 0; j < m; ++j) {
                    if (f.sign_of(j, alpha) == c) ids.push_back(l.p(j, alpha, beta));
                }
                emit(std::move(ids));
            }
        }
    }

    // Remaining W-P edges, split on a bit where i and i(j,alpha) differ.
    for (int gamma = 1; gamma <= ell; ++gamma) {
        for (int alpha = 1; alpha <= 3; ++alpha) {
            for (int beta = 1; beta <= 2; ++beta) {
                for (int c = 0; c <= 1; ++c) {
                    for (int c2 = 0; c2 <= 1; ++c2) {
                        std::vector<VertexId> ids;
                        for (int eta = 1; eta <= 2; ++eta) {
                            for (int i = 1; i < n; ++i) {
                                if (bit(i, gamma) == c2) ids.push_back(l.w(eta, i, c));
                            }
                        }
                        for (int j = 0; j < m; ++j) {
                            if (bit(f.var_of(j, alpha), gamma) == 1 - c2) {
                                ids.push_back(l.p(j, alpha, beta));
                            }
                        }
                        emit(std::move(ids));
                    }
                }
            }
        }
    }
    return cover;
}

ReductionInstance reduce(const cnf::RegularFormula& f) {
    check_regular(f);
    const int n = f.n();
    const int m = f.m();
    const int ell = f.ell;

    ReductionInstance inst;
    inst.formula = f;
    inst.layout = GadgetLayout::make(n, m, ell);
    const GadgetLayout& l = inst.layout;
    inst.free_cover = build_free_cover(f, l);

    GraphBuilder g(l.vertex_count);
    for (int eta = 1; eta <= 2; ++eta) {
        for (int i = 0; i < n; ++i) {
            for (int c = 0; c <= 1; ++c) g.set_name(l.w(eta, i, c), WName{eta, i, c});
        }
        for (int gamma = 1; gamma < ell; ++gamma) g.set_name(l.u(eta, gamma), UName{eta, gamma});
    }
    for (int j = 0; j < m; ++j) {
        for (int alpha = 1; alpha <= 3; ++alpha) {
            for (int beta = 1; beta <= 2; ++beta) g.set_name(l.p(j, alpha, beta), PName{j, alpha, beta});
        }
    }
    for (int a = 1; a <= 2; ++a) {
        for (int b = 1; b <= 2; ++b) g.set_name(l.q(a, b), QName{a, b});
    }
    for (std::size_t t = 0; t < inst.free_cover.size(); ++t) {
        g.set_name(l.s(static_cast<int>(t)), SName{static_cast<int>(t)});
    }

    // Assignment gadgets: H_{ell+1} on W^eta, and the u vertices.
    for (int eta = 1; eta <= 2; ++eta) {
        for (int i = 0; i < n; ++i) {
            for (int c = 0; c <= 1; ++c) {
                for (int i2 = i + 1; i2 < n; ++i2) {
                    for (int c2 = 0; c2 <= 1; ++c2) {
                        g.add_edge(l.w(eta, i, c), l.w(eta, i2, c2),
                                   c == c2 ? EdgeClass::free : EdgeClass::imp);
                    }
                }
            }
        }
        for (int gamma = 1; gamma < ell; ++gamma) {
            for (int i = 0; i < n; ++i) {
                for (int c = 0; c <= 1; ++c) g.add_edge(l.u(eta, gamma), l.w(eta, i, c), EdgeClass::imp);
            }
        }
    }
    // Complete bipartite W^1 - W^2.
    for (VertexId a = l.w_begin[0]; a < l.w_begin[1]; ++a) {
        for (VertexId b = l.w_begin[1]; b < l.w_begin[1] + 2 * n; ++b) g.add_edge(a, b, EdgeClass::free);
    }
    // Clause gadgets 3K_2 and guard 2K_2.
    for (int j = 0; j < m; ++j) {
        for (int alpha = 1; alpha <= 3; ++alpha) g.add_edge(l.p(j, alpha, 1), l.p(j, alpha, 2), EdgeClass::imp);
    }
    g.add_edge(l.q(1, 1), l.q(1, 2), EdgeClass::imp);
    g.add_edge(l.q(2, 1), l.q(2, 2), EdgeClass::imp);
    // Q to every P vertex, and P vertices of different clauses.
    for (VertexId q = l.q_begin; q < l.q_begin + 4; ++q) {
        for (VertexId p = l.p_begin; p < l.q_begin; ++p) g.add_edge(q, p, EdgeClass::free);
    }
    for (VertexId a = l.p_begin; a < l.q_begin; ++a) {
        const VertexId first_of_next = l.p_begin + (a - l.p_begin) / 6 * 6 + 6;
        for (VertexId b = first_of_next; b < l.q_begin; ++b) g.add_edge(a, b, EdgeClass::free);
    }
    // P to W except w_{0,1} and w_{i(j,alpha), 1-c(j,alpha)}.
    for (int j = 0; j < m; ++j) {
        for (int alpha = 1; alpha <= 3; ++alpha) {
            const int var = f.var_of(j, alpha);
            const int wrong = 1 - f.sign_of(j, alpha);
            for (int beta = 1; beta <= 2; ++beta) {
                for (int eta = 1; eta <= 2; ++eta) {
                    for (int i = 0; i < n; ++i) {
                        for (int c = 0; c <= 1; ++c) {
                            if ((i == 0 && c == 1) || (i == var && c == wrong)) continue;
                            g.add_edge(l.p(j, alpha, beta), l.w(eta, i, c), EdgeClass::free);
                        }
                    }
                }
            }
        }
    }
    // Simplicial vertices.
    inst.simplicial_of_clique.reserve(inst.free_cover.size());
    for (std::size_t t = 0; t < inst.free_cover.size(); ++t) {
        const VertexId s = l.s(static_cast<int>(t));
        for (VertexId v : inst.free_cover[t]) g.add_edge(s, v, EdgeClass::free);
        inst.simplicial_of_clique.push_back(s);
    }

    inst.graph = std::move(g).build();
    const Budget b = budget(ell, m);
    inst.k0 = b.k0;
    inst.k = b.k;
    return inst;
}

void write_instance(std::ostream& out, const ReductionInstance& inst) {
    std::ostringstream map_line;
    map_line << kOrigMapTag << ' ' << inst.formula.base.num_input_vars;
    for (int idx : inst.formula.orig_map) map_line << ' ' << idx;
    std::ostringstream shape;
    shape << "reduction instance: n=" << inst.layout.n << " m=" << inst.layout.m
          << " ell=" << inst.layout.ell << " k0=" << inst.k0;
    write_graph(out, inst.graph, inst.k, {shape.str(), map_line.str()});
}

ReductionInstance read_instance(std::istream& in) {
    GraphFile file = read_graph(in);
    const Graph& g = file.graph;

    int w_count = 0;
    int u_count = 0;
    int p_count = 0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (!g.name(v)) throw InputError("instance vertex " + std::to_string(v) + " has no name");
        if (std::holds_alternative<WName>(*g.name(v))) ++w_count;
        if (std::holds_alternative<UName>(*g.name(v))) ++u_count;
        if (std::holds_alternative<PName>(*g.name(v))) ++p_count;
    }
    const int n = w_count / 4;
    if (n < 2 || w_count != 4 * n || !std::has_single_bit(static_cast<unsigned>(n))) {
        throw InputError("instance: W blocks do not hold 2 x 2n vertices with n a power of two");
    }
    const int ell = std::countr_zero(static_cast<unsigned>(n));
    if (u_count != 2 * (ell - 1) || p_count % 6 != 0 || p_count == 0) {
        throw InputError("instance: gadget vertex counts inconsistent with n");
    }
    const int m = p_count / 6;
    const GadgetLayout l = GadgetLayout::make(n, m, ell);
    if (g.vertex_count() != l.vertex_count) {
        throw InputError("instance: vertex count does not match the gadget layout");
    }

    // Each literal is encoded by the one W^1 vertex w_{i,c}, i >= 1, that
    // p_{j,alpha,1} misses: the literal is x_i if c == 0, else not x_i.
    cnf::RegularFormula f;
    f.ell = ell;
    f.dup_offset = n / 2;
    f.base.num_vars = n;
    for (int j = 0; j < m; ++j) {
        cnf::Clause clause;
        for (int alpha = 1; alpha <= 3; ++alpha) {
            const auto p = g.find(PName{j, alpha, 1});
            if (!p || *p != l.p(j, alpha, 1)) throw InputError("instance: P vertices out of layout order");
            int found = 0;
            cnf::Literal lit{};
            for (int i = 1; i < n; ++i) {
                for (int c = 0; c <= 1; ++c) {
                    if (!g.adjacent(*p, l.w(1, i, c))) {
                        ++found;
                        lit = {i, c == 0};
                    }
                }
            }
            if (found != 1) throw InputError("instance: cannot recover literal of clause " + std::to_string(j));
            clause.push_back(lit);
        }
        f.base.clauses.push_back(std::move(clause));
    }
    for (const std::string& comment : file.comments) {
        std::istringstream tokens(comment);
        std::string tag;
        tokens >> tag;
        if (tag != kOrigMapTag) continue;
        if (!(tokens >> f.base.num_input_vars)) throw InputError("instance: malformed variable map");
        int idx = 0;
        while (tokens >> idx) {
            if (idx <= 0 || idx >= n) throw InputError("instance: variable map index out of range");
            f.orig_map.push_back(idx);
        }
        if (f.base.num_input_vars < 0 ||
            f.base.num_input_vars > static_cast<int>(f.orig_map.size())) {
            throw InputError("instance: malformed variable map");
        }
    }
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (const auto& clause : f.base.clauses) {
        for (const auto& lit : clause) used[static_cast<std::size_t>(lit.var)] = true;
    }
    for (int v = 0; v < n; ++v) {
        if (!used[static_cast<std::size_t>(v)]) f.dummy_indices.push_back(v);
    }

    try {
        check_regular(f);
    } catch (const PreconditionError& e) {
        throw InputError(std::string("instance: ") + e.what());
    }
    ReductionInstance inst = reduce(f);
    if (!(inst.graph == g)) {
        throw InputError("instance: graph is not the reduction of its own clause gadgets");
    }
    if (file.k != inst.k) {
        throw InputError("instance: header k " + std::to_string(file.k) + " differs from budget " +
                         std::to_string(inst.k));
    }
    return inst;
}

}  // namespace eccforge::reduction
