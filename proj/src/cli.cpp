#include "eccforge/cli.hpp"

#include "eccforge/acceptance.hpp"
#include "eccforge/cnf.hpp"
#include "eccforge/cocktail.hpp"
#include "eccforge/errors.hpp"
#include "eccforge/graph_io.hpp"
#include "eccforge/reduction.hpp"
#include "eccforge/solver.hpp"
#include "eccforge/transfer.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace eccforge::cli {
namespace {

// Domain-negative outcome, reported on the error stream with exit code 1.
struct Negative {
    std::string message;
};

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "' for reading");
    return in;
}

// Writes to `path`, or to `out` when no path was given.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw InputError("cannot open '" + path + "' for writing");
    file << text;
    if (!file.flush()) throw InputError("write to '" + path + "' failed");
}

// A formula the reduction can take. The input variables are kept (unused)
// so the variable map still covers them.
cnf::Formula reducible(const cnf::Formula& normalized, std::ostream& err) {
    if (!normalized.trivially_unsat && !normalized.clauses.empty()) return normalized;
    cnf::Formula f;
    f.num_input_vars = normalized.num_input_vars;
    f.num_vars = normalized.num_input_vars + 3;
    const int a = normalized.num_input_vars;
    if (normalized.trivially_unsat) {
        err << "note: formula contains an empty clause; reducing a fixed unsatisfiable 3-CNF instead\n";
        for (int signs = 0; signs < 8; ++signs) {
            f.clauses.push_back({{a, (signs & 1) != 0}, {a + 1, (signs & 2) != 0}, {a + 2, (signs & 4) != 0}});
        }
    } else {
        err << "note: formula has no clauses left after normalization; reducing a fixed satisfiable 3-CNF instead\n";
        f.clauses.push_back({{a, true}, {a + 1, true}, {a + 2, true}});
    }
    return f;
}

reduction::ReductionInstance load_instance(const std::string& path) {
    std::ifstream in = open_input(path);
    return reduction::read_instance(in);
}

CliqueCover load_cover(const std::string& path) {
    std::ifstream in = open_input(path);
    return read_cover(in);
}

std::string cover_text(const CliqueCover& cover) {
    std::ostringstream text;
    write_cover(text, cover);
    return text.str();
}

struct ReduceArgs {
    std::string input;
    std::string output;
};

int do_reduce(const ReduceArgs& a, std::ostream& out, std::ostream& err) {
    std::ifstream in = open_input(a.input);
    const cnf::Formula input = cnf::parse_dimacs(in);
    const cnf::Formula normalized = reducible(cnf::normalize(input), err);
    const reduction::ReductionInstance inst = reduction::reduce(cnf::regularize(normalized));
    std::ostringstream text;
    reduction::write_instance(text, inst);
    emit(a.output, text.str(), out);
    if (!a.output.empty()) {
        out << "vertices " << inst.graph.vertex_count() << " edges " << inst.graph.edge_count() << " k "
            << inst.k << '\n';
    }
    return kExitOk;
}

struct SolveArgs {
    std::string input;
    std::string output;
    std::int64_t k = -1;
    bool exact_min = false;
    bool kernel = false;
    bool strict = false;
    std::size_t max_vertices = solver::kDefaultSolverMaxVertices;
    unsigned threads = 0;
};

int do_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
    std::ifstream in = open_input(a.input);
    const GraphFile file = read_graph(in);
    const Graph& g = file.graph;
    solver::SolveOptions options;
    options.max_vertices = a.max_vertices;
    options.strict_deterministic = a.strict;
    options.threads = a.threads;

    const std::int64_t k = a.k >= 0 ? a.k : file.k;
    std::optional<CliqueCover> cover;
    if (a.exact_min || k < 0) {
        cover = solver::solve_minimum(g, options);
    } else if (a.kernel) {
        const solver::KernelResult kernel = solver::kernelize(g, k);
        err << "kernel: " << kernel.trace.size() << " rule applications, " << kernel.reduced.vertex_count()
            << " vertices left, k' = " << kernel.k_reduced << '\n';
        if (!kernel.proven_no()) {
            solver::SolveOptions reduced = options;
            reduced.required = EdgeFilter::imp;
            if (auto part = solver::solve_exact(kernel.reduced, kernel.k_reduced, reduced)) {
                cover = solver::lift(kernel, *part);
            }
        }
    } else {
        cover = solver::solve_exact(g, k, options);
    }
    if (!cover) throw Negative{"no clique cover with at most " + std::to_string(k) + " cliques"};
    emit(a.output, cover_text(*cover), out);
    if (!a.output.empty()) out << "cover size " << cover->size() << '\n';
    return kExitOk;
}

struct VerifyArgs {
    std::string graph;
    std::string cover;
    std::int64_t k = -1;
};

int do_verify(const VerifyArgs& a, std::ostream& out) {
    std::ifstream in = open_input(a.graph);
    const GraphFile file = read_graph(in);
    const CliqueCover cover = load_cover(a.cover);
    const CoverReport report = verify_cover(file.graph, cover);
    if (!report.valid) throw Negative{"invalid cover: " + report.describe()};
    const std::int64_t k = a.k >= 0 ? a.k : file.k;
    if (k >= 0 && static_cast<std::int64_t>(cover.size()) > k) {
        throw Negative{"cover has " + std::to_string(cover.size()) + " cliques, more than k = " +
                       std::to_string(k)};
    }
    out << "valid cover with " << cover.size() << " cliques\n";
    return kExitOk;
}

struct TransferArgs {
    std::string instance;
    std::string certificate;
    std::string output;
    bool regular = false;
};

int do_complete(const TransferArgs& a, std::ostream& out) {
    const reduction::ReductionInstance inst = load_instance(a.instance);
    const cnf::RegularFormula& f = inst.formula;
    std::ifstream in = open_input(a.certificate);
    const int width = a.regular ? f.n() : f.base.num_input_vars;
    const std::optional<cnf::Assignment> given = cnf::parse_assignment(in, width);
    if (!given) throw Negative{"assignment file says UNSAT; nothing to complete"};

    cnf::Assignment phi = *given;
    if (!a.regular) {
        // Variables added by normalization widen a clause with every sign
        // pattern, so any value works for them once the input is satisfied.
        cnf::Assignment normalized(f.orig_map.size(), 0);
        std::copy(given->begin(), given->end(), normalized.begin());
        phi = cnf::lift_assignment(f, normalized);
    }
    CliqueCover cover;
    try {
        cover = transfer::cover_from_assignment(inst, phi);
    } catch (const PreconditionError& e) {
        throw Negative{e.what()};
    }
    emit(a.output, cover_text(cover), out);
    if (!a.output.empty()) out << "cover size " << cover.size() << " (k = " << inst.k << ")\n";
    return kExitOk;
}

int do_extract(const TransferArgs& a, std::ostream& out) {
    const reduction::ReductionInstance inst = load_instance(a.instance);
    const CliqueCover cover = load_cover(a.certificate);
    cnf::Assignment regular;
    try {
        regular = transfer::assignment_from_cover(inst, cover);
    } catch (const ExtractionError& e) {
        throw Negative{e.what()};
    }
    cnf::Assignment result = regular;
    if (!a.regular) {
        const cnf::RegularFormula& f = inst.formula;
        result.assign(static_cast<std::size_t>(f.base.num_input_vars), 0);
        for (std::size_t v = 0; v < result.size(); ++v) {
            result[v] = regular[static_cast<std::size_t>(f.orig_map[v])];
        }
    }
    std::ostringstream text;
    cnf::write_assignment(text, result);
    emit(a.output, text.str(), out);
    return kExitOk;
}

struct CocktailArgs {
    int ell = 0;
    bool twin_cover = false;
    bool opt = false;
    std::string output;
};

int do_cocktail(const CocktailArgs& a, std::ostream& out) {
    if (a.ell < 1) throw InputError("--ell must be at least 1");
    if (a.opt) {
        if (a.ell > 62) throw GuardExceeded("--opt supports ell up to 62");
        // H_1 is a single non-edge.
        const int opt = a.ell == 1 ? 0 : cocktail::gregory_pullman_opt(std::int64_t{1} << (a.ell - 1));
        out << opt << '\n';
        return kExitOk;
    }
    const cocktail::CocktailGraph h = cocktail::build_cocktail(a.ell);
    std::ostringstream text;
    if (a.twin_cover) {
        cocktail::TwinPair first;
        for (VertexId v = 0; v < h.vertex_count(); ++v) (v % 2 ? first.side1 : first.side0).push_back(v);
        const std::vector<cocktail::TwinPair> seed{first};
        write_cover(text, cocktail::extend_twin_cover(h, seed).flatten());
    } else {
        write_graph(text, h.graph());
    }
    emit(a.output, text.str(), out);
    return kExitOk;
}

int do_selftest(std::uint64_t seed, bool quick, std::ostream& out) {
    const auto results = acceptance::run_all({seed, quick}, out);
    const bool ok = acceptance::all_passed(results);
    std::size_t passed = 0;
    for (const auto& r : results) passed += r.passed ? 1 : 0;
    out << passed << " of " << results.size() << " criteria passed\n";
    return ok ? kExitOk : kExitNegative;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Edge clique cover instances from 3-CNF formulas, and tools around them", "eccforge"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Help for every subcommand");

    ReduceArgs reduce_args;
    auto* reduce = app.add_subcommand("reduce", "Build the edge clique cover instance of a 3-CNF formula");
    reduce->add_option("input", reduce_args.input, "DIMACS CNF file")->required();
    reduce->add_option("-o,--output", reduce_args.output, "Instance file (default: stdout)");

    SolveArgs solve_args;
    auto* solve = app.add_subcommand("solve", "Exact edge clique cover of a small graph");
    solve->add_option("graph", solve_args.input, "Graph file")->required();
    solve->add_option("-k,--k", solve_args.k, "Clique budget (default: header value, else minimise)");
    solve->add_flag("--exact-min", solve_args.exact_min, "Find a minimum cover");
    solve->add_flag("--kernelize", solve_args.kernel, "Apply the kernel rules before searching");
    solve->add_flag("--strict-deterministic", solve_args.strict, "Single thread, reproducible covers");
    solve->add_option("--max-vertices", solve_args.max_vertices, "Vertex guard")->check(CLI::Range(1, 64));
    solve->add_option("--threads", solve_args.threads, "Worker threads (0: hardware)");
    solve->add_option("-o,--output", solve_args.output, "Cover file (default: stdout)");

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify", "Check a clique cover against a graph");
    verify->add_option("graph", verify_args.graph, "Graph file")->required();
    verify->add_option("cover", verify_args.cover, "Cover file")->required();
    verify->add_option("-k,--k", verify_args.k, "Size bound (default: header value)");

    TransferArgs complete_args;
    auto* complete = app.add_subcommand("complete", "Turn a satisfying assignment into a cover of size k");
    complete->add_option("instance", complete_args.instance, "Instance file from reduce")->required();
    complete->add_option("assignment", complete_args.certificate, "Assignment file")->required();
    complete->add_flag("--regular", complete_args.regular, "Assignment is over the padded variable set");
    complete->add_option("-o,--output", complete_args.output, "Cover file (default: stdout)");

    TransferArgs extract_args;
    auto* extract = app.add_subcommand("extract", "Read a satisfying assignment off a cover");
    extract->add_option("instance", extract_args.instance, "Instance file from reduce")->required();
    extract->add_option("cover", extract_args.certificate, "Cover file")->required();
    extract->add_flag("--regular", extract_args.regular, "Print the assignment of the padded variable set");
    extract->add_option("-o,--output", extract_args.output, "Assignment file (default: stdout)");

    CocktailArgs cocktail_args;
    auto* cocktail_cmd = app.add_subcommand("cocktail", "Cocktail party graph utilities");
    cocktail_cmd->add_option("--ell", cocktail_args.ell, "The graph has 2^ell vertices")->required();
    auto* twin_flag = cocktail_cmd->add_flag("--twin-cover", cocktail_args.twin_cover, "Write a twin clique cover");
    cocktail_cmd->add_flag("--opt", cocktail_args.opt, "Print the optimum cover size")->excludes(twin_flag);
    cocktail_cmd->add_option("-o,--output", cocktail_args.output, "Output file (default: stdout)");

    std::uint64_t seed = acceptance::kDefaultSeed;
    bool quick = false;
    auto* selftest = app.add_subcommand("selftest", "Run the acceptance checks");
    selftest->add_option("--seed", seed, "Seed for the random corpora");
    selftest->add_flag("--quick", quick, "Smaller corpora");

    // CLI11 takes the argument vector in reverse.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*reduce) return do_reduce(reduce_args, out, err);
        if (*solve) return do_solve(solve_args, out, err);
        if (*verify) return do_verify(verify_args, out);
        if (*complete) return do_complete(complete_args, out);
        if (*extract) return do_extract(extract_args, out);
        if (*cocktail_cmd) return do_cocktail(cocktail_args, out);
        if (*selftest) return do_selftest(seed, quick, out);
    } catch (const Negative& e) {
        err << e.message << '\n';
        return kExitNegative;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace eccforge::cli
