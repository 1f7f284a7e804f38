#include "eccforge/graph_io.hpp"

#include "eccforge/errors.hpp"

#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace eccforge {
namespace {

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
    throw InputError("line " + std::to_string(line_no) + ": " + what);
}

std::int64_t read_int(std::istringstream& tokens, std::size_t line_no, const char* field) {
    std::string token;
    if (!(tokens >> token)) fail(line_no, std::string("missing ") + field);
    std::size_t used = 0;
    std::int64_t value = 0;
    try {
        value = std::stoll(token, &used);
    } catch (const std::exception&) {
        fail(line_no, std::string("bad ") + field + " '" + token + "'");
    }
    if (used != token.size()) fail(line_no, std::string("bad ") + field + " '" + token + "'");
    return value;
}

VertexId read_id(std::istringstream& tokens, std::size_t line_no, std::size_t vertex_count) {
    const std::int64_t id = read_int(tokens, line_no, "vertex id");
    if (id < 0 || static_cast<std::uint64_t>(id) >= vertex_count) {
        fail(line_no, "vertex id " + std::to_string(id) + " out of range");
    }
    return static_cast<VertexId>(id);
}

int small_int(std::istringstream& tokens, std::size_t line_no, const char* field) {
    const std::int64_t x = read_int(tokens, line_no, field);
    if (x < 0 || x > std::numeric_limits<int>::max()) fail(line_no, std::string("bad ") + field);
    return static_cast<int>(x);
}

VertexName read_name(std::istringstream& tokens, std::size_t line_no) {
    std::string kind;
    if (!(tokens >> kind)) fail(line_no, "missing vertex kind");
    if (kind == "w") {
        WName n{};
        n.eta = small_int(tokens, line_no, "eta");
        n.i = small_int(tokens, line_no, "i");
        n.c = small_int(tokens, line_no, "c");
        return n;
    }
    if (kind == "u") {
        UName n{};
        n.eta = small_int(tokens, line_no, "eta");
        n.gamma = small_int(tokens, line_no, "gamma");
        return n;
    }
    if (kind == "p") {
        PName n{};
        n.j = small_int(tokens, line_no, "j");
        n.alpha = small_int(tokens, line_no, "alpha");
        n.beta = small_int(tokens, line_no, "beta");
        return n;
    }
    if (kind == "q") {
        QName n{};
        n.a = small_int(tokens, line_no, "a");
        n.b = small_int(tokens, line_no, "b");
        return n;
    }
    if (kind == "s") return SName{small_int(tokens, line_no, "t")};
    fail(line_no, "unknown vertex kind '" + kind + "'");
}

void expect_end(std::istringstream& tokens, std::size_t line_no) {
    std::string extra;
    if (tokens >> extra) fail(line_no, "unexpected trailing token '" + extra + "'");
}

}  // namespace

void write_graph(std::ostream& out, const Graph& g, std::int64_t k,
                 const std::vector<std::string>& comments) {
    for (const auto& c : comments) out << "c " << c << '\n';
    out << "p ecc " << g.vertex_count() << ' ' << g.edge_count() << ' ' << k << '\n';
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (g.name(v)) out << "v " << v << ' ' << to_string(*g.name(v)) << '\n';
    }
    for (const Edge& e : g.edges()) {
        out << "e " << e.u << ' ' << e.v << (e.cls == EdgeClass::imp ? " imp" : " free") << '\n';
    }
}

GraphFile read_graph(std::istream& in) {
    GraphFile file;
    GraphBuilder builder;
    bool have_header = false;
    std::int64_t declared_edges = 0;
    std::size_t seen_edges = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream tokens(line);
        std::string tag;
        if (!(tokens >> tag)) continue;
        if (tag == "c") {
            const auto pos = line.find('c');
            std::string rest = line.substr(pos + 1);
            if (!rest.empty() && rest.front() == ' ') rest.erase(0, 1);
            file.comments.push_back(std::move(rest));
            continue;
        }
        if (tag == "p") {
            if (have_header) fail(line_no, "second header line");
            std::string format;
            if (!(tokens >> format) || format != "ecc") fail(line_no, "expected 'p ecc'");
            const std::int64_t n = read_int(tokens, line_no, "vertex count");
            declared_edges = read_int(tokens, line_no, "edge count");
            file.k = read_int(tokens, line_no, "k");
            expect_end(tokens, line_no);
            if (n < 0 || declared_edges < 0) fail(line_no, "negative count in header");
            if (file.k < -1) fail(line_no, "k must be -1 or non-negative");
            builder = GraphBuilder(static_cast<std::size_t>(n));
            have_header = true;
            continue;
        }
        if (!have_header) fail(line_no, "content before 'p ecc' header");
        if (tag == "v") {
            const VertexId id = read_id(tokens, line_no, builder.vertex_count());
            builder.set_name(id, read_name(tokens, line_no));
            expect_end(tokens, line_no);
        } else if (tag == "e") {
            const VertexId u = read_id(tokens, line_no, builder.vertex_count());
            const VertexId v = read_id(tokens, line_no, builder.vertex_count());
            std::string cls;
            if (!(tokens >> cls)) fail(line_no, "missing edge class");
            if (cls != "imp" && cls != "free") fail(line_no, "bad edge class '" + cls + "'");
            expect_end(tokens, line_no);
            if (u == v) fail(line_no, "self-loop");
            if (builder.has_edge(u, v)) fail(line_no, "duplicate edge");
            builder.add_edge(u, v, cls == "imp" ? EdgeClass::imp : EdgeClass::free);
            ++seen_edges;
        } else {
            fail(line_no, "unknown line tag '" + tag + "'");
        }
    }
    if (!have_header) throw InputError("missing 'p ecc' header");
    if (static_cast<std::int64_t>(seen_edges) != declared_edges) {
        throw InputError("header declares " + std::to_string(declared_edges) + " edges, found " +
                         std::to_string(seen_edges));
    }
    file.graph = std::move(builder).build();
    return file;
}

void write_cover(std::ostream& out, const CliqueCover& cover) {
    for (const auto& clique : cover.cliques) {
        for (std::size_t i = 0; i < clique.size(); ++i) {
            if (i) out << ' ';
            out << clique[i];
        }
        out << '\n';
    }
}

CliqueCover read_cover(std::istream& in) {
    CliqueCover cover;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream tokens(line);
        std::string first;
        if (!(tokens >> first)) continue;
        if (first == "c") continue;
        tokens.clear();
        tokens.str(line);
        std::vector<VertexId> ids;
        while (tokens >> std::ws, !tokens.eof()) {
            const std::int64_t id = read_int(tokens, line_no, "vertex id");
            if (id < 0 || id > std::numeric_limits<VertexId>::max()) {
                fail(line_no, "vertex id " + std::to_string(id) + " out of range");
            }
            ids.push_back(static_cast<VertexId>(id));
        }
        cover.cliques.push_back(make_vertex_set(std::move(ids)));
    }
    return cover;
}

}  // namespace eccforge
