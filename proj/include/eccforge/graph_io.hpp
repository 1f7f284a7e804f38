#pragma once

#include "eccforge/graph.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace eccforge {

/// Contents of a `p ecc` file.
struct GraphFile {
    Graph graph;
    std::int64_t k = -1;  // -1 when the file carries no budget
    std::vector<std::string> comments;  // text after "c ", in file order
};

// Format:
//   c <comment>
//   p ecc <num_vertices> <num_edges> <k or -1>
//   v <id> w <eta> <i> <c> | u <eta> <gamma> | p <j> <alpha> <beta> | q <a> <b> | s <t>
//   e <id1> <id2> <imp|free>
void write_graph(std::ostream& out, const Graph& g, std::int64_t k = -1,
                 const std::vector<std::string>& comments = {});

/// Throws InputError with a line number on malformed input, including
/// duplicate edges and edge-count mismatches.
[[nodiscard]] GraphFile read_graph(std::istream& in);

/// One clique per line, ids space separated; `c` lines are comments.
void write_cover(std::ostream& out, const CliqueCover& cover);
[[nodiscard]] CliqueCover read_cover(std::istream& in);

}  // namespace eccforge
