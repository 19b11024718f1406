#ifndef HOMTW_PACE_IO_HPP
#define HOMTW_PACE_IO_HPP

#include "homtw/decomposition.hpp"
#include "homtw/graph.hpp"

#include <iosfwd>
#include <string>

namespace homtw {

// Text formats. Everything on the wire is 1-based; comment lines start
// with 'c' and are skipped.
//
//   PACE .gr     header "p tw <n> <m>", then m lines "<u> <v>"
//   PACE .td     header "s td <bags> <width+1> <n>", then "b <id> <verts...>"
//                lines and bag-tree edges "<u> <v>"
//   DIMACS       header "p edge <n> <m>", then m lines "e <u> <v>";
//                loops are "e v v"

Graph parse_pace_gr(std::istream& in);
void emit_pace_gr(const Graph& g, std::ostream& out);

Graph parse_dimacs(std::istream& in);
void emit_dimacs(const Graph& g, std::ostream& out);

/// Dispatches on the "p tw" / "p edge" header.
Graph parse_graph_auto(std::istream& in);

/// declared_n, when non-null, receives the vertex count from the header.
TreeDecomposition parse_pace_td(std::istream& in, int* declared_n = nullptr);
void emit_pace_td(const TreeDecomposition& td, int n_graph_vertices, std::ostream& out);

// File-path convenience wrappers; throw ParseError on open failure.
Graph load_graph(const std::string& path);
TreeDecomposition load_td(const std::string& path, int* declared_n = nullptr);
void save_graph_dimacs(const Graph& g, const std::string& path);
void save_td(const TreeDecomposition& td, int n_graph_vertices, const std::string& path);

} // namespace homtw

#endif
