#ifndef HOMTW_NAMED_GRAPHS_HPP
#define HOMTW_NAMED_GRAPHS_HPP

#include "homtw/graph.hpp"

#include <string>

namespace homtw {

// Named-graph corpus with fixed, documented vertex numberings.
//
//   clique(k)    vertices 0..k-1, all pairs adjacent
//   cycle(n)     n >= 3, edges i ~ (i+1) mod n
//   path(n)      n >= 1, edges i ~ i+1
//   kneser(n,k)  vertices are the k-subsets of {0..n-1} in lexicographic
//                order, adjacent iff disjoint; requires 0 < k, n >= k
//   petersen     kneser(5,2)
//   grotzsch     Mycielskian of cycle(5): outer cycle 0..4, inner 5+i
//                adjacent to (i+1)%5 and (i+4)%5, hub 10 adjacent to 5..9
//   brinkmann    21 vertices in three rings of 7: outer i ~ i+2, middle 7+i
//                adjacent to outer (i+3)%7 and (i+4)%7 and inner 14+(i+-1)%7,
//                inner 14+i ~ 14+(i+3)%7
//   chvatal      12 vertices, 4-regular, triangle-free, chromatic number 4
//   bowtie       two triangles {0,1,4} and {2,3,4} sharing vertex 4
//   k1star       single vertex with a loop

Graph make_clique(int k);
Graph make_cycle(int n);
Graph make_path(int n);
Graph make_kneser(int n, int k);
Graph make_grotzsch();
Graph make_brinkmann();
Graph make_chvatal();
Graph make_petersen();
Graph make_bowtie();
Graph make_k1star();

/// Resolves a symbolic id like "clique:3", "cycle:5", "kneser:5,2",
/// "grotzsch". Throws ParseError for unknown ids or invalid parameters.
Graph named_graph(const std::string& id);

} // namespace homtw

#endif
