#ifndef HOMTW_GRAPH_SPEC_HPP
#define HOMTW_GRAPH_SPEC_HPP

#include "homtw/graph.hpp"

#include <string>

namespace homtw {

// Graph specifiers accepted anywhere the CLI wants a graph:
//   clique:k cycle:n path:n kneser:n,k grotzsch brinkmann chvatal petersen
//   bowtie k1star        named corpus (see named_graphs.hpp)
//   product:a,b,...      direct product of factor specs; a bare-number
//                        segment binds to the factor before it, so
//                        product:kneser:5,2,clique:3 reads as two factors
//   @file                graph file in PACE .gr or DIMACS format
Graph parse_graph_spec(const std::string& spec,
                       std::int64_t vertex_limit = kDefaultVertexLimit);

} // namespace homtw

#endif
