#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qwalk/graph.hpp"

namespace qwalk::testsupport {

// Node labels "g<i>", zero-padded so lexicographic and numeric order agree.
std::string node_label(int i, int width = 5);

// Erdos-Renyi G(n, p). Nodes that draw no incident edge do not appear in the
// built Graph, so callers should size everything off g.n().
std::vector<std::pair<std::string, std::string>> erdos_renyi_edges(int n, double p,
                                                                   std::uint64_t seed);

// Preferential attachment (Barabasi-Albert), m attachments per new node.
std::vector<std::pair<std::string, std::string>> preferential_attachment_edges(
    int n, int m, std::uint64_t seed);

Graph erdos_renyi_graph(int n, double p, std::uint64_t seed);
Graph preferential_attachment_graph(int n, int m, std::uint64_t seed);

// 20-node toy with a planted 6-node module (dense but imperfect clique,
// anchored into a sparse background): the standard pipeline fixture.
struct PlantedToy {
    Graph graph;
    std::vector<int> module_nodes;
};
PlantedToy planted_module_toy(std::uint64_t seed);

} // namespace qwalk::testsupport
