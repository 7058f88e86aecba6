#pragma once

#include <cstddef>

#include "qwalk/graph.hpp"

namespace qwalk {

// Summary statistics of a loaded network. assortativity is NaN when the
// degree variance over edge endpoints vanishes (degree-regular graphs).
struct GraphStats {
    int n_nodes = 0;
    std::size_t n_edges = 0;
    std::size_t n_self_edges = 0;
    double avg_degree = 0.0;
    double density = 0.0;        // simple (non-self) edges over n*(n-1)/2
    double avg_clustering = 0.0; // local coefficients averaged over all nodes
    double assortativity = 0.0;  // degree Pearson correlation over edge endpoints
};

GraphStats compute_stats(const Graph& g);

} // namespace qwalk
