#pragma once

#include <cstdint>
#include <vector>

#include "qwalk/csr.hpp"
#include "qwalk/graph.hpp"
#include "qwalk/ingest.hpp"

namespace qwalk {

// Walk generator A_S = A + alpha * diag(v_S): the network adjacency with a
// constant added to the diagonal entries of the seed nodes. Real symmetric
// by construction. A seed that already carries a self-edge keeps its
// adjacency 1 underneath the added alpha.
struct Hamiltonian {
    CsrMatrix matrix;
    double alpha = 0.0;
    std::vector<std::uint8_t> seed_mask; // v_S indicator, length n
};

Hamiltonian build_hamiltonian(const Graph& g, const SeedSet& seeds, double alpha);

} // namespace qwalk
