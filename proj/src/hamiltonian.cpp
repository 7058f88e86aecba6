#include "qwalk/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qwalk/errors.hpp"

namespace qwalk {

Hamiltonian build_hamiltonian(const Graph& g, const SeedSet& seeds, double alpha) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("build_hamiltonian: alpha must be finite and >= 0");
    }
    Hamiltonian h;
    h.alpha = alpha;
    h.seed_mask.assign(static_cast<std::size_t>(g.n()), 0);
    for (int s : seeds.seed_indices) {
        if (s < 0 || s >= g.n()) {
            throw std::out_of_range("build_hamiltonian: seed index " + std::to_string(s) +
                                    " outside [0, " + std::to_string(g.n()) + ")");
        }
        h.seed_mask[static_cast<std::size_t>(s)] = 1;
    }

    if (alpha == 0.0) {
        h.matrix = adjacency_matrix(g);
        return h;
    }

    CsrMatrix& m = h.matrix;
    m.n = g.n();
    m.offsets.assign(static_cast<std::size_t>(g.n()) + 1, 0);
    std::int64_t total = 0;
    for (int v = 0; v < g.n(); ++v) {
        const bool needs_new_diag = h.seed_mask[static_cast<std::size_t>(v)] && !g.has_self_edge(v);
        total += static_cast<std::int64_t>(g.neighbors(v).size()) + (needs_new_diag ? 1 : 0);
        m.offsets[static_cast<std::size_t>(v) + 1] = total;
    }
    m.cols.resize(static_cast<std::size_t>(total));
    m.vals.resize(static_cast<std::size_t>(total));
    for (int v = 0; v < g.n(); ++v) {
        std::size_t at = static_cast<std::size_t>(m.offsets[static_cast<std::size_t>(v)]);
        const bool is_seed = h.seed_mask[static_cast<std::size_t>(v)] != 0;
        bool diag_written = false;
        for (int u : g.neighbors(v)) {
            if (is_seed && !diag_written && u > v && !g.has_self_edge(v)) {
                m.cols[at] = v;
                m.vals[at] = alpha;
                ++at;
                diag_written = true;
            }
            m.cols[at] = u;
            m.vals[at] = (u == v && is_seed) ? 1.0 + alpha : 1.0;
            ++at;
        }
        if (is_seed && !diag_written && !g.has_self_edge(v)) {
            m.cols[at] = v;
            m.vals[at] = alpha;
        }
    }
    return h;
}

} // namespace qwalk
