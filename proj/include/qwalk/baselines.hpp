#pragma once

#include <cstdint>

#include "qwalk/graph.hpp"
#include "qwalk/ingest.hpp"
#include "qwalk/score_vector.hpp"

namespace qwalk {

// Classical comparison methods. All scorers are pure over the read-only
// Graph and safe to run concurrently across diseases.

// Diffusion kernel: sums exp(-tL) seed columns, the classical counterpart of
// the quantum-walk score. Default t = 0.3.
ScoreVector score_dk(const Graph& g, const SeedSet& seeds, double t = 0.3, double tol = 1e-9);

struct RwrOptions {
    double restart = 0.4;
    double tol = 1e-10;  // L1 change between iterates
    int max_iter = 100000;
};

// Random walk with restart: p <- (1-r) W p + r p0 iterated to stationarity,
// p0 uniform over seeds, W column-stochastic.
ScoreVector score_rwr(const Graph& g, const SeedSet& seeds, const RwrOptions& options = {});

// One DIAMOnD connectivity p-value: upper-tail probability that a candidate
// with `degree` links has at least `links` of them inside a module of
// `module_size` nodes drawn from `universe`. Weighted counts enter directly.
double diamond_pvalue(std::int64_t universe, std::int64_t module_size, std::int64_t degree,
                      std::int64_t links);

// DIAMOnD module expansion: adds the most significantly connected candidate
// n_rank times. Original seeds count with multiplicity seed_weight in the
// universe size, the module size, and each candidate's link/degree counts.
// The i-th added node receives score n_rank - i + 1; untouched nodes 0. If
// the frontier empties early the ranking is shorter; params["dia_added"]
// records how many nodes were actually added.
ScoreVector score_diamond(const Graph& g, const SeedSet& seeds, int n_rank, int seed_weight = 9);

// Neighbourhood scoring: fraction of a node's neighbours that are seeds;
// defined as 0 for seeds and degree-0 nodes.
ScoreVector score_nbr(const Graph& g, const SeedSet& seeds);

} // namespace qwalk
