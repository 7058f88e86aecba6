#pragma once

#include <vector>

#include "qwalk/expm.hpp"
#include "qwalk/graph.hpp"
#include "qwalk/hamiltonian.hpp"
#include "qwalk/ingest.hpp"
#include "qwalk/score_vector.hpp"

namespace qwalk {

// Quantum-walk hyperparameters. Defaults are the values found by the
// coronary-artery-disease grid search (t = 0.11, alpha = 5).
struct WalkParams {
    double t = 0.11;
    double alpha = 5.0;
    double tolerance = 1e-9; // relative accuracy of the exponential action
};

void validate(const WalkParams& params);

// Row u of the transition matrix: P_u[v] = |<v| exp(-i t A_S) |u>|^2.
// Entries sum to 1 up to the exponential-action tolerance (unitarity).
std::vector<double> transition_probabilities_from(const Hamiltonian& h, double t, int u,
                                                  const ExpmOptions& options = {});

// QA likelihood score L_t(v) = sum_{s in S} P_vs(t), computed as one
// exponential action per seed column (P_vs = P_sv for the real symmetric
// Hamiltonian). Seed nodes keep their own scores; rankings drop them later.
ScoreVector score_qa(const Graph& g, const SeedSet& seeds, const WalkParams& params = {});

} // namespace qwalk
