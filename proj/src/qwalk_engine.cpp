#include "qwalk/qwalk_engine.hpp"

#include <cmath>
#include <stdexcept>

#include "qwalk/errors.hpp"

namespace qwalk {

void validate(const WalkParams& params) {
    if (!std::isfinite(params.t) || params.t < 0.0) {
        throw std::invalid_argument("WalkParams: t must be finite and >= 0");
    }
    if (!std::isfinite(params.alpha) || params.alpha < 0.0) {
        throw std::invalid_argument("WalkParams: alpha must be finite and >= 0");
    }
    if (!(params.tolerance > 0.0) || params.tolerance > 1e-3) {
        throw std::invalid_argument("WalkParams: tolerance must lie in (0, 1e-3]");
    }
}

std::vector<double> transition_probabilities_from(const Hamiltonian& h, double t, int u,
                                                  const ExpmOptions& options) {
    if (u < 0 || u >= h.matrix.n) {
        throw std::out_of_range("transition_probabilities_from: node index " + std::to_string(u) +
                                " outside [0, " + std::to_string(h.matrix.n) + ")");
    }
    std::vector<double> basis(static_cast<std::size_t>(h.matrix.n), 0.0);
    basis[static_cast<std::size_t>(u)] = 1.0;
    const auto amplitudes = expm_unitary_action(h.matrix, t, basis, options);
    std::vector<double> probs(amplitudes.size());
    for (std::size_t i = 0; i < amplitudes.size(); ++i) probs[i] = std::norm(amplitudes[i]);
    return probs;
}

ScoreVector score_qa(const Graph& g, const SeedSet& seeds, const WalkParams& params) {
    validate(params);
    if (seeds.seed_indices.empty()) throw DataError("score_qa: empty seed set");

    const Hamiltonian h = build_hamiltonian(g, seeds, params.alpha);
    ExpmOptions options;
    options.tol = params.tolerance;

    ScoreVector out;
    out.method = Method::QA;
    out.scores.assign(static_cast<std::size_t>(g.n()), 0.0);
    out.params = {{"t", params.t}, {"alpha", params.alpha}, {"tolerance", params.tolerance}};

    // Seeds are processed in fixed-size chunks: each chunk fills independent
    // per-seed slots in parallel, then reduces in seed order so the sum is
    // identical for every thread count.
    constexpr std::size_t kChunk = 16;
    const auto& s = seeds.seed_indices;
    std::vector<std::vector<double>> slots(std::min(kChunk, s.size()));
    for (std::size_t base = 0; base < s.size(); base += kChunk) {
        const std::size_t count = std::min(kChunk, s.size() - base);
#pragma omp parallel for schedule(dynamic, 1)
        for (std::int64_t j = 0; j < static_cast<std::int64_t>(count); ++j) {
            slots[static_cast<std::size_t>(j)] = transition_probabilities_from(
                h, params.t, s[base + static_cast<std::size_t>(j)], options);
        }
        for (std::size_t j = 0; j < count; ++j) {
            const auto& p = slots[j];
            for (std::size_t v = 0; v < p.size(); ++v) out.scores[v] += p[v];
        }
    }
    return out;
}

} // namespace qwalk
