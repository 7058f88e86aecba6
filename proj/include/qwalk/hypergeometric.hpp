#pragma once

#include <cstdint>

namespace qwalk {

// log C(n, k) via lgamma; exact enough for tail sums at interactome scale,
// where the binomial coefficients themselves overflow double.
double log_binomial(std::int64_t n, std::int64_t k);

// Upper tail P(X >= x) for X ~ Hypergeometric(population, successes, draws),
// evaluated in log space with a max-shifted sum. Returns exactly 1 when x is
// at or below the support minimum and 0 when x exceeds the support maximum.
double hypergeometric_upper_tail(std::int64_t population, std::int64_t successes,
                                 std::int64_t draws, std::int64_t x);

} // namespace qwalk
