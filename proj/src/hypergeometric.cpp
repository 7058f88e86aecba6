#include "qwalk/hypergeometric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "qwalk/errors.hpp"

namespace qwalk {

double log_binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0);
}

double hypergeometric_upper_tail(std::int64_t population, std::int64_t successes,
                                 std::int64_t draws, std::int64_t x) {
    if (population < 0 || successes < 0 || draws < 0 || successes > population ||
        draws > population) {
        throw DataError("hypergeometric_upper_tail: inconsistent counts (population=" +
                        std::to_string(population) + ", successes=" + std::to_string(successes) +
                        ", draws=" + std::to_string(draws) + ")");
    }
    const std::int64_t support_lo = std::max<std::int64_t>(0, draws + successes - population);
    const std::int64_t support_hi = std::min(successes, draws);
    if (x <= support_lo) return 1.0;
    if (x > support_hi) return 0.0;

    const double log_denom = log_binomial(population, draws);
    std::vector<double> log_terms;
    log_terms.reserve(static_cast<std::size_t>(support_hi - x + 1));
    double log_max = -std::numeric_limits<double>::infinity();
    for (std::int64_t j = x; j <= support_hi; ++j) {
        const double lt =
            log_binomial(successes, j) + log_binomial(population - successes, draws - j) - log_denom;
        log_terms.push_back(lt);
        log_max = std::max(log_max, lt);
    }
    double sum = 0.0;
    for (double lt : log_terms) sum += std::exp(lt - log_max);
    const double p = std::exp(log_max) * sum;
    return std::min(p, 1.0);
}

} // namespace qwalk
