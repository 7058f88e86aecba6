#include "qwalk/expm.hpp"

#include <algorithm>
#include <cmath>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace detail {

namespace {

// Smallest k where the envelope (ea/2k)^k puts |J_k(a)| (and e^{-a} I_k(a))
// below ~1e-20 of the sequence peak. Keeping the horizon tight matters: the
// backward recurrence grows superexponentially above the decay point, and a
// horizon far past it would overflow the dynamic range of double.
std::size_t decay_horizon(double a) {
    const double e = std::exp(1.0);
    std::size_t k = static_cast<std::size_t>(std::ceil(a)) + 4;
    while (static_cast<double>(k) * std::log(2.0 * static_cast<double>(k) / (e * a)) < 46.0) {
        ++k;
    }
    return k + 2;
}

// Backward (Miller) recurrence shared by both Bessel families. Returns the
// unnormalized minimal-solution values y_0..y_{k_max}; the caller applies
// the family's normalization identity.
std::vector<double> miller_downward(double a, std::size_t k_max, bool modified) {
    const std::size_t start = k_max + 32;
    std::vector<double> y(k_max + 1, 0.0);
    double above = 0.0;     // y_{k+1}
    double current = 1e-250; // y_k, arbitrary seed at k = start
    for (std::size_t k = start; k >= 1; --k) {
        const double ratio = 2.0 * static_cast<double>(k) / a;
        const double below = modified ? (above + ratio * current) : (ratio * current - above);
        above = current;
        current = below;
        if (std::abs(current) > 1e250) {
            current *= 1e-250;
            above *= 1e-250;
            for (double& v : y) v *= 1e-250;
        }
        if (k - 1 <= k_max) y[k - 1] = current;
    }
    return y;
}

} // namespace

std::vector<double> bessel_j_sequence(double a, std::size_t k_max) {
    auto y = miller_downward(a, k_max, /*modified=*/false);
    // J_0 + 2 * sum_{k even >= 2} J_k = 1
    double norm = y[0];
    for (std::size_t k = 2; k <= k_max; k += 2) norm += 2.0 * y[k];
    for (double& v : y) v /= norm;
    return y;
}

std::vector<double> bessel_i_scaled_sequence(double a, std::size_t k_max) {
    auto y = miller_downward(a, k_max, /*modified=*/true);
    // I_0 + 2 * sum_{k >= 1} I_k = e^a; all terms positive.
    double norm = y[0];
    for (std::size_t k = 1; k <= k_max; ++k) norm += 2.0 * y[k];
    for (double& v : y) v /= norm;
    return y;
}

} // namespace detail

namespace {

void require_finite(double t, std::span<const double> b) {
    if (!std::isfinite(t)) throw NumericalError("expm: non-finite evolution time");
    for (double v : b) {
        if (!std::isfinite(v)) throw NumericalError("expm: non-finite entry in input vector");
    }
}

// Truncation index: smallest K with sum_{k > K} |c_k| below the budget.
// Valid because ||T_k(H~) b|| <= ||b|| when the spectrum lies in [-1, 1].
std::size_t truncation_index(std::span<const double> coefficients, double tail_budget) {
    double tail = 0.0;
    std::size_t k = coefficients.size();
    while (k > 1) {
        tail += std::abs(coefficients[k - 1]);
        if (tail > tail_budget) break;
        --k;
    }
    return k - 1; // retain 0..k-1
}

struct ChebyshevPlan {
    double center = 0.0;
    double halfwidth = 0.0;
    std::size_t terms = 0; // retained terms beyond the zeroth
};

ChebyshevPlan plan_expansion(const CsrMatrix& m, double t, const ExpmOptions& options,
                             std::vector<double>& coefficients, bool modified) {
    ChebyshevPlan plan;
    const auto bounds = gershgorin_bounds(m);
    plan.center = 0.5 * (bounds.hi + bounds.lo);
    plan.halfwidth = 0.5 * (bounds.hi - bounds.lo);
    const double a = std::abs(t) * plan.halfwidth;
    if (a == 0.0) {
        plan.terms = 0;
        return plan;
    }
    const auto budget_error = [&](std::size_t needed) {
        return NumericalError("expm: required Chebyshev expansion (" + std::to_string(needed) +
                              " terms for |t|*halfwidth = " + std::to_string(a) +
                              ") exceeds the term ceiling of " +
                              std::to_string(options.term_ceiling));
    };
    if (a > static_cast<double>(options.term_ceiling)) {
        throw budget_error(static_cast<std::size_t>(a));
    }
    const std::size_t k_max = detail::decay_horizon(a);
    if (static_cast<std::int64_t>(k_max) > options.term_ceiling) throw budget_error(k_max);
    coefficients = modified ? detail::bessel_i_scaled_sequence(a, k_max)
                            : detail::bessel_j_sequence(a, k_max);
    // Each retained term k >= 1 enters with weight 2, so the raw-magnitude
    // tail gets half the error budget.
    plan.terms = truncation_index(coefficients, options.tol / 8.0);
    return plan;
}

} // namespace

// Runs the real-vector Chebyshev recurrence once and accumulates the complex
// result y = sum_k phase * (-i)^k (2 - delta_k0) J_k(a) T_k(H~) b.
static void unitary_accumulate(const CsrMatrix& h, double t, std::span<const double> b,
                               const ExpmOptions& options, std::complex<double> scale,
                               std::vector<std::complex<double>>& y) {
    std::vector<double> coeff;
    const ChebyshevPlan plan = plan_expansion(h, t, options, coeff, /*modified=*/false);
    const std::size_t n = b.size();

    // Phase from the spectral shift: exp(-i t c).
    const std::complex<double> phase =
        scale * std::complex<double>(std::cos(t * plan.center), -std::sin(t * plan.center));

    if (plan.terms == 0) {
        // Spectrum is a point (or t = 0): the propagator is the phase alone.
        for (std::size_t i = 0; i < n; ++i) y[i] += phase * b[i];
        return;
    }

    const double sign = t >= 0.0 ? 1.0 : -1.0; // J_k(|a|) with (-i sign)^k
    std::vector<double> prev(b.begin(), b.end());
    std::vector<double> cur(n);
    std::vector<double> next(n);
    spmv_shifted(cur, h, prev, plan.center, plan.halfwidth, options.serial);

    // (-i)^k cycles through {1, -i, -1, i}: even k feeds the real lane,
    // odd k the imaginary lane, with alternating signs.
    auto add_term = [&](std::size_t k, const std::vector<double>& w) {
        const double c = (k == 0 ? 1.0 : 2.0) * coeff[k];
        std::complex<double> factor;
        switch (k % 4) {
            case 0: factor = {c, 0.0}; break;
            case 1: factor = {0.0, -c * sign}; break;
            case 2: factor = {-c, 0.0}; break;
            default: factor = {0.0, c * sign}; break;
        }
        factor *= phase;
        const double fr = factor.real();
        const double fi = factor.imag();
        const double* ws = w.data();
        std::complex<double>* ys = y.data();
#pragma omp parallel for schedule(static) if (!options.serial)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
            ys[i] += std::complex<double>(fr * ws[i], fi * ws[i]);
        }
    };

    add_term(0, prev);
    add_term(1, cur);
    for (std::size_t k = 2; k <= plan.terms; ++k) {
        // next = 2 * H~ * cur - prev
        spmv_shifted(next, h, cur, plan.center, plan.halfwidth, options.serial);
        double* ns = next.data();
        const double* ps = prev.data();
#pragma omp parallel for schedule(static) if (!options.serial)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
            ns[i] = 2.0 * ns[i] - ps[i];
        }
        add_term(k, next);
        std::swap(prev, cur);
        std::swap(cur, next);
    }
}

std::vector<std::complex<double>> expm_unitary_action(const CsrMatrix& h, double t,
                                                      std::span<const double> b,
                                                      const ExpmOptions& options) {
    if (static_cast<int>(b.size()) != h.n) {
        throw std::invalid_argument("expm_unitary_action: dimension mismatch");
    }
    require_finite(t, b);
    std::vector<std::complex<double>> y(b.size(), {0.0, 0.0});
    if (t == 0.0) {
        for (std::size_t i = 0; i < b.size(); ++i) y[i] = b[i];
        return y;
    }
    unitary_accumulate(h, t, b, options, {1.0, 0.0}, y);
    return y;
}

std::vector<std::complex<double>> expm_unitary_action(const CsrMatrix& h, double t,
                                                      std::span<const std::complex<double>> b,
                                                      const ExpmOptions& options) {
    if (static_cast<int>(b.size()) != h.n) {
        throw std::invalid_argument("expm_unitary_action: dimension mismatch");
    }
    std::vector<double> part(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) part[i] = b[i].real();
    require_finite(t, part);
    std::vector<std::complex<double>> y(b.size(), {0.0, 0.0});
    if (t == 0.0) {
        std::copy(b.begin(), b.end(), y.begin());
        return y;
    }
    unitary_accumulate(h, t, part, options, {1.0, 0.0}, y);
    for (std::size_t i = 0; i < b.size(); ++i) part[i] = b[i].imag();
    require_finite(t, part);
    unitary_accumulate(h, t, part, options, {0.0, 1.0}, y);
    return y;
}

std::vector<double> expm_heat_action(const CsrMatrix& l, double t, std::span<const double> b,
                                     const ExpmOptions& options) {
    if (static_cast<int>(b.size()) != l.n) {
        throw std::invalid_argument("expm_heat_action: dimension mismatch");
    }
    if (t < 0.0) throw std::invalid_argument("expm_heat_action: t must be >= 0");
    require_finite(t, b);
    std::vector<double> y(b.size(), 0.0);
    if (t == 0.0) {
        std::copy(b.begin(), b.end(), y.begin());
        return y;
    }

    std::vector<double> coeff;
    const ChebyshevPlan plan = plan_expansion(l, t, options, coeff, /*modified=*/true);
    const std::size_t n = b.size();

    // exp(-tL) = exp(a - t*center) * sum_k (2-delta) (-1)^k [e^{-a} I_k(a)] T_k(L~),
    // a = t * halfwidth. The prefactor equals exp(-t * lambda_min_bound),
    // which is 1 for a PSD Laplacian bound and must stay representable.
    const double log_prefactor = t * (plan.halfwidth - plan.center);
    if (log_prefactor > 700.0) {
        throw NumericalError("expm_heat_action: exp(-tL) norm bound overflows double range");
    }
    const double prefactor = std::exp(log_prefactor);

    if (plan.terms == 0) {
        const double factor = std::exp(-t * plan.center);
        for (std::size_t i = 0; i < n; ++i) y[i] = factor * b[i];
        return y;
    }

    std::vector<double> prev(b.begin(), b.end());
    std::vector<double> cur(n);
    std::vector<double> next(n);
    spmv_shifted(cur, l, prev, plan.center, plan.halfwidth, options.serial);

    auto add_term = [&](std::size_t k, const std::vector<double>& w) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        const double c = prefactor * (k == 0 ? 1.0 : 2.0) * sign * coeff[k];
        const double* ws = w.data();
        double* ys = y.data();
#pragma omp parallel for schedule(static) if (!options.serial)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
            ys[i] += c * ws[i];
        }
    };

    add_term(0, prev);
    add_term(1, cur);
    for (std::size_t k = 2; k <= plan.terms; ++k) {
        spmv_shifted(next, l, cur, plan.center, plan.halfwidth, options.serial);
        double* ns = next.data();
        const double* ps = prev.data();
#pragma omp parallel for schedule(static) if (!options.serial)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
            ns[i] = 2.0 * ns[i] - ps[i];
        }
        add_term(k, next);
        std::swap(prev, cur);
        std::swap(cur, next);
    }
    return y;
}

} // namespace qwalk
