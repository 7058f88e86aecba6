#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qwalk/csr.hpp"

namespace qwalk {

// Matrix-exponential action on a vector via a Chebyshev expansion of the
// propagator over the Gershgorin interval of the (real symmetric) operator.
// Never forms a dense exponential; cost is one sparse matrix-vector product
// per retained term, roughly t * spectral_halfwidth terms in total.
struct ExpmOptions {
    double tol = 1e-9;                  // target relative 2-norm accuracy
    std::int64_t term_ceiling = 1 << 20; // hard cap on Chebyshev terms
    bool serial = false;                 // route through the serial reference spmv
};

// y = exp(-i t H) b for real symmetric H. Throws NumericalError on
// non-finite input or when the required expansion would exceed the term
// budget (proportional to ||H|| * |t|, capped by term_ceiling).
std::vector<std::complex<double>> expm_unitary_action(const CsrMatrix& h, double t,
                                                      std::span<const double> b,
                                                      const ExpmOptions& options = {});
std::vector<std::complex<double>> expm_unitary_action(const CsrMatrix& h, double t,
                                                      std::span<const std::complex<double>> b,
                                                      const ExpmOptions& options = {});

// y = exp(-t L) b for real symmetric L and t >= 0 (classical heat kernel).
std::vector<double> expm_heat_action(const CsrMatrix& l, double t, std::span<const double> b,
                                     const ExpmOptions& options = {});

namespace detail {

// Chebyshev coefficient sequences via Miller's backward recurrence.
// bessel_j_sequence returns J_0..J_K(a); bessel_i_scaled_sequence returns
// e^{-a} I_0..I_K(a). Both require a > 0.
std::vector<double> bessel_j_sequence(double a, std::size_t k_max);
std::vector<double> bessel_i_scaled_sequence(double a, std::size_t k_max);

} // namespace detail

} // namespace qwalk
