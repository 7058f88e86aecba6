#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qwalk/graph.hpp"

namespace qwalk {

// Real sparse matrix in compressed-sparse-row form. All propagation kernels
// operate on this representation; the matrices built from a Graph are
// symmetric except for the column-stochastic walk matrix.
struct CsrMatrix {
    int n = 0;
    std::vector<std::int64_t> offsets; // n + 1
    std::vector<int> cols;
    std::vector<double> vals;

    std::int64_t nnz() const { return static_cast<std::int64_t>(cols.size()); }
};

CsrMatrix adjacency_matrix(const Graph& g);

// Laplacian D - A. A self-edge cancels out of its own row: diagonal deg-1,
// and the loop carries no flow.
CsrMatrix laplacian_matrix(const Graph& g);

// Column-stochastic walk matrix W with W_ij = A_ij / deg(j); columns of
// degree-0 nodes become unit self-loops so W stays stochastic.
CsrMatrix column_stochastic_matrix(const Graph& g);

// y = A x. The parallel kernel splits rows across threads; every y[i] is a
// serial dot product, so results are bit-identical for any thread count.
void spmv(std::span<double> y, const CsrMatrix& a, std::span<const double> x);
void spmv_serial(std::span<double> y, const CsrMatrix& a, std::span<const double> x);

// y = (A x - shift * x) / scale, fused; the Chebyshev recurrence step.
void spmv_shifted(std::span<double> y, const CsrMatrix& a, std::span<const double> x, double shift,
                  double scale, bool serial = false);

struct SpectralBounds {
    double lo = 0.0;
    double hi = 0.0;
};

// Gershgorin disc bounds; for symmetric matrices these enclose the spectrum.
SpectralBounds gershgorin_bounds(const CsrMatrix& a);

} // namespace qwalk
