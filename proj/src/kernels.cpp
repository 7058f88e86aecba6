#include "qwalk/csr.hpp"

#include <algorithm>
#include <cmath>

namespace qwalk {

CsrMatrix adjacency_matrix(const Graph& g) {
    CsrMatrix a;
    a.n = g.n();
    a.offsets.assign(static_cast<std::size_t>(g.n()) + 1, 0);
    std::int64_t total = 0;
    for (int v = 0; v < g.n(); ++v) {
        total += static_cast<std::int64_t>(g.neighbors(v).size());
        a.offsets[static_cast<std::size_t>(v) + 1] = total;
    }
    a.cols.reserve(static_cast<std::size_t>(total));
    for (int v = 0; v < g.n(); ++v) {
        const auto nbrs = g.neighbors(v);
        a.cols.insert(a.cols.end(), nbrs.begin(), nbrs.end());
    }
    a.vals.assign(static_cast<std::size_t>(total), 1.0);
    return a;
}

CsrMatrix laplacian_matrix(const Graph& g) {
    CsrMatrix l;
    l.n = g.n();
    l.offsets.assign(static_cast<std::size_t>(g.n()) + 1, 0);
    // Row v holds deg(v)-on-diagonal minus ones at neighbours; the diagonal
    // entry is always materialized.
    std::int64_t total = 0;
    for (int v = 0; v < g.n(); ++v) {
        const auto nbrs = g.neighbors(v);
        const bool has_diag = std::binary_search(nbrs.begin(), nbrs.end(), v);
        total += static_cast<std::int64_t>(nbrs.size()) + (has_diag ? 0 : 1);
        l.offsets[static_cast<std::size_t>(v) + 1] = total;
    }
    l.cols.resize(static_cast<std::size_t>(total));
    l.vals.resize(static_cast<std::size_t>(total));
    for (int v = 0; v < g.n(); ++v) {
        std::size_t w = static_cast<std::size_t>(l.offsets[static_cast<std::size_t>(v)]);
        bool diag_written = false;
        const double diag = static_cast<double>(g.degree(v)) - (g.has_self_edge(v) ? 1.0 : 0.0);
        for (int u : g.neighbors(v)) {
            if (!diag_written && u >= v) {
                if (u == v) {
                    l.cols[w] = v;
                    l.vals[w] = diag;
                    ++w;
                    diag_written = true;
                    continue;
                }
                l.cols[w] = v;
                l.vals[w] = diag;
                ++w;
                diag_written = true;
            }
            l.cols[w] = u;
            l.vals[w] = -1.0;
            ++w;
        }
        if (!diag_written) {
            l.cols[w] = v;
            l.vals[w] = diag;
            ++w;
        }
    }
    return l;
}

CsrMatrix column_stochastic_matrix(const Graph& g) {
    CsrMatrix w;
    w.n = g.n();
    w.offsets.assign(static_cast<std::size_t>(g.n()) + 1, 0);
    std::int64_t total = 0;
    for (int v = 0; v < g.n(); ++v) {
        const std::size_t row = g.neighbors(v).empty() ? 1 : g.neighbors(v).size();
        total += static_cast<std::int64_t>(row);
        w.offsets[static_cast<std::size_t>(v) + 1] = total;
    }
    w.cols.resize(static_cast<std::size_t>(total));
    w.vals.resize(static_cast<std::size_t>(total));
    for (int v = 0; v < g.n(); ++v) {
        std::size_t at = static_cast<std::size_t>(w.offsets[static_cast<std::size_t>(v)]);
        const auto nbrs = g.neighbors(v);
        if (nbrs.empty()) {
            w.cols[at] = v; // dangling column: unit self-loop
            w.vals[at] = 1.0;
            continue;
        }
        for (int u : nbrs) {
            w.cols[at] = u;
            w.vals[at] = 1.0 / static_cast<double>(g.degree(u));
            ++at;
        }
    }
    return w;
}

void spmv_serial(std::span<double> y, const CsrMatrix& a, std::span<const double> x) {
    for (int i = 0; i < a.n; ++i) {
        double acc = 0.0;
        for (std::int64_t k = a.offsets[static_cast<std::size_t>(i)];
             k < a.offsets[static_cast<std::size_t>(i) + 1]; ++k) {
            acc += a.vals[static_cast<std::size_t>(k)] *
                   x[static_cast<std::size_t>(a.cols[static_cast<std::size_t>(k)])];
        }
        y[static_cast<std::size_t>(i)] = acc;
    }
}

void spmv(std::span<double> y, const CsrMatrix& a, std::span<const double> x) {
    const double* xs = x.data();
    double* ys = y.data();
#pragma omp parallel for schedule(static)
    for (int i = 0; i < a.n; ++i) {
        double acc = 0.0;
        for (std::int64_t k = a.offsets[static_cast<std::size_t>(i)];
             k < a.offsets[static_cast<std::size_t>(i) + 1]; ++k) {
            acc += a.vals[static_cast<std::size_t>(k)] *
                   xs[static_cast<std::size_t>(a.cols[static_cast<std::size_t>(k)])];
        }
        ys[i] = acc;
    }
}

void spmv_shifted(std::span<double> y, const CsrMatrix& a, std::span<const double> x, double shift,
                  double scale, bool serial) {
    const double inv = 1.0 / scale;
    const double* xs = x.data();
    double* ys = y.data();
    if (serial) {
        for (int i = 0; i < a.n; ++i) {
            double acc = 0.0;
            for (std::int64_t k = a.offsets[static_cast<std::size_t>(i)];
                 k < a.offsets[static_cast<std::size_t>(i) + 1]; ++k) {
                acc += a.vals[static_cast<std::size_t>(k)] *
                       xs[static_cast<std::size_t>(a.cols[static_cast<std::size_t>(k)])];
            }
            ys[i] = (acc - shift * xs[i]) * inv;
        }
        return;
    }
#pragma omp parallel for schedule(static)
    for (int i = 0; i < a.n; ++i) {
        double acc = 0.0;
        for (std::int64_t k = a.offsets[static_cast<std::size_t>(i)];
             k < a.offsets[static_cast<std::size_t>(i) + 1]; ++k) {
            acc += a.vals[static_cast<std::size_t>(k)] *
                   xs[static_cast<std::size_t>(a.cols[static_cast<std::size_t>(k)])];
        }
        ys[i] = (acc - shift * xs[i]) * inv;
    }
}

SpectralBounds gershgorin_bounds(const CsrMatrix& a) {
    SpectralBounds b;
    bool first = true;
    for (int i = 0; i < a.n; ++i) {
        double center = 0.0;
        double radius = 0.0;
        for (std::int64_t k = a.offsets[static_cast<std::size_t>(i)];
             k < a.offsets[static_cast<std::size_t>(i) + 1]; ++k) {
            const double v = a.vals[static_cast<std::size_t>(k)];
            if (a.cols[static_cast<std::size_t>(k)] == i) center += v;
            else radius += std::abs(v);
        }
        if (first) {
            b.lo = center - radius;
            b.hi = center + radius;
            first = false;
        } else {
            b.lo = std::min(b.lo, center - radius);
            b.hi = std::max(b.hi, center + radius);
        }
    }
    return b;
}

} // namespace qwalk
