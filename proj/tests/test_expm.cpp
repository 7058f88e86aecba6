#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "dense_reference.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/expm.hpp"
#include "qwalk/graph.hpp"
#include "qwalk/hamiltonian.hpp"
#include "qwalk/qwalk_engine.hpp"
#include "qwalk/rng.hpp"
#include "synthetic.hpp"

using namespace qwalk;
namespace ts = qwalk::testsupport;

namespace {

Graph two_node() { return Graph::from_edges({{"a", "b"}}); }

SeedSet seeds_of(const Graph& g, std::vector<int> indices) {
    SeedSet s;
    s.disease_id = "test";
    s.seed_indices = std::move(indices);
    (void)g;
    return s;
}

std::vector<std::complex<double>> random_complex_vector(int n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    auto unit = [&gen]() { return static_cast<double>(gen() >> 11) * 0x1.0p-53 - 0.5; };
    std::vector<std::complex<double>> b(static_cast<std::size_t>(n));
    for (auto& v : b) v = {unit(), unit()};
    return b;
}

} // namespace

TEST_CASE("bessel coefficient sequences match the standard library") {
    for (const double a : {0.5, 3.0, 20.0, 75.0}) {
        const auto j = detail::bessel_j_sequence(a, 120);
        for (int k = 0; k <= 30; ++k) {
            REQUIRE(j[static_cast<std::size_t>(k)] ==
                    doctest::Approx(std::cyl_bessel_j(k, a)).epsilon(1e-10));
        }
        const auto i_scaled = detail::bessel_i_scaled_sequence(a, 120);
        for (int k = 0; k <= 20; ++k) {
            REQUIRE(i_scaled[static_cast<std::size_t>(k)] ==
                    doctest::Approx(std::cyl_bessel_i(k, a) * std::exp(-a)).epsilon(1e-10));
        }
    }
}

TEST_CASE("hamiltonian diagonal placement") {
    const Graph tri = Graph::from_edges({{"a", "b"}, {"b", "c"}, {"a", "c"}});
    const Hamiltonian h = build_hamiltonian(tri, seeds_of(tri, {0}), 5.0);
    const auto dense = ts::csr_to_dense(h.matrix);
    CHECK(dense[0][0] == doctest::Approx(5.0));
    CHECK(dense[1][1] == doctest::Approx(0.0));
    CHECK(dense[2][2] == doctest::Approx(0.0));
    CHECK(dense[0][1] == doctest::Approx(1.0));
    CHECK(dense[0][2] == doctest::Approx(1.0));

    // alpha = 0 leaves the adjacency untouched.
    const Hamiltonian plain = build_hamiltonian(tri, seeds_of(tri, {0, 2}), 0.0);
    const CsrMatrix adj = adjacency_matrix(tri);
    CHECK(plain.matrix.cols == adj.cols);
    CHECK(plain.matrix.vals == adj.vals);

    const Graph duo = two_node();
    const auto m = ts::csr_to_dense(build_hamiltonian(duo, seeds_of(duo, {0}), 2.0).matrix);
    CHECK(m[0][0] == doctest::Approx(2.0));
    CHECK(m[0][1] == doctest::Approx(1.0));
    CHECK(m[1][0] == doctest::Approx(1.0));
    CHECK(m[1][1] == doctest::Approx(0.0));
}

TEST_CASE("pre-existing self-edge stacks under alpha") {
    const Graph g = Graph::from_edges({{"a", "a"}, {"a", "b"}});
    const Hamiltonian h = build_hamiltonian(g, seeds_of(g, {0}), 3.0);
    const auto dense = ts::csr_to_dense(h.matrix);
    CHECK(dense[0][0] == doctest::Approx(4.0)); // 1 from A plus alpha
}

TEST_CASE("negative alpha rejected") {
    const Graph g = two_node();
    CHECK_THROWS_AS(build_hamiltonian(g, seeds_of(g, {0}), -1.0), std::invalid_argument);
}

TEST_CASE("seed mask bookkeeping") {
    const Graph g = Graph::from_edges({{"a", "b"}, {"b", "c"}, {"c", "d"}});
    const Hamiltonian h = build_hamiltonian(g, seeds_of(g, {1, 3}), 7.0);
    CHECK(h.seed_mask == std::vector<std::uint8_t>{0, 1, 0, 1});
    CHECK_THROWS_AS(build_hamiltonian(g, seeds_of(g, {9}), 1.0), std::out_of_range);
}

TEST_CASE("zero hamiltonian acts as the identity") {
    CsrMatrix zero;
    zero.n = 2;
    zero.offsets = {0, 0, 0};
    const std::vector<double> b = {0.3, -1.25};
    const auto y = expm_unitary_action(zero, 1.7, std::span<const double>(b));
    CHECK(y[0].real() == 0.3);
    CHECK(y[0].imag() == 0.0);
    CHECK(y[1].real() == -1.25);
    CHECK(y[1].imag() == 0.0);
}

TEST_CASE("two-node closed form, alpha 0") {
    const Graph g = two_node();
    const Hamiltonian h = build_hamiltonian(g, seeds_of(g, {0}), 0.0);
    const std::vector<double> e0 = {1.0, 0.0};
    ExpmOptions tight;
    tight.tol = 1e-13;
    for (int i = 0; i <= 20; ++i) {
        const double t = 0.37 * i;
        const auto y = expm_unitary_action(h.matrix, t, std::span<const double>(e0), tight);
        CHECK(y[0].real() == doctest::Approx(std::cos(t)).epsilon(1e-12));
        CHECK(y[0].imag() == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(y[1].real() == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(y[1].imag() == doctest::Approx(-std::sin(t)).epsilon(1e-12));
    }
}

TEST_CASE("random graphs match the dense oracle") {
    std::uint64_t seed = 100;
    for (int round = 0; round < 6; ++round) {
        const Graph g = ts::erdos_renyi_graph(50, 0.12, seed++);
        for (const double alpha : {0.0, 5.0}) {
            const Hamiltonian h = build_hamiltonian(g, seeds_of(g, {0, 3}), alpha);
            const auto b = random_complex_vector(g.n(), seed++);
            for (const double t : {0.11, 1.0}) {
                const auto got =
                    expm_unitary_action(h.matrix, t, std::span<const std::complex<double>>(b));
                const auto want = ts::dense_unitary_action(h.matrix, t, b);
                CHECK(ts::relative_error(got, want) < 1e-8);
            }
        }
    }
}

TEST_CASE("negative time conjugates the propagator") {
    const Graph g = ts::erdos_renyi_graph(30, 0.2, 77);
    const Hamiltonian h = build_hamiltonian(g, seeds_of(g, {1}), 2.0);
    const auto b = random_complex_vector(g.n(), 5);
    const auto got = expm_unitary_action(h.matrix, -0.8, std::span<const std::complex<double>>(b));
    const auto want = ts::dense_unitary_action(h.matrix, -0.8, b);
    CHECK(ts::relative_error(got, want) < 1e-8);
}

TEST_CASE("serial reference path is bit-identical") {
    const Graph g = ts::erdos_renyi_graph(40, 0.15, 42);
    const Hamiltonian h = build_hamiltonian(g, seeds_of(g, {2}), 5.0);
    std::vector<double> b(static_cast<std::size_t>(g.n()), 0.0);
    b[2] = 1.0;
    ExpmOptions parallel;
    ExpmOptions serial;
    serial.serial = true;
    const auto yp = expm_unitary_action(h.matrix, 0.9, std::span<const double>(b), parallel);
    const auto ys = expm_unitary_action(h.matrix, 0.9, std::span<const double>(b), serial);
    REQUIRE(yp.size() == ys.size());
    for (std::size_t i = 0; i < yp.size(); ++i) {
        CHECK(yp[i].real() == ys[i].real());
        CHECK(yp[i].imag() == ys[i].imag());
    }
}

TEST_CASE("non-finite input rejected, term budget enforced") {
    const Graph g = two_node();
    const Hamiltonian h = build_hamiltonian(g, seeds_of(g, {0}), 0.0);
    const std::vector<double> bad = {std::nan(""), 0.0};
    CHECK_THROWS_AS(expm_unitary_action(h.matrix, 1.0, std::span<const double>(bad)),
                    NumericalError);

    std::vector<double> b = {1.0, 0.0};
    ExpmOptions tiny_budget;
    tiny_budget.term_ceiling = 8;
    CHECK_THROWS_AS(expm_unitary_action(h.matrix, 50.0, std::span<const double>(b), tiny_budget),
                    NumericalError);
}

TEST_CASE("transition probabilities: identity at t=0 and unit row sums") {
    const Graph g = ts::erdos_renyi_graph(60, 0.1, 9);
    const Hamiltonian h = build_hamiltonian(g, seeds_of(g, {0, 5, 9}), 5.0);

    const auto p0 = transition_probabilities_from(h, 0.0, 7);
    for (int v = 0; v < g.n(); ++v) {
        CHECK(p0[static_cast<std::size_t>(v)] == (v == 7 ? 1.0 : 0.0));
    }

    for (const double t : {0.11, 0.5, 2.0}) {
        const auto p = transition_probabilities_from(h, t, 3);
        double sum = 0.0;
        for (double v : p) {
            CHECK(v >= 0.0);
            sum += v;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("transition symmetry P_uv = P_vu") {
    const Graph g = ts::erdos_renyi_graph(25, 0.2, 31);
    const Hamiltonian h = build_hamiltonian(g, seeds_of(g, {1, 4}), 5.0);
    const auto pu = transition_probabilities_from(h, 0.7, 2);
    const auto pv = transition_probabilities_from(h, 0.7, 11);
    CHECK(pu[11] == doctest::Approx(pv[2]).epsilon(1e-10));
}

TEST_CASE("two-node transfer with seed self-loop") {
    const Graph g = two_node();
    // P_01(t) = sin^2(t) at alpha 0; with alpha the transfer is suppressed:
    // P_01(t) = sin^2(sqrt(1 + alpha^2/4) t) / (1 + alpha^2/4).
    const Hamiltonian h0 = build_hamiltonian(g, seeds_of(g, {0}), 0.0);
    const Hamiltonian h2 = build_hamiltonian(g, seeds_of(g, {0}), 2.0);
    ExpmOptions tight;
    tight.tol = 1e-12;
    const double half_pi = std::acos(0.0);
    const auto p = transition_probabilities_from(h0, half_pi, 0, tight);
    CHECK(p[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(p[1] == doctest::Approx(1.0).epsilon(1e-12));

    for (int i = 1; i <= 25; ++i) {
        const double t = 0.13 * i;
        const auto p0 = transition_probabilities_from(h0, t, 0, tight);
        const auto p2 = transition_probabilities_from(h2, t, 0, tight);
        CHECK(p0[1] == doctest::Approx(std::sin(t) * std::sin(t)).epsilon(1e-10));
        const double omega = std::sqrt(2.0);
        CHECK(p2[1] ==
              doctest::Approx(0.5 * std::sin(omega * t) * std::sin(omega * t)).epsilon(1e-10));
    }
}

TEST_CASE("maximum transfer decreases with alpha") {
    const Graph g = two_node();
    double previous = 1.1;
    for (const double alpha : {0.0, 1.0, 2.0, 5.0, 10.0}) {
        const Hamiltonian h = build_hamiltonian(g, seeds_of(g, {0}), alpha);
        double peak = 0.0;
        for (int i = 0; i <= 400; ++i) {
            const double t = i * 0.02;
            peak = std::max(peak, transition_probabilities_from(h, t, 0)[1]);
        }
        const double expected = 1.0 / (1.0 + alpha * alpha / 4.0);
        CHECK(peak == doctest::Approx(expected).epsilon(1e-3));
        CHECK(peak < previous);
        previous = peak;
    }
}

TEST_CASE("score_qa on the two-node path") {
    const Graph g = two_node();
    WalkParams params;
    params.alpha = 0.0;
    params.tolerance = 1e-12;
    for (int i = 0; i <= 10; ++i) {
        params.t = 0.21 * i;
        const ScoreVector s = score_qa(g, seeds_of(g, {0}), params);
        CHECK(s.scores[1] ==
              doctest::Approx(std::sin(params.t) * std::sin(params.t)).epsilon(1e-10));
    }
}

TEST_CASE("score_qa at t=0 gives zero to non-seeds") {
    const Graph g = ts::erdos_renyi_graph(30, 0.15, 4);
    WalkParams params;
    params.t = 0.0;
    const ScoreVector s = score_qa(g, seeds_of(g, {0, 2}), params);
    for (int v = 0; v < g.n(); ++v) {
        if (v == 0 || v == 2) CHECK(s.scores[static_cast<std::size_t>(v)] == 1.0);
        else CHECK(s.scores[static_cast<std::size_t>(v)] == 0.0);
    }
}

TEST_CASE("score_qa equals the dense brute force on the triangle") {
    const Graph tri = Graph::from_edges({{"a", "b"}, {"b", "c"}, {"a", "c"}});
    WalkParams params;
    params.t = 0.3;
    params.alpha = 0.0;
    params.tolerance = 1e-12;
    const ScoreVector s = score_qa(tri, seeds_of(tri, {0, 1}), params);
    const CsrMatrix adj = adjacency_matrix(tri);
    for (int v = 0; v < 3; ++v) {
        double want = 0.0;
        for (int seed : {0, 1}) {
            want += ts::dense_transition_row(adj, params.t, seed)[static_cast<std::size_t>(v)];
        }
        CHECK(s.scores[static_cast<std::size_t>(v)] == doctest::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("score_qa is permutation equivariant") {
    const auto edges = ts::erdos_renyi_edges(24, 0.2, 15);
    const Graph g = Graph::from_edges(edges);

    auto renamed = edges;
    for (auto& [a, b] : renamed) {
        a = "zz_" + a;
        b = "zz_" + b;
    }
    std::reverse(renamed.begin(), renamed.end());
    const Graph h = Graph::from_edges(renamed);

    WalkParams params;
    params.t = 0.4;
    const SeedSet sg = seeds_of(g, {*g.index_of("g00001"), *g.index_of("g00004")});
    const SeedSet sh = seeds_of(h, {*h.index_of("zz_g00001"), *h.index_of("zz_g00004")});
    const ScoreVector a = score_qa(g, sg, params);
    const ScoreVector b = score_qa(h, sh, params);
    for (int v = 0; v < g.n(); ++v) {
        const int hv = *h.index_of("zz_" + g.label(v));
        CHECK(a.scores[static_cast<std::size_t>(v)] ==
              doctest::Approx(b.scores[static_cast<std::size_t>(hv)]).epsilon(1e-10));
    }
}

TEST_CASE("walk params validation") {
    WalkParams params;
    params.tolerance = 1e-2;
    CHECK_THROWS_AS(validate(params), std::invalid_argument);
    params.tolerance = 0.0;
    CHECK_THROWS_AS(validate(params), std::invalid_argument);
    params.tolerance = 1e-9;
    params.t = -1.0;
    CHECK_THROWS_AS(validate(params), std::invalid_argument);
    params.t = 0.11;
    CHECK_NOTHROW(validate(params));
    const Graph g = two_node();
    CHECK_THROWS_AS(score_qa(g, seeds_of(g, {}), params), DataError);
}
