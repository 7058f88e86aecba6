#include "qwalk/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_set>

#include "qwalk/csr.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/expm.hpp"
#include "qwalk/hypergeometric.hpp"

namespace qwalk {

std::string_view method_name(Method method) {
    switch (method) {
        case Method::QA: return "QA";
        case Method::DK: return "DK";
        case Method::RWR: return "RWR";
        case Method::DIA: return "DIA";
        case Method::NBR: return "NBR";
    }
    return "?";
}

std::optional<Method> parse_method(std::string_view name) {
    if (name == "QA") return Method::QA;
    if (name == "DK") return Method::DK;
    if (name == "RWR") return Method::RWR;
    if (name == "DIA") return Method::DIA;
    if (name == "NBR") return Method::NBR;
    return std::nullopt;
}

ScoreVector score_dk(const Graph& g, const SeedSet& seeds, double t, double tol) {
    if (seeds.seed_indices.empty()) throw DataError("score_dk: empty seed set");
    if (!std::isfinite(t) || t < 0.0) throw std::invalid_argument("score_dk: t must be >= 0");

    const CsrMatrix l = laplacian_matrix(g);
    ExpmOptions options;
    options.tol = tol;

    ScoreVector out;
    out.method = Method::DK;
    out.scores.assign(static_cast<std::size_t>(g.n()), 0.0);
    out.params = {{"t", t}, {"tolerance", tol}};

    constexpr std::size_t kChunk = 16;
    const auto& s = seeds.seed_indices;
    std::vector<std::vector<double>> slots(std::min(kChunk, s.size()));
    for (std::size_t base = 0; base < s.size(); base += kChunk) {
        const std::size_t count = std::min(kChunk, s.size() - base);
#pragma omp parallel for schedule(dynamic, 1)
        for (std::int64_t j = 0; j < static_cast<std::int64_t>(count); ++j) {
            std::vector<double> basis(static_cast<std::size_t>(g.n()), 0.0);
            basis[static_cast<std::size_t>(s[base + static_cast<std::size_t>(j)])] = 1.0;
            slots[static_cast<std::size_t>(j)] = expm_heat_action(l, t, basis, options);
        }
        for (std::size_t j = 0; j < count; ++j) {
            const auto& p = slots[j];
            for (std::size_t v = 0; v < p.size(); ++v) out.scores[v] += p[v];
        }
    }
    return out;
}

ScoreVector score_rwr(const Graph& g, const SeedSet& seeds, const RwrOptions& options) {
    if (seeds.seed_indices.empty()) throw DataError("score_rwr: empty seed set");
    if (!(options.restart > 0.0 && options.restart < 1.0)) {
        throw std::invalid_argument("score_rwr: restart probability must lie in (0, 1)");
    }

    const CsrMatrix w = column_stochastic_matrix(g);
    const std::size_t n = static_cast<std::size_t>(g.n());
    std::vector<double> p0(n, 0.0);
    const double uniform = 1.0 / static_cast<double>(seeds.seed_indices.size());
    for (int s : seeds.seed_indices) p0[static_cast<std::size_t>(s)] = uniform;

    std::vector<double> p = p0;
    std::vector<double> next(n);
    const double r = options.restart;
    bool converged = false;
    for (int iter = 0; iter < options.max_iter; ++iter) {
        spmv(next, w, p);
        for (std::size_t i = 0; i < n; ++i) next[i] = (1.0 - r) * next[i] + r * p0[i];
        double delta = 0.0; // serial L1 for reproducible bits
        for (std::size_t i = 0; i < n; ++i) delta += std::abs(next[i] - p[i]);
        p.swap(next);
        if (delta <= options.tol) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        throw NumericalError("score_rwr: no convergence within " +
                             std::to_string(options.max_iter) + " iterations");
    }

    ScoreVector out;
    out.method = Method::RWR;
    out.scores = std::move(p);
    out.params = {{"restart", options.restart}, {"tolerance", options.tol}};
    return out;
}

double diamond_pvalue(std::int64_t universe, std::int64_t module_size, std::int64_t degree,
                      std::int64_t links) {
    return hypergeometric_upper_tail(universe, module_size, degree, links);
}

ScoreVector score_diamond(const Graph& g, const SeedSet& seeds, int n_rank, int seed_weight) {
    if (seeds.seed_indices.empty()) throw DataError("score_diamond: empty seed set");
    if (n_rank < 1) throw std::invalid_argument("score_diamond: n_rank must be >= 1");
    if (seed_weight < 1) throw std::invalid_argument("score_diamond: seed_weight must be >= 1");

    const std::size_t n = static_cast<std::size_t>(g.n());
    std::vector<std::uint8_t> in_module(n, 0);
    std::vector<std::uint8_t> is_seed(n, 0);
    for (int s : seeds.seed_indices) {
        in_module[static_cast<std::size_t>(s)] = 1;
        is_seed[static_cast<std::size_t>(s)] = 1;
    }

    // Links into the module / into the original seeds, maintained
    // incrementally; only frontier nodes (>= 1 module link) are candidates.
    std::vector<int> module_links(n, 0);
    std::vector<int> seed_links(n, 0);
    std::vector<int> frontier;
    auto touch = [&](int v, bool from_seed) {
        if (module_links[static_cast<std::size_t>(v)] == 0) frontier.push_back(v);
        ++module_links[static_cast<std::size_t>(v)];
        if (from_seed) ++seed_links[static_cast<std::size_t>(v)];
    };
    for (int s : seeds.seed_indices) {
        for (int v : g.neighbors(s)) {
            if (v != s) touch(v, true);
        }
    }

    const std::int64_t weight_extra = static_cast<std::int64_t>(seed_weight) - 1;
    const std::int64_t n_seeds = static_cast<std::int64_t>(seeds.seed_indices.size());
    const std::int64_t universe = static_cast<std::int64_t>(g.n()) + weight_extra * n_seeds;

    ScoreVector out;
    out.method = Method::DIA;
    out.scores.assign(n, 0.0);

    std::int64_t module_size = n_seeds; // unweighted node count
    int added = 0;
    while (added < n_rank) {
        const std::int64_t weighted_module = module_size + weight_extra * n_seeds;
        int best = -1;
        double best_p = 0.0;
        std::map<std::pair<std::int64_t, std::int64_t>, double> cache;
        for (int v : frontier) {
            if (in_module[static_cast<std::size_t>(v)]) continue;
            const std::int64_t kb = module_links[static_cast<std::size_t>(v)] +
                                    weight_extra * seed_links[static_cast<std::size_t>(v)];
            const std::int64_t k = static_cast<std::int64_t>(g.degree(v)) +
                                   weight_extra * seed_links[static_cast<std::size_t>(v)];
            const auto key = std::make_pair(k, kb);
            auto it = cache.find(key);
            double p;
            if (it != cache.end()) {
                p = it->second;
            } else {
                p = diamond_pvalue(universe, weighted_module, k, kb);
                cache.emplace(key, p);
            }
            if (best < 0 || p < best_p ||
                (p == best_p && (g.degree(v) < g.degree(best) ||
                                 (g.degree(v) == g.degree(best) && g.label(v) < g.label(best))))) {
                best = v;
                best_p = p;
            }
        }
        if (best < 0) break; // frontier exhausted: shorter ranking

        in_module[static_cast<std::size_t>(best)] = 1;
        ++module_size;
        ++added;
        out.scores[static_cast<std::size_t>(best)] = static_cast<double>(n_rank - added + 1);
        for (int v : g.neighbors(best)) {
            if (v != best && !in_module[static_cast<std::size_t>(v)]) touch(v, false);
        }
    }

    out.params = {{"n_rank", static_cast<double>(n_rank)},
                  {"seed_weight", static_cast<double>(seed_weight)},
                  {"dia_added", static_cast<double>(added)}};
    return out;
}

ScoreVector score_nbr(const Graph& g, const SeedSet& seeds) {
    std::vector<std::uint8_t> is_seed(static_cast<std::size_t>(g.n()), 0);
    for (int s : seeds.seed_indices) is_seed[static_cast<std::size_t>(s)] = 1;

    ScoreVector out;
    out.method = Method::NBR;
    out.scores.assign(static_cast<std::size_t>(g.n()), 0.0);
    out.params = {};
    for (int v = 0; v < g.n(); ++v) {
        if (is_seed[static_cast<std::size_t>(v)] || g.degree(v) == 0) continue;
        int hits = 0;
        for (int u : g.neighbors(v)) {
            if (is_seed[static_cast<std::size_t>(u)]) ++hits;
        }
        out.scores[static_cast<std::size_t>(v)] =
            static_cast<double>(hits) / static_cast<double>(g.degree(v));
    }
    return out;
}

} // namespace qwalk
