#include "qwalk/walk_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "qwalk/errors.hpp"
#include "qwalk/expm.hpp"
#include "qwalk/hamiltonian.hpp"
#include "qwalk/qwalk_engine.hpp"
#include "qwalk/rng.hpp"

namespace qwalk {

namespace {

MdtCurve mdt_curve_for(const Graph& g, const Hamiltonian& h, int source,
                       std::span<const double> times, double tol) {
    const auto dist = bfs_distances(g, source);
    MdtCurve curve;
    curve.alpha = h.alpha;
    curve.times.assign(times.begin(), times.end());
    curve.values.resize(times.size());
    curve.excluded_mass.resize(times.size());

    ExpmOptions options;
    options.tol = tol;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const auto probs = transition_probabilities_from(h, times[i], source, options);
        double mu = 0.0;
        double excluded = 0.0;
        for (std::size_t v = 0; v < probs.size(); ++v) {
            if (dist[v] < 0) excluded += probs[v];
            else mu += static_cast<double>(dist[v]) * probs[v];
        }
        curve.values[i] = mu;
        curve.excluded_mass[i] = excluded;
    }
    return curve;
}

} // namespace

MdtCurve mean_distance_travelled(const Graph& g, int source, const SeedSet& seeds_for_h,
                                 double alpha, std::span<const double> times, double tol) {
    if (source < 0 || source >= g.n()) {
        throw std::out_of_range("mean_distance_travelled: invalid source index");
    }
    const Hamiltonian h = build_hamiltonian(g, seeds_for_h, alpha);
    MdtCurve curve = mdt_curve_for(g, h, source, times, tol);
    curve.context = "source:" + g.label(source);
    return curve;
}

std::vector<MdtCurve> degree_stratified_mdt(const Graph& g, std::span<const DegreeRange> ranges,
                                            std::span<const double> alphas,
                                            std::span<const double> times, int samples,
                                            std::uint64_t rng_seed, double tol) {
    if (samples < 1) throw std::invalid_argument("degree_stratified_mdt: samples must be >= 1");

    std::vector<MdtCurve> out;
    for (const auto& range : ranges) {
        std::vector<int> pool;
        for (int v = 0; v < g.n(); ++v) {
            if (g.degree(v) >= range.lo && g.degree(v) <= range.hi) pool.push_back(v);
        }
        if (pool.empty()) continue; // skipped; callers can compare counts

        const std::string range_label =
            "degree[" + std::to_string(range.lo) + "," + std::to_string(range.hi) + "]";
        std::vector<int> chosen;
        if (pool.size() <= static_cast<std::size_t>(samples)) {
            chosen = pool;
        } else {
            std::mt19937_64 gen(rng::derive(rng_seed, range_label));
            chosen = rng::sample_without_replacement(pool, static_cast<std::size_t>(samples), gen);
            std::sort(chosen.begin(), chosen.end());
        }

        for (double alpha : alphas) {
            std::vector<MdtCurve> per_source(chosen.size());
#pragma omp parallel for schedule(dynamic, 1)
            for (std::int64_t i = 0; i < static_cast<std::int64_t>(chosen.size()); ++i) {
                const int source = chosen[static_cast<std::size_t>(i)];
                SeedSet single;
                single.disease_id = range_label;
                single.seed_indices = {source};
                const Hamiltonian h = build_hamiltonian(g, single, alpha);
                per_source[static_cast<std::size_t>(i)] = mdt_curve_for(g, h, source, times, tol);
            }

            MdtCurve avg;
            avg.alpha = alpha;
            avg.context = range_label;
            avg.times.assign(times.begin(), times.end());
            avg.values.assign(times.size(), 0.0);
            avg.excluded_mass.assign(times.size(), 0.0);
            for (const auto& c : per_source) {
                for (std::size_t i = 0; i < times.size(); ++i) {
                    avg.values[i] += c.values[i];
                    avg.excluded_mass[i] += c.excluded_mass[i];
                }
            }
            const double inv = 1.0 / static_cast<double>(per_source.size());
            for (std::size_t i = 0; i < times.size(); ++i) {
                avg.values[i] *= inv;
                avg.excluded_mass[i] *= inv;
            }
            out.push_back(std::move(avg));
        }
    }
    return out;
}

MdtCurve disease_mdt(const Graph& g, const SeedSet& seeds, double alpha,
                     std::span<const double> times, double tol) {
    if (seeds.seed_indices.empty()) throw DataError("disease_mdt: empty seed set");
    const Hamiltonian h = build_hamiltonian(g, seeds, alpha);

    std::vector<MdtCurve> per_seed(seeds.seed_indices.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(seeds.seed_indices.size()); ++i) {
        per_seed[static_cast<std::size_t>(i)] =
            mdt_curve_for(g, h, seeds.seed_indices[static_cast<std::size_t>(i)], times, tol);
    }

    MdtCurve avg;
    avg.alpha = alpha;
    avg.context = "disease:" + seeds.disease_id;
    avg.times.assign(times.begin(), times.end());
    avg.values.assign(times.size(), 0.0);
    avg.excluded_mass.assign(times.size(), 0.0);
    for (const auto& c : per_seed) {
        for (std::size_t i = 0; i < times.size(); ++i) {
            avg.values[i] += c.values[i];
            avg.excluded_mass[i] += c.excluded_mass[i];
        }
    }
    const double inv = 1.0 / static_cast<double>(per_seed.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        avg.values[i] *= inv;
        avg.excluded_mass[i] *= inv;
    }
    return avg;
}

double enrichment_pvalue(std::int64_t universe, std::int64_t module_size,
                         std::int64_t selection_size, std::int64_t overlap) {
    if (overlap < 0 || overlap > std::min(module_size, selection_size) ||
        std::max(module_size, selection_size) > universe) {
        throw DataError("enrichment_pvalue: inconsistent counts");
    }
    return hypergeometric_upper_tail(universe, module_size, selection_size, overlap);
}

std::vector<double> default_time_grid() {
    std::vector<double> times(50);
    for (std::size_t i = 0; i < times.size(); ++i) {
        times[i] = static_cast<double>(i) / 49.0;
    }
    return times;
}

} // namespace qwalk
