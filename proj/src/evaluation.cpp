#include "qwalk/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qwalk/errors.hpp"
#include "qwalk/rng.hpp"

namespace qwalk {

std::vector<Split> make_splits(const SeedSet& seeds, int trials, std::uint64_t rng_seed) {
    if (seeds.seed_indices.size() < 2) {
        throw DataError("make_splits: need at least 2 seeds for disease " + seeds.disease_id);
    }
    if (trials < 1) throw std::invalid_argument("make_splits: trials must be >= 1");

    std::vector<Split> splits;
    splits.reserve(static_cast<std::size_t>(trials));
    const std::size_t held_size = seeds.seed_indices.size() / 2;
    for (int trial = 0; trial < trials; ++trial) {
        std::mt19937_64 gen(rng::derive(rng_seed, seeds.disease_id, static_cast<std::uint64_t>(trial)));
        auto held = rng::sample_without_replacement(seeds.seed_indices, held_size, gen);
        std::sort(held.begin(), held.end());

        Split split;
        split.disease_id = seeds.disease_id;
        split.trial = trial;
        split.rng_seed = rng_seed;
        split.held_out = std::move(held);
        std::set_difference(seeds.seed_indices.begin(), seeds.seed_indices.end(),
                            split.held_out.begin(), split.held_out.end(),
                            std::back_inserter(split.train_seeds));
        splits.push_back(std::move(split));
    }
    return splits;
}

RankedList rank_scores(const Graph& g, const std::vector<double>& scores,
                       const std::vector<int>& train_seeds, const std::vector<int>& held_out) {
    if (scores.size() != static_cast<std::size_t>(g.n())) {
        throw std::invalid_argument("rank_scores: score vector length mismatch");
    }
    std::vector<std::uint8_t> is_train(scores.size(), 0);
    for (int s : train_seeds) is_train[static_cast<std::size_t>(s)] = 1;
    std::vector<std::uint8_t> held_mask(scores.size(), 0);
    for (int h : held_out) {
        if (is_train[static_cast<std::size_t>(h)]) {
            throw DataError("rank_scores: held-out gene " + g.label(h) + " is also a train seed");
        }
        held_mask[static_cast<std::size_t>(h)] = 1;
    }

    RankedList ranked;
    ranked.order.reserve(scores.size() - train_seeds.size());
    for (int v = 0; v < g.n(); ++v) {
        if (!is_train[static_cast<std::size_t>(v)]) ranked.order.push_back(v);
    }
    std::sort(ranked.order.begin(), ranked.order.end(), [&](int a, int b) {
        const double sa = scores[static_cast<std::size_t>(a)];
        const double sb = scores[static_cast<std::size_t>(b)];
        if (sa != sb) return sa > sb;
        return g.label(a) < g.label(b);
    });

    ranked.is_held.resize(ranked.order.size());
    for (std::size_t i = 0; i < ranked.order.size(); ++i) {
        if (is_train[static_cast<std::size_t>(ranked.order[i])]) {
            throw DataError("rank_scores: train seed leaked into the ranking");
        }
        const bool held = held_mask[static_cast<std::size_t>(ranked.order[i])] != 0;
        ranked.is_held[i] = held ? 1 : 0;
        if (held) ranked.hit_ranks.push_back(static_cast<int>(i) + 1);
    }
    if (ranked.hit_ranks.size() != held_out.size()) {
        throw DataError("rank_scores: held-out gene missing from the ranking");
    }
    return ranked;
}

double recall_from_hit_ranks(const std::vector<int>& hit_ranks, std::size_t n_held,
                             int n_threshold) {
    if (n_held == 0) throw DataError("recall: empty held-out set");
    std::size_t hits = 0;
    for (int r : hit_ranks) {
        if (r <= n_threshold) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(n_held);
}

double recall_at(const RankedList& ranked, int n_threshold) {
    if (n_threshold < 1 || static_cast<std::size_t>(n_threshold) > ranked.order.size()) {
        throw std::invalid_argument("recall_at: threshold outside [1, ranking length]");
    }
    return recall_from_hit_ranks(ranked.hit_ranks, ranked.hit_ranks.size(), n_threshold);
}

std::vector<double> mean_reciprocal_rank(const std::vector<std::vector<double>>& recalls) {
    const std::size_t n_methods = recalls.size();
    if (n_methods == 0) return {};
    const std::size_t n_diseases = recalls[0].size();
    for (const auto& row : recalls) {
        if (row.size() != n_diseases) {
            throw std::invalid_argument("mean_reciprocal_rank: ragged recall table");
        }
    }
    if (n_diseases == 0) throw std::invalid_argument("mean_reciprocal_rank: no diseases");

    std::vector<double> mrr(n_methods, 0.0);
    std::vector<std::size_t> idx(n_methods);
    for (std::size_t d = 0; d < n_diseases; ++d) {
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return recalls[a][d] > recalls[b][d];
        });
        // Tied methods share the average of the rank positions they span.
        std::size_t i = 0;
        while (i < n_methods) {
            std::size_t j = i;
            while (j + 1 < n_methods && recalls[idx[j + 1]][d] == recalls[idx[i]][d]) ++j;
            const double shared_rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
            for (std::size_t k = i; k <= j; ++k) mrr[idx[k]] += 1.0 / shared_rank;
            i = j + 1;
        }
    }
    for (double& v : mrr) v /= static_cast<double>(n_diseases);
    return mrr;
}

ScoreVector score_with(const Graph& g, const SeedSet& seeds, const MethodConfig& config,
                       int n_rank) {
    switch (config.method) {
        case Method::QA: {
            WalkParams params = config.qa;
            params.tolerance = config.tol;
            return score_qa(g, seeds, params);
        }
        case Method::DK: return score_dk(g, seeds, config.dk_t, config.tol);
        case Method::RWR: return score_rwr(g, seeds, config.rwr);
        case Method::DIA: return score_diamond(g, seeds, n_rank, config.dia_seed_weight);
        case Method::NBR: return score_nbr(g, seeds);
    }
    throw std::invalid_argument("score_with: unknown method");
}

double EvalReport::mean_recall(Method method, int n) const {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& cell : cells) {
        if (!cell.ok || cell.method != method) continue;
        sum += recall_from_hit_ranks(cell.hit_ranks, static_cast<std::size_t>(cell.n_held), n);
        ++count;
    }
    return count > 0 ? sum / static_cast<double>(count) : 0.0;
}

std::vector<double> EvalReport::mean_curve(Method method) const {
    std::vector<double> curve(static_cast<std::size_t>(config.n_max), 0.0);
    std::size_t count = 0;
    for (const auto& cell : cells) {
        if (!cell.ok || cell.method != method) continue;
        ++count;
        const double unit = 1.0 / static_cast<double>(cell.n_held);
        for (int r : cell.hit_ranks) {
            if (r <= config.n_max) curve[static_cast<std::size_t>(r) - 1] += unit;
        }
    }
    // Prefix-sum the per-rank hits into recall@N, then normalize by cells.
    double acc = 0.0;
    for (auto& v : curve) {
        acc += v;
        v = count > 0 ? acc / static_cast<double>(count) : 0.0;
    }
    return curve;
}

std::vector<double> EvalReport::mrr_at(int n) const {
    // Average recall per (method, disease) over trials; a disease is only
    // comparable when every method completed all its trials.
    std::vector<std::vector<double>> table(methods.size());
    std::vector<std::string> usable;
    for (const auto& disease : diseases) {
        bool complete = true;
        std::vector<double> per_method(methods.size(), 0.0);
        std::vector<std::size_t> counts(methods.size(), 0);
        for (const auto& cell : cells) {
            if (cell.disease_id != disease) continue;
            const auto m = std::find(methods.begin(), methods.end(), cell.method);
            const std::size_t mi = static_cast<std::size_t>(m - methods.begin());
            if (!cell.ok) {
                complete = false;
                break;
            }
            per_method[mi] +=
                recall_from_hit_ranks(cell.hit_ranks, static_cast<std::size_t>(cell.n_held), n);
            ++counts[mi];
        }
        if (!complete) continue;
        for (std::size_t mi = 0; mi < methods.size(); ++mi) {
            if (counts[mi] == 0) {
                complete = false;
                break;
            }
            per_method[mi] /= static_cast<double>(counts[mi]);
        }
        if (!complete) continue;
        for (std::size_t mi = 0; mi < methods.size(); ++mi) table[mi].push_back(per_method[mi]);
        usable.push_back(disease);
    }
    if (usable.empty()) return std::vector<double>(methods.size(), 0.0);
    return mean_reciprocal_rank(table);
}

EvalReport run_benchmark(const Graph& g, const std::vector<SeedSet>& diseases,
                         const std::vector<MethodConfig>& methods, const BenchmarkConfig& config) {
    if (methods.empty()) throw std::invalid_argument("run_benchmark: no methods configured");
    if (config.n_max < 1 || config.n_max >= g.n()) {
        throw std::invalid_argument("run_benchmark: n_max must lie in [1, n)");
    }

    EvalReport report;
    report.config = config;
    for (const auto& m : methods) report.methods.push_back(m.method);

    // Lay out all cells up front; the parallel loop fills disjoint slots.
    struct CellJob {
        const SeedSet* disease = nullptr;
        const Split* split = nullptr;
        const MethodConfig* method = nullptr;
    };
    std::vector<std::vector<Split>> all_splits;
    std::vector<CellJob> jobs;
    for (const auto& disease : diseases) {
        report.diseases.push_back(disease.disease_id);
        all_splits.push_back(make_splits(disease, config.trials, config.rng_seed));
    }
    for (std::size_t d = 0; d < diseases.size(); ++d) {
        for (const auto& split : all_splits[d]) {
            for (const auto& method : methods) {
                jobs.push_back({&diseases[d], &split, &method});
            }
        }
    }

    report.cells.resize(jobs.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t j = 0; j < static_cast<std::int64_t>(jobs.size()); ++j) {
        const CellJob& job = jobs[static_cast<std::size_t>(j)];
        CellResult& cell = report.cells[static_cast<std::size_t>(j)];
        cell.disease_id = job.disease->disease_id;
        cell.method = job.method->method;
        cell.trial = job.split->trial;
        cell.n_train = static_cast<int>(job.split->train_seeds.size());
        cell.n_held = static_cast<int>(job.split->held_out.size());
        try {
            SeedSet train;
            train.disease_id = job.disease->disease_id;
            train.seed_indices = job.split->train_seeds;
            const ScoreVector scores = score_with(g, train, *job.method, config.n_max);
            const RankedList ranked =
                rank_scores(g, scores.scores, job.split->train_seeds, job.split->held_out);
            cell.n_candidates = static_cast<int>(ranked.order.size());
            cell.hit_ranks = ranked.hit_ranks;
            cell.ok = true;
        } catch (const std::exception& e) {
            cell.ok = false;
            cell.error = e.what();
        }
    }

    // Leakage check: no train seed may appear anywhere in a ranking. The
    // rankings themselves are transient, so re-derive the containment check
    // from the counts: every ranking must hold exactly n - n_train nodes and
    // every held-out gene exactly once (rank_scores already threw otherwise).
    for (const auto& cell : report.cells) {
        if (!cell.ok) continue;
        if (cell.n_candidates != g.n() - cell.n_train ||
            static_cast<int>(cell.hit_ranks.size()) != cell.n_held) {
            throw DataError("run_benchmark: ranking leakage detected for " + cell.disease_id);
        }
        ++report.leakage_checks;
    }
    return report;
}

} // namespace qwalk
