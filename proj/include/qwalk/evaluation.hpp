#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qwalk/baselines.hpp"
#include "qwalk/graph.hpp"
#include "qwalk/ingest.hpp"
#include "qwalk/qwalk_engine.hpp"
#include "qwalk/score_vector.hpp"

namespace qwalk {

// One cross-validation fold: half the seeds (rounded down) held out as
// positive test cases, the rest kept for scoring.
struct Split {
    std::string disease_id;
    std::vector<int> train_seeds; // sorted
    std::vector<int> held_out;    // sorted
    int trial = 0;
    std::uint64_t rng_seed = 0;
};

// trials independent uniform splits, fully determined by rng_seed.
std::vector<Split> make_splits(const SeedSet& seeds, int trials, std::uint64_t rng_seed);

// Non-train nodes ordered by descending score (ties: ascending gene label),
// with held-out membership flags. Train seeds are excluded by construction
// and their absence is verified.
struct RankedList {
    std::vector<int> order;
    std::vector<std::uint8_t> is_held; // aligned with order
    std::vector<int> hit_ranks;        // 1-based ranks of held-out genes, ascending
};

RankedList rank_scores(const Graph& g, const std::vector<double>& scores,
                       const std::vector<int>& train_seeds, const std::vector<int>& held_out);

// Recall within the top n_threshold of the ranking.
double recall_at(const RankedList& ranked, int n_threshold);
double recall_from_hit_ranks(const std::vector<int>& hit_ranks, std::size_t n_held,
                             int n_threshold);

// Per-method mean reciprocal rank: methods are ranked per disease by average
// recall (rank 1 = best, ties share the average of their positions) and the
// reciprocal ranks are averaged over diseases. recalls[m][d] is method m's
// average recall on disease d.
std::vector<double> mean_reciprocal_rank(const std::vector<std::vector<double>>& recalls);

// Resolved configuration for one scoring method inside a benchmark.
struct MethodConfig {
    Method method = Method::QA;
    WalkParams qa;
    double dk_t = 0.3;
    RwrOptions rwr;
    int dia_seed_weight = 9;
    double tol = 1e-9;
};

ScoreVector score_with(const Graph& g, const SeedSet& seeds, const MethodConfig& config,
                       int n_rank);

struct BenchmarkConfig {
    int trials = 10;
    int n_max = 300;
    std::uint64_t rng_seed = 0;
};

struct CellResult {
    std::string disease_id;
    Method method = Method::QA;
    int trial = 0;
    int n_train = 0;
    int n_held = 0;
    int n_candidates = 0;
    std::vector<int> hit_ranks;
    bool ok = false;
    std::string error; // set when the cell failed; cell excluded from aggregates
};

struct EvalReport {
    BenchmarkConfig config;
    std::vector<std::string> diseases;
    std::vector<Method> methods;
    std::vector<CellResult> cells; // disease-major, then trial, then method
    std::size_t leakage_checks = 0;

    // Mean recall at n over all successful cells of one method.
    double mean_recall(Method method, int n) const;
    std::vector<double> mean_curve(Method method) const; // n = 1..config.n_max
    // Method-order MRR at threshold n; diseases with failed cells excluded.
    std::vector<double> mrr_at(int n) const;
};

// Fig. 2 protocol: for every (disease, trial) split and every method, score
// with the train seeds, rank all non-train nodes, and record where the
// held-out genes landed. Cells run independently (and in parallel); failures
// are isolated per cell. Deterministic for a given rng_seed regardless of
// thread count.
EvalReport run_benchmark(const Graph& g, const std::vector<SeedSet>& diseases,
                         const std::vector<MethodConfig>& methods, const BenchmarkConfig& config);

} // namespace qwalk
