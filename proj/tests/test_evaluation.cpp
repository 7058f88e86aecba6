#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qwalk/errors.hpp"
#include "qwalk/evaluation.hpp"
#include "qwalk/export.hpp"
#include "qwalk/rng.hpp"
#include "synthetic.hpp"

using namespace qwalk;
namespace ts = qwalk::testsupport;

namespace {

SeedSet seeds(std::string disease, std::vector<int> indices) {
    SeedSet s;
    s.disease_id = std::move(disease);
    s.seed_indices = std::move(indices);
    return s;
}

} // namespace

TEST_CASE("split sizes follow the floor convention") {
    std::vector<int> twenty(20);
    for (int i = 0; i < 20; ++i) twenty[static_cast<std::size_t>(i)] = i;
    for (const auto& split : make_splits(seeds("d", twenty), 10, 42)) {
        CHECK(split.held_out.size() == 10);
        CHECK(split.train_seeds.size() == 10);
    }

    std::vector<int> fifteen(15);
    for (int i = 0; i < 15; ++i) fifteen[static_cast<std::size_t>(i)] = i;
    for (const auto& split : make_splits(seeds("d", fifteen), 4, 1)) {
        CHECK(split.held_out.size() == 7);
        CHECK(split.train_seeds.size() == 8);
    }
}

TEST_CASE("splits partition the seeds") {
    std::vector<int> pool;
    for (int i = 0; i < 17; ++i) pool.push_back(i * 3);
    for (const auto& split : make_splits(seeds("d", pool), 8, 9)) {
        std::vector<int> merged = split.train_seeds;
        merged.insert(merged.end(), split.held_out.begin(), split.held_out.end());
        std::sort(merged.begin(), merged.end());
        CHECK(merged == pool);
    }
}

TEST_CASE("splits are reproducible and seed-sensitive") {
    std::vector<int> pool(12);
    for (int i = 0; i < 12; ++i) pool[static_cast<std::size_t>(i)] = i;
    const auto a = make_splits(seeds("d", pool), 5, 7);
    const auto b = make_splits(seeds("d", pool), 5, 7);
    const auto c = make_splits(seeds("d", pool), 5, 8);
    bool any_different = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].held_out == b[i].held_out);
        if (a[i].held_out != c[i].held_out) any_different = true;
    }
    CHECK(any_different);
}

TEST_CASE("splits reject singleton seed sets") {
    CHECK_THROWS_AS(make_splits(seeds("d", {3}), 2, 0), DataError);
}

TEST_CASE("ranking excludes train seeds and breaks ties by label") {
    const Graph g = Graph::from_edges({{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "e"}});
    // scores: a=train, others tied at 0.5 except d higher.
    std::vector<double> scores = {9.0, 0.5, 0.5, 0.7, 0.5};
    const RankedList ranked = rank_scores(g, scores, {0}, {2});
    REQUIRE(ranked.order.size() == 4);
    CHECK(g.label(ranked.order[0]) == "d");
    CHECK(g.label(ranked.order[1]) == "b"); // tie block in label order
    CHECK(g.label(ranked.order[2]) == "c");
    CHECK(g.label(ranked.order[3]) == "e");
    CHECK(ranked.hit_ranks == std::vector<int>{3});

    CHECK_THROWS_AS(rank_scores(g, scores, {0}, {0}), DataError); // held gene in train
}

TEST_CASE("recall_at fixtures") {
    RankedList ranked;
    ranked.order = {10, 11, 12, 13, 14, 15, 16, 17};
    ranked.hit_ranks = {2, 6};
    ranked.is_held.assign(8, 0);
    CHECK(recall_at(ranked, 5) == doctest::Approx(0.5));
    CHECK(recall_at(ranked, 6) == doctest::Approx(1.0));
    CHECK(recall_at(ranked, 1) == doctest::Approx(0.0));
    CHECK_THROWS_AS(recall_at(ranked, 0), std::invalid_argument);
    CHECK_THROWS_AS(recall_at(ranked, 9), std::invalid_argument);
    CHECK_THROWS_AS(recall_from_hit_ranks({}, 0, 3), DataError);

    // Monotone non-decreasing in the threshold.
    double previous = 0.0;
    for (int n = 1; n <= 8; ++n) {
        const double r = recall_at(ranked, n);
        CHECK(r >= previous);
        previous = r;
    }
}

TEST_CASE("mrr fixtures") {
    // Three methods, one disease, distinct recalls.
    CHECK(mean_reciprocal_rank({{0.9}, {0.5}, {0.1}}) ==
          std::vector<double>{1.0, 0.5, 1.0 / 3.0});

    // Two methods tied for best: both rank (1+2)/2.
    const auto tied = mean_reciprocal_rank({{0.7}, {0.7}});
    CHECK(tied[0] == doctest::Approx(1.0 / 1.5));
    CHECK(tied[1] == doctest::Approx(1.0 / 1.5));

    // Five methods over two diseases, hand-enumerated:
    // disease 0 recalls: m0=.5 m1=.4 m2=.3 m3=.2 m4=.1 -> ranks 1..5
    // disease 1 recalls: m0=.1 m1=.2 m2=.3 m3=.4 m4=.5 -> ranks 5..1
    const auto grid = mean_reciprocal_rank({{0.5, 0.1}, {0.4, 0.2}, {0.3, 0.3}, {0.2, 0.4},
                                            {0.1, 0.5}});
    CHECK(grid[0] == doctest::Approx((1.0 / 1.0 + 1.0 / 5.0) / 2.0));
    CHECK(grid[1] == doctest::Approx((1.0 / 2.0 + 1.0 / 4.0) / 2.0));
    CHECK(grid[2] == doctest::Approx((1.0 / 3.0 + 1.0 / 3.0) / 2.0));
    CHECK(grid[3] == doctest::Approx((1.0 / 4.0 + 1.0 / 2.0) / 2.0));
    CHECK(grid[4] == doctest::Approx((1.0 / 5.0 + 1.0 / 1.0) / 2.0));
}

TEST_CASE("mrr values without ties sum to the harmonic number") {
    std::mt19937_64 gen(3);
    auto unit = [&gen]() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
    const std::size_t methods = 6;
    const std::size_t diseases = 4;
    std::vector<std::vector<double>> recalls(methods, std::vector<double>(diseases));
    for (auto& row : recalls) {
        for (auto& v : row) v = unit();
    }
    const auto mrr = mean_reciprocal_rank(recalls);
    double total = 0.0;
    for (double v : mrr) total += v;
    double harmonic = 0.0;
    for (std::size_t k = 1; k <= methods; ++k) harmonic += 1.0 / static_cast<double>(k);
    CHECK(total == doctest::Approx(harmonic).epsilon(1e-12));
}

TEST_CASE("benchmark on the planted toy") {
    const ts::PlantedToy toy = ts::planted_module_toy(12);
    const std::vector<SeedSet> diseases = {seeds("planted", toy.module_nodes)};

    std::vector<MethodConfig> methods(3);
    methods[0].method = Method::QA;
    methods[1].method = Method::RWR;
    methods[2].method = Method::NBR;

    BenchmarkConfig config;
    config.trials = 10;
    config.n_max = 10;
    config.rng_seed = 99;

    const EvalReport report = run_benchmark(toy.graph, diseases, methods, config);
    CHECK(report.cells.size() == 30);
    CHECK(report.leakage_checks == 30);
    for (const auto& cell : report.cells) {
        REQUIRE(cell.ok);
        CHECK(cell.n_train == 3);
        CHECK(cell.n_held == 3);
        CHECK(cell.n_candidates == toy.graph.n() - 3);
        for (int r : cell.hit_ranks) {
            CHECK(r >= 1);
            CHECK(r <= cell.n_candidates);
        }
    }

    // Single-method report: MRR is identically 1.
    const EvalReport solo =
        run_benchmark(toy.graph, diseases, {methods[0]}, config);
    CHECK(solo.mrr_at(5) == std::vector<double>{1.0});

    // Two methods, one disease: MRRs are {1, 0.5} or tie at 1/1.5.
    const EvalReport duo =
        run_benchmark(toy.graph, diseases, {methods[0], methods[2]}, config);
    const auto mrr = duo.mrr_at(5);
    const bool distinct = (mrr == std::vector<double>{1.0, 0.5}) ||
                          (mrr == std::vector<double>{0.5, 1.0});
    const bool tied = mrr[0] == doctest::Approx(1.0 / 1.5) && mrr[1] == doctest::Approx(1.0 / 1.5);
    CHECK((distinct || tied));
}

TEST_CASE("nbr beats random scores on the planted module") {
    const ts::PlantedToy toy = ts::planted_module_toy(12);
    const SeedSet module = seeds("planted", toy.module_nodes);
    const auto splits = make_splits(module, 10, 4);

    int nbr_wins = 0;
    std::mt19937_64 gen(17);
    auto unit = [&gen]() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
    for (const auto& split : splits) {
        SeedSet train = seeds("planted", split.train_seeds);
        const ScoreVector nbr = score_nbr(toy.graph, train);
        std::vector<double> random_scores(static_cast<std::size_t>(toy.graph.n()));
        for (auto& v : random_scores) v = unit();

        const double nbr_recall =
            recall_at(rank_scores(toy.graph, nbr.scores, split.train_seeds, split.held_out), 5);
        const double rnd_recall = recall_at(
            rank_scores(toy.graph, random_scores, split.train_seeds, split.held_out), 5);
        if (nbr_recall > rnd_recall) ++nbr_wins;
    }
    CHECK(nbr_wins >= 9);
}

TEST_CASE("benchmark reports are byte-identical across thread counts") {
    const ts::PlantedToy toy = ts::planted_module_toy(12);
    const std::vector<SeedSet> diseases = {seeds("planted", toy.module_nodes)};
    std::vector<MethodConfig> methods(2);
    methods[0].method = Method::QA;
    methods[1].method = Method::DK;
    BenchmarkConfig config;
    config.trials = 4;
    config.n_max = 8;
    config.rng_seed = 5;

#ifdef _OPENMP
    omp_set_num_threads(1);
#endif
    const EvalExport first = export_report(run_benchmark(toy.graph, diseases, methods, config));
#ifdef _OPENMP
    omp_set_num_threads(2);
#endif
    const EvalExport second = export_report(run_benchmark(toy.graph, diseases, methods, config));

    CHECK(first.cells_tsv == second.cells_tsv);
    CHECK(first.curves_tsv == second.curves_tsv);
    CHECK(first.mrr_json == second.mrr_json);
}

TEST_CASE("per-disease failures are isolated") {
    const ts::PlantedToy toy = ts::planted_module_toy(12);
    // Second disease sits in no graph neighbourhood: a seed pair whose RWR
    // run is fine but whose QA runs fine too -- to force a failure, use an
    // out-of-range index.
    std::vector<SeedSet> diseases = {seeds("good", toy.module_nodes),
                                     seeds("broken", {0, toy.graph.n() + 5})};
    std::vector<MethodConfig> methods(1);
    methods[0].method = Method::QA;
    BenchmarkConfig config;
    config.trials = 2;
    config.n_max = 5;
    config.rng_seed = 1;

    const EvalReport report = run_benchmark(toy.graph, diseases, methods, config);
    std::size_t ok = 0;
    std::size_t failed = 0;
    for (const auto& cell : report.cells) {
        if (cell.ok) ++ok;
        else ++failed;
    }
    CHECK(ok == 2);
    CHECK(failed == 2);
    for (const auto& cell : report.cells) {
        if (!cell.ok) CHECK_FALSE(cell.error.empty());
    }
}

TEST_CASE("eval export shapes") {
    const ts::PlantedToy toy = ts::planted_module_toy(12);
    const std::vector<SeedSet> diseases = {seeds("planted", toy.module_nodes)};
    std::vector<MethodConfig> methods(2);
    methods[0].method = Method::NBR;
    methods[1].method = Method::RWR;
    BenchmarkConfig config;
    config.trials = 3;
    config.n_max = 6;
    config.rng_seed = 2;
    const EvalExport files = export_report(run_benchmark(toy.graph, diseases, methods, config));

    CHECK(files.cells_tsv.find("recall_at_6") != std::string::npos);
    CHECK(files.cells_tsv.find("planted\tNBR\t0\t") != std::string::npos);
    CHECK(files.curves_tsv.rfind("n\tmethod\tmean_recall", 0) == 0);
    CHECK(files.mrr_json.find("\"mrr_tie_policy\": \"average_rank\"") != std::string::npos);
    CHECK(files.mrr_json.find("\"failures\": []") != std::string::npos);
}
