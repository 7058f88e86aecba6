// qwalk: disease gene prioritization on PPI networks with continuous-time
// quantum walks and classical propagation baselines.
//
// Subcommands: stats, ingest, score, crossval, mdt, enrich.
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qwalk/baselines.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/evaluation.hpp"
#include "qwalk/export.hpp"
#include "qwalk/graph.hpp"
#include "qwalk/graph_stats.hpp"
#include "qwalk/ingest.hpp"
#include "qwalk/qwalk_engine.hpp"
#include "qwalk/walk_analysis.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;
using namespace qwalk;

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        if (comma == std::string::npos) {
            if (start < text.size()) out.push_back(text.substr(start));
            break;
        }
        if (comma > start) out.push_back(text.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    for (const auto& field : split_csv(text)) {
        try {
            out.push_back(std::stod(field));
        } catch (const std::exception&) {
            throw CLI::ValidationError(what, "cannot parse '" + field + "' as a number");
        }
    }
    if (out.empty()) throw CLI::ValidationError(what, "empty list");
    return out;
}

// "start:end:count" inclusive uniform grid.
std::vector<double> parse_time_grid(const std::string& text) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t colon = text.find(':', start);
        if (colon == std::string::npos) {
            fields.push_back(text.substr(start));
            break;
        }
        fields.push_back(text.substr(start, colon - start));
        start = colon + 1;
    }
    if (fields.size() != 3) {
        throw CLI::ValidationError("--times", "expected start:end:count");
    }
    try {
        const double lo = std::stod(fields[0]);
        const double hi = std::stod(fields[1]);
        const int count = std::stoi(fields[2]);
        if (count < 1 || hi < lo) throw std::invalid_argument("range");
        std::vector<double> grid(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i) {
            grid[static_cast<std::size_t>(i)] =
                count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (count - 1);
        }
        return grid;
    } catch (const CLI::ValidationError&) {
        throw;
    } catch (const std::exception&) {
        throw CLI::ValidationError("--times", "expected start:end:count");
    }
}

std::vector<DegreeRange> parse_degree_ranges(const std::string& text) {
    std::vector<DegreeRange> out;
    for (const auto& field : split_csv(text)) {
        const std::size_t colon = field.find(':');
        if (colon == std::string::npos) {
            throw CLI::ValidationError("--degree-ranges", "expected lo:hi pairs");
        }
        try {
            DegreeRange r;
            r.lo = std::stoi(field.substr(0, colon));
            r.hi = std::stoi(field.substr(colon + 1));
            if (r.lo < 0 || r.hi < r.lo) throw std::invalid_argument("range");
            out.push_back(r);
        } catch (const std::exception&) {
            throw CLI::ValidationError("--degree-ranges", "bad range '" + field + "'");
        }
    }
    if (out.empty()) throw CLI::ValidationError("--degree-ranges", "empty list");
    return out;
}

struct DataFlags {
    std::string graph_path;
    bool drop_self_edges = false;
    std::string assoc_path;
    std::string source = "RAW";
    int min_coverage = 15;
    FilterThresholds thresholds;
};

void add_graph_flags(CLI::App* cmd, DataFlags& flags) {
    cmd->add_option("--graph", flags.graph_path, "edge-list file")->required();
    cmd->add_flag("--drop-self-edges", flags.drop_self_edges,
                  "remove self-interactions at load time");
}

void add_assoc_flags(CLI::App* cmd, DataFlags& flags, bool required) {
    auto* assoc = cmd->add_option("--assoc", flags.assoc_path, "association TSV");
    cmd->add_option("--source", flags.source, "association source: OT, DGN or RAW")
        ->check(CLI::IsMember({"OT", "DGN", "RAW"}));
    cmd->add_option("--min-coverage", flags.min_coverage,
                    "minimum mapped seeds per admitted disease");
    cmd->add_option("--ot-min-score", flags.thresholds.ot_min_score, "OT score threshold");
    cmd->add_option("--dgn-min-score", flags.thresholds.dgn_min_score, "DGN score threshold");
    cmd->add_option("--dgn-min-dsi", flags.thresholds.dgn_min_dsi, "DGN dsi threshold");
    if (required) assoc->required();
}

Graph load_graph(const DataFlags& flags) {
    LoadOptions options;
    options.drop_self_edges = flags.drop_self_edges;
    return Graph::load_edge_list(flags.graph_path, options);
}

std::vector<SeedSet> load_seed_sets(const DataFlags& flags, const Graph& g) {
    const auto source = parse_source(flags.source);
    const auto records = parse_association_tsv(flags.assoc_path);
    auto filtered = filter_associations(records, *source, flags.thresholds);
    if (filtered.dropped_missing_dsi > 0) {
        std::cerr << "warning: " << filtered.dropped_missing_dsi
                  << " DGN records lacked a dsi value and were rejected\n";
    }
    return build_seed_sets(filtered.kept, g, flags.min_coverage);
}

ordered_json data_config_json(const DataFlags& flags, bool with_assoc) {
    ordered_json j;
    j["graph"] = flags.graph_path;
    j["drop_self_edges"] = flags.drop_self_edges;
    if (with_assoc) {
        j["assoc"] = flags.assoc_path;
        j["source"] = flags.source;
        j["min_coverage"] = flags.min_coverage;
        j["ot_min_score"] = flags.thresholds.ot_min_score;
        j["dgn_min_score"] = flags.thresholds.dgn_min_score;
        j["dgn_min_dsi"] = flags.thresholds.dgn_min_dsi;
    }
    return j;
}

int resolve_threads(int threads) {
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void setup_stats(CLI::App& app) {
    auto flags = std::make_shared<DataFlags>();
    auto with_summary = std::make_shared<bool>(false);
    auto* cmd = app.add_subcommand("stats", "network summary statistics");
    add_graph_flags(cmd, *flags);
    cmd->add_flag("--summary", *with_summary, "include the load summary");
    cmd->callback([flags, with_summary]() {
        const Graph g = load_graph(*flags);
        const GraphStats stats = compute_stats(g);
        const auto config = data_config_json(*flags, false);
        std::cout << stats_to_json(stats, *with_summary ? &g.load_summary() : nullptr,
                                   config.dump());
    });
}

void setup_ingest(CLI::App& app) {
    auto flags = std::make_shared<DataFlags>();
    auto out_path = std::make_shared<std::string>();
    auto* cmd = app.add_subcommand("ingest", "filter associations and resolve seed sets");
    add_graph_flags(cmd, *flags);
    add_assoc_flags(cmd, *flags, true);
    cmd->add_option("--out", *out_path, "seed-set JSON output path")->required();
    cmd->callback([flags, out_path]() {
        const Graph g = load_graph(*flags);
        const auto sets = load_seed_sets(*flags, g);
        write_file(*out_path, seed_sets_to_json(sets, g));
        auto config = data_config_json(*flags, true);
        config["out"] = *out_path;
        write_file(*out_path + ".config.json", config.dump(2) + "\n");
        std::cout << "admitted diseases: " << sets.size() << "\n";
    });
}

struct MethodFlags {
    std::string methods = "QA";
    double qa_t = 0.11;
    double qa_alpha = 5.0;
    double dk_t = 0.3;
    double restart = 0.4;
    int dia_weight = 9;
    double tol = 1e-9;
};

void add_method_flags(CLI::App* cmd, MethodFlags& flags, const char* methods_help) {
    cmd->add_option("--methods", flags.methods, methods_help);
    cmd->add_option("--t", flags.qa_t, "QA evolution time")->check(CLI::NonNegativeNumber);
    cmd->add_option("--alpha", flags.qa_alpha, "QA seed self-loop weight")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--dk-t", flags.dk_t, "DK diffusion time")->check(CLI::NonNegativeNumber);
    cmd->add_option("--restart", flags.restart, "RWR restart probability")
        ->check(CLI::Range(1e-9, 1.0 - 1e-9));
    cmd->add_option("--dia-weight", flags.dia_weight, "DIAMOnD seed weight")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--tol", flags.tol, "exponential-action tolerance")
        ->check(CLI::Range(1e-15, 1e-3));
}

MethodConfig make_method_config(const MethodFlags& flags, Method method) {
    MethodConfig config;
    config.method = method;
    config.qa.t = flags.qa_t;
    config.qa.alpha = flags.qa_alpha;
    config.qa.tolerance = flags.tol;
    config.dk_t = flags.dk_t;
    config.rwr.restart = flags.restart;
    config.dia_seed_weight = flags.dia_weight;
    config.tol = flags.tol;
    return config;
}

ordered_json method_config_json(const MethodFlags& flags) {
    ordered_json j;
    j["methods"] = flags.methods;
    j["t"] = flags.qa_t;
    j["alpha"] = flags.qa_alpha;
    j["dk_t"] = flags.dk_t;
    j["restart"] = flags.restart;
    j["dia_weight"] = flags.dia_weight;
    j["tol"] = flags.tol;
    return j;
}

std::vector<Method> parse_method_list(const std::string& text) {
    std::vector<Method> methods;
    for (const auto& name : split_csv(text)) {
        const auto m = parse_method(name);
        if (!m) {
            throw CLI::ValidationError("--methods",
                                       "unknown method '" + name + "' (valid: QA, DK, RWR, DIA, NBR)");
        }
        methods.push_back(*m);
    }
    if (methods.empty()) throw CLI::ValidationError("--methods", "empty method list");
    return methods;
}

SeedSet resolve_single_seed_set(const DataFlags& flags, const std::string& seeds_csv,
                                const std::string& disease, const Graph& g) {
    SeedSet set;
    if (!seeds_csv.empty()) {
        set = make_seed_set(disease.empty() ? "adhoc" : disease, split_csv(seeds_csv), g);
    } else {
        if (flags.assoc_path.empty() || disease.empty()) {
            throw CLI::RequiredError("--seeds or (--assoc and --disease)");
        }
        for (auto& candidate : load_seed_sets(flags, g)) {
            if (candidate.disease_id == disease) {
                set = std::move(candidate);
                break;
            }
        }
        if (set.disease_id.empty()) {
            throw DataError("disease '" + disease + "' not present after filtering");
        }
    }
    const std::size_t total = set.seed_indices.size() + set.unmapped.size();
    if (total == 0) throw DataError("no seed genes supplied");
    if (set.seed_indices.empty() ||
        static_cast<double>(set.unmapped.size()) > 0.9 * static_cast<double>(total)) {
        throw DataError("more than 90% of seed genes are missing from the graph "
                        "(likely an identifier mismatch)");
    }
    return set;
}

void setup_score(CLI::App& app) {
    auto flags = std::make_shared<DataFlags>();
    auto method_flags = std::make_shared<MethodFlags>();
    auto seeds_csv = std::make_shared<std::string>();
    auto disease = std::make_shared<std::string>();
    auto out_path = std::make_shared<std::string>();
    auto n_rank = std::make_shared<int>(300);
    auto* cmd = app.add_subcommand("score", "rank genes for one disease with one method");
    add_graph_flags(cmd, *flags);
    add_assoc_flags(cmd, *flags, false);
    add_method_flags(cmd, *method_flags, "method: QA, DK, RWR, DIA or NBR");
    cmd->add_option("--seeds", *seeds_csv, "comma-separated seed gene labels");
    cmd->add_option("--disease", *disease, "disease id to pull from --assoc");
    cmd->add_option("--n-rank", *n_rank, "DIAMOnD module size")->check(CLI::PositiveNumber);
    cmd->add_option("--out", *out_path, "ranked TSV output path")->required();
    cmd->callback([flags, method_flags, seeds_csv, disease, out_path, n_rank]() {
        const auto methods = parse_method_list(method_flags->methods);
        if (methods.size() != 1) {
            throw CLI::ValidationError("--methods", "score expects exactly one method");
        }
        const Graph g = load_graph(*flags);
        const SeedSet seeds = resolve_single_seed_set(*flags, *seeds_csv, *disease, g);
        const ScoreVector scores =
            score_with(g, seeds, make_method_config(*method_flags, methods[0]), *n_rank);
        write_file(*out_path, score_tsv(g, scores, seeds));

        auto config = data_config_json(*flags, !flags->assoc_path.empty());
        auto method_json = method_config_json(*method_flags);
        for (auto& [key, value] : method_json.items()) config[key] = value;
        config["seeds"] = *seeds_csv;
        config["disease"] = *disease;
        config["n_rank"] = *n_rank;
        config["out"] = *out_path;
        write_file(*out_path + ".config.json", config.dump(2) + "\n");
    });
}

void setup_crossval(CLI::App& app) {
    auto flags = std::make_shared<DataFlags>();
    auto method_flags = std::make_shared<MethodFlags>();
    method_flags->methods = "QA,DK,RWR,DIA,NBR";
    auto trials = std::make_shared<int>(10);
    auto n_max = std::make_shared<int>(300);
    auto rng_seed = std::make_shared<std::uint64_t>(0);
    auto threads = std::make_shared<int>(0);
    auto outdir = std::make_shared<std::string>();
    auto* cmd = app.add_subcommand("crossval", "repeated 50% holdout benchmark");
    add_graph_flags(cmd, *flags);
    add_assoc_flags(cmd, *flags, true);
    add_method_flags(cmd, *method_flags, "comma-separated method list");
    cmd->add_option("--trials", *trials, "holdout repetitions per disease")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--nmax", *n_max, "largest ranking threshold")->check(CLI::PositiveNumber);
    cmd->add_option("--rng-seed", *rng_seed, "master random seed")->required();
    cmd->add_option("--threads", *threads, "worker threads (default: hardware)");
    cmd->add_option("--outdir", *outdir, "report directory")->required();
    cmd->callback([flags, method_flags, trials, n_max, rng_seed, threads, outdir]() {
        const int used_threads = resolve_threads(*threads);
        const Graph g = load_graph(*flags);
        const auto seed_sets = load_seed_sets(*flags, g);
        if (seed_sets.empty()) throw DataError("no disease passed the coverage filter");

        std::vector<MethodConfig> methods;
        for (const Method m : parse_method_list(method_flags->methods)) {
            methods.push_back(make_method_config(*method_flags, m));
        }
        BenchmarkConfig config;
        config.trials = *trials;
        config.n_max = *n_max;
        config.rng_seed = *rng_seed;

        const EvalReport report = run_benchmark(g, seed_sets, methods, config);
        const EvalExport files = export_report(report);
        std::filesystem::create_directories(*outdir);
        write_file(*outdir + "/cells.tsv", files.cells_tsv);
        write_file(*outdir + "/curves.tsv", files.curves_tsv);
        write_file(*outdir + "/mrr.json", files.mrr_json);

        auto sidecar = data_config_json(*flags, true);
        auto method_json = method_config_json(*method_flags);
        for (auto& [key, value] : method_json.items()) sidecar[key] = value;
        sidecar["trials"] = *trials;
        sidecar["nmax"] = *n_max;
        sidecar["rng_seed"] = *rng_seed;
        sidecar["threads"] = used_threads;
        sidecar["outdir"] = *outdir;
        write_file(*outdir + "/config.json", sidecar.dump(2) + "\n");

        std::size_t failed = 0;
        for (const auto& cell : report.cells) {
            if (!cell.ok) ++failed;
        }
        std::cout << "diseases: " << report.diseases.size() << ", cells: " << report.cells.size()
                  << ", failed: " << failed << "\n";
    });
}

void setup_mdt(CLI::App& app) {
    auto flags = std::make_shared<DataFlags>();
    auto alphas_text = std::make_shared<std::string>("0,5,20,100");
    auto times_text = std::make_shared<std::string>("0:1:50");
    auto ranges_text = std::make_shared<std::string>();
    auto start_label = std::make_shared<std::string>();
    auto disease = std::make_shared<std::string>();
    auto samples = std::make_shared<int>(50);
    auto rng_seed = std::make_shared<std::uint64_t>(0);
    auto tol = std::make_shared<double>(1e-9);
    auto out_path = std::make_shared<std::string>();
    auto* cmd = app.add_subcommand("mdt", "mean distance travelled under seed self-loops");
    add_graph_flags(cmd, *flags);
    add_assoc_flags(cmd, *flags, false);
    cmd->add_option("--alphas", *alphas_text, "comma-separated alpha settings");
    cmd->add_option("--times", *times_text, "time grid start:end:count");
    cmd->add_option("--degree-ranges", *ranges_text,
                    "lo:hi degree strata for sampled single-seed curves");
    cmd->add_option("--samples", *samples, "sources sampled per degree range")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--rng-seed", *rng_seed, "sampling seed for --degree-ranges");
    cmd->add_option("--start", *start_label, "single start gene (alpha applied at the source)");
    cmd->add_option("--disease", *disease, "disease id from --assoc (full-seed Hamiltonian)");
    cmd->add_option("--tol", *tol, "exponential-action tolerance")->check(CLI::Range(1e-15, 1e-3));
    cmd->add_option("--out", *out_path, "curve TSV output path")->required();
    cmd->callback([flags, alphas_text, times_text, ranges_text, start_label, disease, samples,
                   rng_seed, tol, out_path]() {
        const auto alphas = parse_double_list(*alphas_text, "--alphas");
        const auto times = parse_time_grid(*times_text);
        const int modes = (!ranges_text->empty() ? 1 : 0) + (!start_label->empty() ? 1 : 0) +
                          (!disease->empty() ? 1 : 0);
        if (modes != 1) {
            throw CLI::ValidationError(
                "mdt", "choose exactly one of --degree-ranges, --start or --disease");
        }
        const Graph g = load_graph(*flags);

        std::vector<MdtCurve> curves;
        if (!ranges_text->empty()) {
            const auto ranges = parse_degree_ranges(*ranges_text);
            curves = degree_stratified_mdt(g, ranges, alphas, times, *samples, *rng_seed, *tol);
            if (curves.size() != ranges.size() * alphas.size()) {
                std::cerr << "warning: some degree ranges held no nodes and were skipped\n";
            }
        } else if (!start_label->empty()) {
            const auto source = g.index_of(*start_label);
            if (!source) throw DataError("start gene '" + *start_label + "' not in the graph");
            for (const double alpha : alphas) {
                SeedSet single;
                single.disease_id = *start_label;
                single.seed_indices = {*source};
                curves.push_back(mean_distance_travelled(g, *source, single, alpha, times, *tol));
            }
        } else {
            const SeedSet seeds = resolve_single_seed_set(*flags, "", *disease, g);
            for (const double alpha : alphas) {
                curves.push_back(disease_mdt(g, seeds, alpha, times, *tol));
            }
        }
        write_file(*out_path, mdt_tsv(curves));

        auto config = data_config_json(*flags, !flags->assoc_path.empty());
        config["alphas"] = *alphas_text;
        config["times"] = *times_text;
        config["degree_ranges"] = *ranges_text;
        config["start"] = *start_label;
        config["disease"] = *disease;
        config["samples"] = *samples;
        config["rng_seed"] = *rng_seed;
        config["tol"] = *tol;
        config["out"] = *out_path;
        write_file(*out_path + ".config.json", config.dump(2) + "\n");
    });
}

void setup_enrich(CLI::App& app) {
    auto counts = std::make_shared<std::vector<std::int64_t>>();
    auto* cmd = app.add_subcommand("enrich", "hypergeometric enrichment p-value");
    cmd->add_option("counts", *counts, "universe module_size selection_size overlap")
        ->expected(4)
        ->required();
    cmd->callback([counts]() {
        const auto& c = *counts;
        const double p = enrichment_pvalue(c[0], c[1], c[2], c[3]);
        ordered_json j;
        j["universe"] = c[0];
        j["module"] = c[1];
        j["selection"] = c[2];
        j["overlap"] = c[3];
        j["p_value"] = p;
        std::cout << j.dump(2) << "\n";
    });
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"disease gene prioritization with continuous-time quantum walks"};
    app.require_subcommand(1);
    setup_stats(app);
    setup_ingest(app);
    setup_score(app);
    setup_crossval(app);
    setup_mdt(app);
    setup_enrich(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const qwalk::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const qwalk::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
