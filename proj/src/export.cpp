#include "qwalk/export.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "qwalk/errors.hpp"

namespace qwalk {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    (void)ec;
    return std::string(buf, ptr);
}

std::string stats_to_json(const GraphStats& stats, const LoadSummary* summary,
                          const std::string& config_json) {
    ordered_json j;
    j["n_nodes"] = stats.n_nodes;
    j["n_edges"] = stats.n_edges;
    j["n_self_edges"] = stats.n_self_edges;
    j["avg_degree"] = stats.avg_degree;
    j["density"] = stats.density;
    j["avg_clustering"] = stats.avg_clustering;
    if (std::isnan(stats.assortativity)) j["assortativity"] = nullptr;
    else j["assortativity"] = stats.assortativity;
    if (summary != nullptr) {
        j["load_summary"] = {{"lines_total", summary->lines_total},
                             {"comment_lines", summary->comment_lines},
                             {"blank_lines", summary->blank_lines},
                             {"duplicate_edges", summary->duplicate_edges},
                             {"self_edges_dropped", summary->self_edges_dropped}};
    }
    if (!config_json.empty()) j["config"] = ordered_json::parse(config_json);
    return j.dump(2) + "\n";
}

std::string seed_sets_to_json(std::span<const SeedSet> sets, const Graph& g) {
    ordered_json arr = ordered_json::array();
    for (const auto& set : sets) {
        ordered_json item;
        item["disease_id"] = set.disease_id;
        ordered_json seeds = ordered_json::array();
        for (int idx : set.seed_indices) seeds.push_back(g.label(idx));
        item["seeds"] = std::move(seeds);
        item["unmapped"] = set.unmapped;
        arr.push_back(std::move(item));
    }
    return arr.dump(2) + "\n";
}

std::string score_tsv(const Graph& g, const ScoreVector& scores, const SeedSet& seeds) {
    ordered_json meta;
    meta["method"] = std::string(method_name(scores.method));
    for (const auto& [key, value] : scores.params) meta[key] = value;
    char checksum[32];
    std::snprintf(checksum, sizeof checksum, "%016llx",
                  static_cast<unsigned long long>(g.checksum()));
    meta["graph_checksum"] = checksum;
    ordered_json seed_labels = ordered_json::array();
    for (int s : seeds.seed_indices) seed_labels.push_back(g.label(s));
    meta["seeds"] = std::move(seed_labels);
    meta["unmapped"] = seeds.unmapped;

    std::vector<std::uint8_t> is_seed(scores.scores.size(), 0);
    for (int s : seeds.seed_indices) is_seed[static_cast<std::size_t>(s)] = 1;
    std::vector<int> order;
    order.reserve(scores.scores.size());
    for (int v = 0; v < g.n(); ++v) {
        if (!is_seed[static_cast<std::size_t>(v)]) order.push_back(v);
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const double sa = scores.scores[static_cast<std::size_t>(a)];
        const double sb = scores.scores[static_cast<std::size_t>(b)];
        if (sa != sb) return sa > sb;
        return g.label(a) < g.label(b);
    });

    std::string out = "# " + meta.dump() + "\n";
    out += "gene\tscore\n";
    for (int v : order) {
        out += g.label(v);
        out += '\t';
        out += format_double(scores.scores[static_cast<std::size_t>(v)]);
        out += '\n';
    }
    return out;
}

EvalExport export_report(const EvalReport& report) {
    EvalExport files;

    // Headline thresholds: the published 25 plus the configured maximum.
    std::vector<int> headline = {std::min(25, report.config.n_max), report.config.n_max};
    if (headline[0] == headline[1]) headline.pop_back();

    std::string& cells = files.cells_tsv;
    cells = "disease\tmethod\ttrial\tn_train\tn_held";
    for (int n : headline) cells += "\trecall_at_" + std::to_string(n);
    cells += "\tstatus\n";
    for (const auto& cell : report.cells) {
        cells += cell.disease_id;
        cells += '\t';
        cells += std::string(method_name(cell.method));
        cells += '\t';
        cells += std::to_string(cell.trial);
        cells += '\t';
        cells += std::to_string(cell.n_train);
        cells += '\t';
        cells += std::to_string(cell.n_held);
        for (int n : headline) {
            cells += '\t';
            if (cell.ok) {
                cells += format_double(
                    recall_from_hit_ranks(cell.hit_ranks, static_cast<std::size_t>(cell.n_held), n));
            } else {
                cells += '-';
            }
        }
        cells += cell.ok ? "\tok\n" : "\tfailed\n";
    }

    std::string& curves = files.curves_tsv;
    curves = "n\tmethod\tmean_recall\n";
    for (const auto method : report.methods) {
        const auto curve = report.mean_curve(method);
        for (std::size_t i = 0; i < curve.size(); ++i) {
            curves += std::to_string(i + 1);
            curves += '\t';
            curves += std::string(method_name(method));
            curves += '\t';
            curves += format_double(curve[i]);
            curves += '\n';
        }
    }

    ordered_json j;
    j["trials"] = report.config.trials;
    j["n_max"] = report.config.n_max;
    j["rng_seed"] = report.config.rng_seed;
    j["mrr_tie_policy"] = "average_rank";
    j["diseases"] = report.diseases;
    j["leakage_checks"] = report.leakage_checks;
    for (const int n : headline) {
        const auto mrr = report.mrr_at(n);
        ordered_json table;
        for (std::size_t m = 0; m < report.methods.size(); ++m) {
            table[std::string(method_name(report.methods[m]))] = mrr[m];
        }
        j["mrr_at_" + std::to_string(n)] = std::move(table);
        ordered_json recalls;
        for (const auto method : report.methods) {
            recalls[std::string(method_name(method))] = report.mean_recall(method, n);
        }
        j["mean_recall_at_" + std::to_string(n)] = std::move(recalls);
    }
    ordered_json failures = ordered_json::array();
    for (const auto& cell : report.cells) {
        if (cell.ok) continue;
        failures.push_back({{"disease", cell.disease_id},
                            {"method", std::string(method_name(cell.method))},
                            {"trial", cell.trial},
                            {"error", cell.error}});
    }
    j["failures"] = std::move(failures);
    files.mrr_json = j.dump(2) + "\n";

    return files;
}

std::string mdt_tsv(std::span<const MdtCurve> curves) {
    std::string out = "t\tvalue\texcluded_mass\tcontext\talpha\n";
    for (const auto& curve : curves) {
        for (std::size_t i = 0; i < curve.times.size(); ++i) {
            out += format_double(curve.times[i]);
            out += '\t';
            out += format_double(curve.values[i]);
            out += '\t';
            out += format_double(curve.excluded_mass[i]);
            out += '\t';
            out += curve.context;
            out += '\t';
            out += format_double(curve.alpha);
            out += '\n';
        }
    }
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open output file: " + path);
    out << content;
    if (!out) throw DataError("failed writing output file: " + path);
}

} // namespace qwalk
