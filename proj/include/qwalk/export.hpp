#pragma once

#include <span>
#include <string>
#include <vector>

#include "qwalk/evaluation.hpp"
#include "qwalk/graph.hpp"
#include "qwalk/graph_stats.hpp"
#include "qwalk/ingest.hpp"
#include "qwalk/score_vector.hpp"
#include "qwalk/walk_analysis.hpp"

namespace qwalk {

// Shortest round-trip decimal form (std::to_chars); locale-free and stable,
// so identical runs produce byte-identical files.
std::string format_double(double value);

std::string stats_to_json(const GraphStats& stats, const LoadSummary* summary = nullptr,
                          const std::string& config_json = {});
std::string seed_sets_to_json(std::span<const SeedSet> sets, const Graph& g);

// Ranked (gene, score) TSV, seeds excluded from the body and listed in the
// leading '# {...}' metadata line together with the resolved parameters and
// the graph checksum.
std::string score_tsv(const Graph& g, const ScoreVector& scores, const SeedSet& seeds);

struct EvalExport {
    std::string cells_tsv;   // per (disease, method, trial) recalls
    std::string curves_tsv;  // mean recall per (N, method)
    std::string mrr_json;    // MRR tables at the headline thresholds
};

EvalExport export_report(const EvalReport& report);

std::string mdt_tsv(std::span<const MdtCurve> curves);

void write_file(const std::string& path, const std::string& content);

} // namespace qwalk
