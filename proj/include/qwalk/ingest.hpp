#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qwalk/graph.hpp"

namespace qwalk {

enum class AssociationSource { OT, DGN, RAW };

std::string_view source_name(AssociationSource source);
std::optional<AssociationSource> parse_source(std::string_view name);

struct AssociationRecord {
    std::string disease_id;
    std::string gene;
    double score = 0.0;
    std::optional<double> dsi; // DisGeNET disease specificity index
};

// Per-source score filters with their published defaults; all overridable.
struct FilterThresholds {
    double ot_min_score = 0.6;
    double dgn_min_score = 0.3;
    double dgn_min_dsi = 0.5;
};

struct FilterOutcome {
    std::vector<AssociationRecord> kept;
    std::size_t dropped_by_score = 0;
    std::size_t dropped_by_dsi = 0;
    std::size_t dropped_missing_dsi = 0; // DGN records without a dsi value
};

// A disease's curated gene set resolved against a Graph.
struct SeedSet {
    std::string disease_id;
    std::vector<int> seed_indices;      // sorted, unique
    std::vector<std::string> unmapped;  // genes absent from the graph
};

// TSV with a header line naming at least disease_id, gene, score; a dsi
// column is optional. A gene listed multiple times for one disease keeps the
// highest score (ties keep the higher dsi).
std::vector<AssociationRecord> parse_association_tsv(const std::string& path);

FilterOutcome filter_associations(std::vector<AssociationRecord> records, AssociationSource source,
                                  const FilterThresholds& thresholds = {});

// Groups records by disease, resolves genes against g, and keeps diseases
// with at least min_coverage mapped seeds. Output is ordered by disease id.
std::vector<SeedSet> build_seed_sets(const std::vector<AssociationRecord>& records, const Graph& g,
                                     int min_coverage = 15);

// Resolves an explicit gene list (CLI --seeds) against g.
SeedSet make_seed_set(std::string disease_id, const std::vector<std::string>& genes, const Graph& g);

} // namespace qwalk
