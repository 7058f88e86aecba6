#include "qwalk/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "qwalk/errors.hpp"

namespace qwalk {

std::string_view source_name(AssociationSource source) {
    switch (source) {
        case AssociationSource::OT: return "OT";
        case AssociationSource::DGN: return "DGN";
        case AssociationSource::RAW: return "RAW";
    }
    return "?";
}

std::optional<AssociationSource> parse_source(std::string_view name) {
    if (name == "OT") return AssociationSource::OT;
    if (name == "DGN") return AssociationSource::DGN;
    if (name == "RAW") return AssociationSource::RAW;
    return std::nullopt;
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
    return out;
}

double parse_unit_interval(const std::string& field, const std::string& what,
                           const std::string& where) {
    double value = 0.0;
    const auto* begin = field.data();
    const auto* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        throw DataError(where + ": cannot parse " + what + " value '" + field + "'");
    }
    if (!(value >= 0.0 && value <= 1.0)) {
        throw DataError(where + ": " + what + " value " + field + " outside [0, 1]");
    }
    return value;
}

} // namespace

std::vector<AssociationRecord> parse_association_tsv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open association file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw DataError(path + ": missing header line");

    const auto header = split_tabs(line);
    int col_disease = -1, col_gene = -1, col_score = -1, col_dsi = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "disease_id") col_disease = static_cast<int>(i);
        else if (header[i] == "gene") col_gene = static_cast<int>(i);
        else if (header[i] == "score") col_score = static_cast<int>(i);
        else if (header[i] == "dsi") col_dsi = static_cast<int>(i);
    }
    if (col_disease < 0 || col_gene < 0 || col_score < 0) {
        throw DataError(path + ": header must name disease_id, gene and score columns");
    }

    // One record per (disease, gene): best score wins, then best dsi.
    std::map<std::pair<std::string, std::string>, AssociationRecord> best;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        const auto fields = split_tabs(line);
        const std::string where = path + ":" + std::to_string(line_no);
        const auto need = static_cast<std::size_t>(std::max(col_disease, std::max(col_gene, col_score)));
        if (fields.size() <= need) throw DataError(where + ": too few columns");

        AssociationRecord rec;
        rec.disease_id = fields[static_cast<std::size_t>(col_disease)];
        rec.gene = fields[static_cast<std::size_t>(col_gene)];
        if (rec.disease_id.empty() || rec.gene.empty()) {
            throw DataError(where + ": empty disease_id or gene");
        }
        rec.score = parse_unit_interval(fields[static_cast<std::size_t>(col_score)], "score", where);
        if (col_dsi >= 0 && static_cast<std::size_t>(col_dsi) < fields.size() &&
            !fields[static_cast<std::size_t>(col_dsi)].empty()) {
            rec.dsi = parse_unit_interval(fields[static_cast<std::size_t>(col_dsi)], "dsi", where);
        }

        auto key = std::make_pair(rec.disease_id, rec.gene);
        auto it = best.find(key);
        if (it == best.end()) {
            best.emplace(std::move(key), std::move(rec));
        } else if (rec.score > it->second.score ||
                   (rec.score == it->second.score &&
                    rec.dsi.value_or(-1.0) > it->second.dsi.value_or(-1.0))) {
            it->second = std::move(rec);
        }
    }

    std::vector<AssociationRecord> records;
    records.reserve(best.size());
    for (auto& [key, rec] : best) records.push_back(std::move(rec));
    return records;
}

FilterOutcome filter_associations(std::vector<AssociationRecord> records, AssociationSource source,
                                  const FilterThresholds& thresholds) {
    FilterOutcome out;
    out.kept.reserve(records.size());
    for (auto& rec : records) {
        switch (source) {
            case AssociationSource::RAW:
                out.kept.push_back(std::move(rec));
                break;
            case AssociationSource::OT:
                if (rec.score >= thresholds.ot_min_score) out.kept.push_back(std::move(rec));
                else ++out.dropped_by_score;
                break;
            case AssociationSource::DGN:
                if (rec.score < thresholds.dgn_min_score) {
                    ++out.dropped_by_score;
                } else if (!rec.dsi.has_value()) {
                    ++out.dropped_missing_dsi;
                } else if (*rec.dsi < thresholds.dgn_min_dsi) {
                    ++out.dropped_by_dsi;
                } else {
                    out.kept.push_back(std::move(rec));
                }
                break;
        }
    }
    return out;
}

std::vector<SeedSet> build_seed_sets(const std::vector<AssociationRecord>& records, const Graph& g,
                                     int min_coverage) {
    std::map<std::string, SeedSet> by_disease;
    for (const auto& rec : records) {
        auto& set = by_disease[rec.disease_id];
        set.disease_id = rec.disease_id;
        if (auto idx = g.index_of(rec.gene)) {
            set.seed_indices.push_back(*idx);
        } else {
            set.unmapped.push_back(rec.gene);
        }
    }

    std::vector<SeedSet> out;
    for (auto& [id, set] : by_disease) {
        std::sort(set.seed_indices.begin(), set.seed_indices.end());
        set.seed_indices.erase(std::unique(set.seed_indices.begin(), set.seed_indices.end()),
                               set.seed_indices.end());
        std::sort(set.unmapped.begin(), set.unmapped.end());
        if (static_cast<int>(set.seed_indices.size()) >= min_coverage) {
            out.push_back(std::move(set));
        }
    }
    return out;
}

SeedSet make_seed_set(std::string disease_id, const std::vector<std::string>& genes, const Graph& g) {
    SeedSet set;
    set.disease_id = std::move(disease_id);
    for (const auto& gene : genes) {
        if (auto idx = g.index_of(gene)) set.seed_indices.push_back(*idx);
        else set.unmapped.push_back(gene);
    }
    std::sort(set.seed_indices.begin(), set.seed_indices.end());
    set.seed_indices.erase(std::unique(set.seed_indices.begin(), set.seed_indices.end()),
                           set.seed_indices.end());
    return set;
}

} // namespace qwalk
