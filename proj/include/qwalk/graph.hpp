#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace qwalk {

struct LoadOptions {
    bool drop_self_edges = false; // self-interacting proteins are kept by default
};

struct LoadSummary {
    std::size_t lines_total = 0;
    std::size_t comment_lines = 0;
    std::size_t blank_lines = 0;
    std::size_t duplicate_edges = 0;
    std::size_t self_edges_dropped = 0;
};

// Immutable undirected PPI network. Gene identifiers are opaque case-sensitive
// strings mapped to dense indices 0..n-1 in first-appearance order. Adjacency
// is CSR with sorted neighbour lists and 0/1 entries; a self-edge stores one
// diagonal entry and contributes 1 to its node's degree, so degree(i) equals
// the row count of A. Instances are safe for concurrent reads.
class Graph {
public:
    // Edge-list file: UTF-8 text, two whitespace-separated identifiers per
    // line, '#'-prefixed comment lines and blank lines skipped. Duplicate
    // edges (in either orientation) are dropped and counted.
    static Graph load_edge_list(const std::string& path, const LoadOptions& options = {});
    static Graph from_edges(const std::vector<std::pair<std::string, std::string>>& edges,
                            const LoadOptions& options = {});

    int n() const { return static_cast<int>(labels_.size()); }
    std::size_t edge_count() const { return m_; } // self-edges counted once
    std::size_t self_edge_count() const { return self_edges_; }

    const std::string& label(int v) const { return labels_[static_cast<std::size_t>(v)]; }
    const std::vector<std::string>& labels() const { return labels_; }
    std::optional<int> index_of(std::string_view label) const;

    std::span<const int> neighbors(int v) const {
        return {cols_.data() + offsets_[static_cast<std::size_t>(v)],
                cols_.data() + offsets_[static_cast<std::size_t>(v) + 1]};
    }
    int degree(int v) const { return degrees_[static_cast<std::size_t>(v)]; }
    const std::vector<int>& degrees() const { return degrees_; }
    bool has_edge(int u, int v) const;
    bool has_self_edge(int v) const { return has_edge(v, v); }

    const LoadSummary& load_summary() const { return summary_; }

    // FNV-1a over node labels and the CSR structure; identifies the exact
    // loaded graph (including label order) for provenance metadata.
    std::uint64_t checksum() const;

private:
    static Graph assemble(std::vector<std::string> labels,
                          std::unordered_map<std::string, int> index,
                          std::vector<std::pair<int, int>> edges, std::size_t self_edges,
                          LoadSummary summary);

    std::vector<std::string> labels_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::int64_t> offsets_;
    std::vector<int> cols_;
    std::vector<int> degrees_;
    std::size_t m_ = 0;
    std::size_t self_edges_ = 0;
    LoadSummary summary_;
};

// Unweighted shortest-path lengths from source; unreachable nodes get -1.
std::vector<int> bfs_distances(const Graph& g, int source);

} // namespace qwalk
