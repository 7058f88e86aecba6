#include "qwalk/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

struct EdgeAccumulator {
    std::vector<std::string> labels;
    std::unordered_map<std::string, int> index;
    std::unordered_set<std::uint64_t> seen;
    std::vector<std::pair<int, int>> edges; // stored with u <= v
    LoadSummary summary;
    std::size_t self_edges = 0;

    int intern(const std::string& label) {
        auto it = index.find(label);
        if (it != index.end()) return it->second;
        const int id = static_cast<int>(labels.size());
        labels.push_back(label);
        index.emplace(label, id);
        return id;
    }

    void add(const std::string& a, const std::string& b, bool drop_self) {
        int u = intern(a);
        int v = intern(b);
        if (u > v) std::swap(u, v);
        if (u == v && drop_self) {
            ++summary.self_edges_dropped;
            return;
        }
        const std::uint64_t key =
            (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint64_t>(v);
        if (!seen.insert(key).second) {
            ++summary.duplicate_edges;
            return;
        }
        if (u == v) ++self_edges;
        edges.emplace_back(u, v);
    }
};

} // namespace

Graph Graph::assemble(std::vector<std::string> labels, std::unordered_map<std::string, int> index,
                      std::vector<std::pair<int, int>> edges, std::size_t self_edges,
                      LoadSummary summary) {
    if (labels.empty()) throw DataError("empty graph: no edges or nodes found");

    Graph g;
    const std::size_t n = labels.size();
    g.labels_ = std::move(labels);
    g.index_ = std::move(index);
    g.m_ = edges.size();
    g.self_edges_ = self_edges;
    g.summary_ = summary;

    std::vector<int> counts(n, 0);
    for (const auto& [u, v] : edges) {
        ++counts[static_cast<std::size_t>(u)];
        if (u != v) ++counts[static_cast<std::size_t>(v)];
    }
    g.offsets_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + counts[i];
    g.cols_.resize(static_cast<std::size_t>(g.offsets_[n]));

    std::vector<std::int64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& [u, v] : edges) {
        g.cols_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(u)]++)] = v;
        if (u != v) g.cols_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(v)]++)] = u;
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::sort(g.cols_.begin() + g.offsets_[i], g.cols_.begin() + g.offsets_[i + 1]);
    }
    g.degrees_.assign(counts.begin(), counts.end());
    return g;
}

Graph Graph::load_edge_list(const std::string& path, const LoadOptions& options) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open edge list: " + path);

    EdgeAccumulator acc;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        ++acc.summary.lines_total;
        std::istringstream fields(line);
        std::string a, b, extra;
        if (!(fields >> a)) {
            ++acc.summary.blank_lines;
            continue;
        }
        if (a.front() == '#') {
            ++acc.summary.comment_lines;
            continue;
        }
        if (!(fields >> b) || (fields >> extra)) {
            throw DataError(path + ":" + std::to_string(line_no) +
                            ": expected exactly two identifiers per line");
        }
        acc.add(a, b, options.drop_self_edges);
    }
    return assemble(std::move(acc.labels), std::move(acc.index), std::move(acc.edges),
                    acc.self_edges, acc.summary);
}

Graph Graph::from_edges(const std::vector<std::pair<std::string, std::string>>& edges,
                        const LoadOptions& options) {
    EdgeAccumulator acc;
    acc.summary.lines_total = edges.size();
    for (const auto& [a, b] : edges) acc.add(a, b, options.drop_self_edges);
    return assemble(std::move(acc.labels), std::move(acc.index), std::move(acc.edges),
                    acc.self_edges, acc.summary);
}

std::optional<int> Graph::index_of(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

bool Graph::has_edge(int u, int v) const {
    const auto nbrs = neighbors(u);
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::uint64_t Graph::checksum() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto absorb = [&h](const void* data, std::size_t len) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            h ^= p[i];
            h *= 0x100000001b3ULL;
        }
    };
    const std::uint64_t n = labels_.size();
    absorb(&n, sizeof n);
    for (const auto& s : labels_) {
        const std::uint64_t len = s.size();
        absorb(&len, sizeof len);
        absorb(s.data(), s.size());
    }
    absorb(offsets_.data(), offsets_.size() * sizeof(offsets_[0]));
    absorb(cols_.data(), cols_.size() * sizeof(cols_[0]));
    return h;
}

std::vector<int> bfs_distances(const Graph& g, int source) {
    if (source < 0 || source >= g.n()) {
        throw std::out_of_range("bfs_distances: source index " + std::to_string(source) +
                                " outside [0, " + std::to_string(g.n()) + ")");
    }
    std::vector<int> dist(static_cast<std::size_t>(g.n()), -1);
    std::vector<int> queue;
    queue.reserve(static_cast<std::size_t>(g.n()));
    dist[static_cast<std::size_t>(source)] = 0;
    queue.push_back(source);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int u = queue[head];
        for (int v : g.neighbors(u)) {
            if (dist[static_cast<std::size_t>(v)] < 0) {
                dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

} // namespace qwalk
