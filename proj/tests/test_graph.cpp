#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <unistd.h>

#include "qwalk/errors.hpp"
#include "qwalk/graph.hpp"
#include "qwalk/graph_stats.hpp"
#include "qwalk/rng.hpp"
#include "synthetic.hpp"

using namespace qwalk;
namespace ts = qwalk::testsupport;

namespace {

Graph triangle() {
    return Graph::from_edges({{"a", "b"}, {"b", "c"}, {"a", "c"}});
}

Graph star4() {
    return Graph::from_edges({{"hub", "l1"}, {"hub", "l2"}, {"hub", "l3"}, {"hub", "l4"}});
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& content) {
        path = std::string("qwalk_test_") + std::to_string(::getpid()) + "_" +
               std::to_string(counter++) + ".txt";
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
    static int counter;
};
int TempFile::counter = 0;

} // namespace

TEST_CASE("duplicate edges collapse") {
    const Graph g = Graph::from_edges({{"a", "b"}, {"b", "c"}, {"a", "b"}, {"b", "a"}});
    CHECK(g.n() == 3);
    CHECK(g.edge_count() == 2);
    CHECK(g.load_summary().duplicate_edges == 2);
}

TEST_CASE("self-edge retained and counted") {
    const Graph g = Graph::from_edges({{"a", "a"}});
    CHECK(g.n() == 1);
    CHECK(g.edge_count() == 1);
    CHECK(g.self_edge_count() == 1);
    CHECK(g.degree(0) == 1);
    CHECK(g.has_self_edge(0));
}

TEST_CASE("drop_self_edges option") {
    LoadOptions options;
    options.drop_self_edges = true;
    const Graph g = Graph::from_edges({{"a", "a"}, {"a", "b"}}, options);
    CHECK(g.self_edge_count() == 0);
    CHECK(g.edge_count() == 1);
    CHECK(g.load_summary().self_edges_dropped == 1);
}

TEST_CASE("edge-list parsing with comments and blanks") {
    const TempFile file("# interactome extract\na\tb\n\n  \nb\tc\n");
    const Graph g = Graph::load_edge_list(file.path);
    CHECK(g.n() == 3);
    CHECK(g.edge_count() == 2);
    CHECK(g.load_summary().comment_lines == 1);
    CHECK(g.load_summary().blank_lines == 2);
}

TEST_CASE("malformed line reported with its number") {
    const TempFile file("a\tb\nc\n");
    CHECK_THROWS_WITH_AS(Graph::load_edge_list(file.path),
                         doctest::Contains(":2:"), DataError);
}

TEST_CASE("three-column line rejected") {
    const TempFile file("a\tb\tc\n");
    CHECK_THROWS_AS(Graph::load_edge_list(file.path), DataError);
}

TEST_CASE("missing file and empty graph") {
    CHECK_THROWS_AS(Graph::load_edge_list("definitely_not_here.txt"), DataError);
    const TempFile file("# only a comment\n");
    CHECK_THROWS_AS(Graph::load_edge_list(file.path), DataError);
}

TEST_CASE("degrees") {
    const Graph path = Graph::from_edges({{"a", "b"}});
    CHECK(path.degrees() == std::vector<int>{1, 1});

    CHECK(triangle().degrees() == std::vector<int>{2, 2, 2});

    const Graph star = star4();
    CHECK(star.degree(*star.index_of("hub")) == 4);
    CHECK(star.degree(*star.index_of("l1")) == 1);
}

TEST_CASE("degree sum identity with self-edges") {
    const Graph g = Graph::from_edges({{"a", "b"}, {"b", "c"}, {"c", "c"}, {"d", "d"}});
    std::size_t sum = 0;
    for (int v = 0; v < g.n(); ++v) sum += static_cast<std::size_t>(g.degree(v));
    // Self-edge adds 1 under our convention.
    CHECK(sum == 2 * (g.edge_count() - g.self_edge_count()) + g.self_edge_count());
}

TEST_CASE("bfs distances") {
    const Graph path = Graph::from_edges({{"a", "b"}, {"b", "c"}});
    CHECK(bfs_distances(path, *path.index_of("a")) == std::vector<int>{0, 1, 2});

    const Graph split = Graph::from_edges({{"a", "b"}, {"c", "d"}});
    const auto dist = bfs_distances(split, *split.index_of("a"));
    CHECK(dist[static_cast<std::size_t>(*split.index_of("a"))] == 0);
    CHECK(dist[static_cast<std::size_t>(*split.index_of("c"))] == -1);

    const Graph cycle =
        Graph::from_edges({{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "e"}, {"e", "a"}});
    auto cyc = bfs_distances(cycle, 0);
    std::sort(cyc.begin(), cyc.end());
    CHECK(cyc == std::vector<int>{0, 1, 1, 2, 2});

    CHECK_THROWS_AS(bfs_distances(path, 99), std::out_of_range);
}

TEST_CASE("bfs triangle inequality on a random graph") {
    const Graph g = ts::erdos_renyi_graph(80, 0.08, 11);
    std::vector<std::vector<int>> dist;
    for (int v = 0; v < g.n(); ++v) dist.push_back(bfs_distances(g, v));
    std::mt19937_64 gen(7);
    for (int probe = 0; probe < 2000; ++probe) {
        const int a = static_cast<int>(rng::bounded(gen, static_cast<std::uint64_t>(g.n())));
        const int b = static_cast<int>(rng::bounded(gen, static_cast<std::uint64_t>(g.n())));
        const int c = static_cast<int>(rng::bounded(gen, static_cast<std::uint64_t>(g.n())));
        const int ab = dist[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
        const int bc = dist[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)];
        const int ac = dist[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)];
        if (ab < 0 || bc < 0) continue;
        REQUIRE(ac >= 0);
        REQUIRE(ac <= ab + bc);
    }
}

TEST_CASE("adjacency symmetry holds for every loaded graph") {
    const Graph g = ts::erdos_renyi_graph(60, 0.1, 3);
    for (int u = 0; u < g.n(); ++u) {
        for (int v : g.neighbors(u)) {
            REQUIRE(g.has_edge(v, u));
        }
    }
}

TEST_CASE("stats on fixed shapes") {
    const GraphStats tri = compute_stats(triangle());
    CHECK(tri.avg_clustering == doctest::Approx(1.0));
    CHECK(tri.density == doctest::Approx(1.0));
    CHECK(tri.avg_degree == doctest::Approx(2.0));
    CHECK(std::isnan(tri.assortativity)); // degree-regular: sentinel, not a crash

    const GraphStats star = compute_stats(star4());
    CHECK(star.avg_clustering == doctest::Approx(0.0));
    CHECK(star.n_nodes == 5);
    CHECK(star.n_edges == 4);
}

TEST_CASE("clustering ignores self-edges") {
    Graph with_self = Graph::from_edges({{"a", "b"}, {"b", "c"}, {"a", "c"}, {"a", "a"}});
    const GraphStats s = compute_stats(with_self);
    CHECK(s.avg_clustering == doctest::Approx(1.0));
    CHECK(s.n_self_edges == 1);
}

TEST_CASE("stats are invariant under node relabeling") {
    const auto edges = ts::erdos_renyi_edges(40, 0.15, 5);
    const Graph g = Graph::from_edges(edges);

    auto permuted = edges;
    // Renaming nodes by reversing the label text permutes the graph.
    for (auto& [a, b] : permuted) {
        std::reverse(a.begin(), a.end());
        std::reverse(b.begin(), b.end());
    }
    std::reverse(permuted.begin(), permuted.end());
    const Graph h = Graph::from_edges(permuted);

    const GraphStats sg = compute_stats(g);
    const GraphStats sh = compute_stats(h);
    CHECK(sg.n_nodes == sh.n_nodes);
    CHECK(sg.n_edges == sh.n_edges);
    CHECK(sg.avg_degree == doctest::Approx(sh.avg_degree).epsilon(1e-12));
    CHECK(sg.avg_clustering == doctest::Approx(sh.avg_clustering).epsilon(1e-12));
    CHECK(sg.assortativity == doctest::Approx(sh.assortativity).epsilon(1e-12));
}

TEST_CASE("checksum distinguishes graphs") {
    CHECK(triangle().checksum() == triangle().checksum());
    CHECK(triangle().checksum() != star4().checksum());
}
