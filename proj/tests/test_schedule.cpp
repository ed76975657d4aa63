#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "random_dag.hpp"
#include "worfeval/errors.hpp"
#include "worfeval/schedule.hpp"

using namespace worfeval;

namespace {

WorkflowGraph linear3() {
    return build_graph({{1, "a"}, {2, "b"}, {3, "c"}}, {{1, 2}, {2, 3}});
}

WorkflowGraph parallel3() {
    return build_graph({{1, "a"}, {2, "b"}, {3, "c"}}, {});
}

WorkflowGraph diamond() {
    return build_graph({{1, "a"}, {2, "b"}, {3, "c"}, {4, "d"}},
                       {{1, 2}, {1, 3}, {2, 4}, {3, 4}});
}

// Hamiltonian path through the internal nodes: the topological order is
// unique and consecutive nodes are joined by edges.
bool covers_single_path(const WorkflowGraph& g) {
    if (count_topo_orders(g, 2) != 1) return false;
    auto order = deterministic_topo_sort(g).indices();
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        if (!g.has_edge(order[i], order[i + 1])) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("critical path worked examples") {
    CriticalPath chain = critical_path(linear3(), {{1, 2.0}, {2, 3.0}, {3, 5.0}});
    CHECK(chain.length == doctest::Approx(10.0));
    CHECK(chain.path == std::vector<int>{1, 2, 3});

    CriticalPath fan = critical_path(parallel3(), {{1, 2.0}, {2, 3.0}, {3, 5.0}});
    CHECK(fan.length == doctest::Approx(5.0));
    CHECK(fan.path == std::vector<int>{3});

    CriticalPath dia = critical_path(diamond(), {{1, 1.0}, {2, 4.0}, {3, 2.0}, {4, 1.0}});
    CHECK(dia.length == doctest::Approx(6.0));
    CHECK(dia.path == std::vector<int>{1, 2, 4});
}

TEST_CASE("missing and zero durations raise") {
    CHECK_THROWS_AS(critical_path(linear3(), {{1, 2.0}, {2, 3.0}}), MissingDurationError);
    CHECK_THROWS_AS(speedup(parallel3(), {{1, 0.0}, {2, 0.0}, {3, 0.0}}), ZeroDurationError);
}

TEST_CASE("speedup worked examples") {
    CHECK(speedup(linear3(), {{1, 2.0}, {2, 3.0}, {3, 5.0}}) == doctest::Approx(1.0));
    CHECK(speedup(parallel3(), {{1, 2.0}, {2, 3.0}, {3, 5.0}}) == doctest::Approx(2.0));
    CHECK(speedup(diamond(), {{1, 1.0}, {2, 4.0}, {3, 2.0}, {4, 1.0}}) ==
          doctest::Approx(8.0 / 6.0));
}

TEST_CASE("critical path properties on random positive-duration graphs") {
    std::mt19937_64 seeds(7601);
    std::uniform_int_distribution<int> duration(1, 9);
    for (int trial = 0; trial < 300; ++trial) {
        fixtures::RandomDagSpec spec;
        spec.min_nodes = 1;
        spec.max_nodes = 8;
        spec.edge_prob = 0.4;
        spec.seed = seeds();
        WorkflowGraph g = fixtures::gen_random_dag(spec);

        DurationMap d;
        double total = 0.0, longest_node = 0.0;
        for (int id : g.internal_indices()) {
            double v = duration(seeds);  // integer-valued so the sums are exact
            d[id] = v;
            total += v;
            longest_node = std::max(longest_node, v);
        }

        CriticalPath cp = critical_path(g, d);
        CHECK(cp.length <= total);
        CHECK(cp.length >= longest_node);
        CHECK((cp.length == total) == covers_single_path(g));

        // the reported path realizes the reported length
        double path_sum = 0.0;
        for (int id : cp.path) path_sum += d[id];
        CHECK(path_sum == doctest::Approx(cp.length));
        for (std::size_t i = 0; i + 1 < cp.path.size(); ++i) {
            CHECK(g.has_edge(cp.path[i], cp.path[i + 1]));
        }
    }
}

TEST_CASE("adding an edge never shortens the critical path") {
    std::mt19937_64 seeds(7602);
    std::uniform_int_distribution<int> duration(1, 9);
    for (int trial = 0; trial < 100; ++trial) {
        fixtures::RandomDagSpec spec;
        spec.min_nodes = 3;
        spec.max_nodes = 7;
        spec.edge_prob = 0.3;
        spec.seed = seeds();
        WorkflowGraph g = fixtures::gen_random_dag(spec);

        DurationMap d;
        for (int id : g.internal_indices()) d[id] = duration(seeds);
        double base = critical_path(g, d).length;

        // add one edge consistent with the deterministic order
        auto order = deterministic_topo_sort(g).indices();
        if (order.size() < 2) continue;
        std::uniform_int_distribution<std::size_t> pick(0, order.size() - 1);
        std::size_t a = pick(seeds), b = pick(seeds);
        if (a == b) continue;
        Edge extra{order[std::min(a, b)], order[std::max(a, b)]};

        std::vector<std::pair<int, std::string>> nodes;
        for (int id : g.internal_indices()) nodes.emplace_back(id, g.label_of(id));
        const EdgeSet internal = g.internal_edges();
        std::vector<Edge> edges(internal.begin(), internal.end());
        edges.push_back(extra);
        WorkflowGraph extended = build_graph(nodes, edges);

        CHECK(critical_path(extended, d).length >= base);
    }
}

TEST_CASE("load_durations reads jsonl records") {
    auto path = std::filesystem::temp_directory_path() / "worfeval_durations.jsonl";
    {
        std::ofstream out(path);
        out << R"({"id": "s1", "durations": [2, 3, 5]})" << "\n";
        out << R"({"id": "s2", "durations": [1.5]})" << "\n";
    }
    auto durations = load_durations(path.string());
    REQUIRE(durations.size() == 2);
    CHECK(durations["s1"].at(2) == doctest::Approx(3.0));
    CHECK(durations["s2"].at(1) == doctest::Approx(1.5));

    {
        std::ofstream out(path);
        out << R"({"id": "s1", "durations": [-1]})" << "\n";
    }
    CHECK_THROWS_AS(load_durations(path.string()), SchemaError);
}
