#include <algorithm>
#include <map>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "random_dag.hpp"
#include "worfeval/errors.hpp"
#include "worfeval/graph.hpp"

using namespace worfeval;

namespace {

WorkflowGraph diamond() {
    return build_graph({{1, "a"}, {2, "b"}, {3, "c"}, {4, "d"}},
                       {{kStartId, 1}, {1, 2}, {1, 3}, {2, 4}, {3, 4}, {4, kEndId}});
}

WorkflowGraph parallel(int n) {
    std::vector<std::pair<int, std::string>> nodes;
    for (int i = 1; i <= n; ++i) nodes.emplace_back(i, "p" + std::to_string(i));
    return build_graph(nodes, {});
}

}  // namespace

TEST_CASE("build_graph wires terminals around a minimal workflow") {
    WorkflowGraph g = build_graph({{1, "a"}}, {{kStartId, 1}, {1, kEndId}});
    CHECK(g.internal_count() == 1);
    CHECK(g.edge_count() == 2);
    CHECK(g.has_terminals());

    // same graph without explicit terminal edges
    WorkflowGraph wired = build_graph({{1, "a"}}, {});
    CHECK(wired == g);
}

TEST_CASE("build_graph accepts the parallel fan-out instance") {
    WorkflowGraph g = build_graph({{1, "a"}, {2, "b"}, {3, "c"}},
                                  {{kStartId, 1},
                                   {kStartId, 2},
                                   {kStartId, 3},
                                   {1, kEndId},
                                   {2, kEndId},
                                   {3, kEndId}});
    CHECK(g.internal_count() == 3);
    CHECK(g.edge_count() == 6);
    CHECK(g.internal_edges().empty());
}

TEST_CASE("build_graph rejects bad input") {
    CHECK_THROWS_AS(build_graph({{1, "a"}, {2, "b"}}, {{1, 2}, {2, 1}}), CycleError);
    CHECK_THROWS_AS(build_graph({{1, "a"}}, {{1, 1}}), CycleError);
    CHECK_THROWS_AS(build_graph({{1, "a"}}, {{1, 2}}), DanglingEdgeError);
    CHECK_THROWS_AS(build_graph({{1, "a"}, {1, "b"}}, {}), DuplicateIndexError);
    CHECK_THROWS_AS(build_graph({{1, "a"}}, {{1, kStartId}}), DanglingEdgeError);
    CHECK_THROWS_AS(build_graph({{1, "a"}}, {{kEndId, 1}}), DanglingEdgeError);
}

TEST_CASE("duplicate edges collapse to one") {
    WorkflowGraph g = build_graph({{1, "a"}, {2, "b"}}, {{1, 2}, {1, 2}});
    CHECK(g.internal_edges().size() == 1);
}

TEST_CASE("strip_terminals keeps only internal structure") {
    WorkflowGraph one = strip_terminals(build_graph({{1, "a"}}, {}));
    CHECK(one.internal_count() == 1);
    CHECK(one.edge_count() == 0);
    CHECK_FALSE(one.has_terminals());

    WorkflowGraph fan = build_graph({{1, "a"}, {2, "b"}, {3, "c"}},
                                    {{kStartId, 1},
                                     {kStartId, 2},
                                     {kStartId, 3},
                                     {1, kEndId},
                                     {2, kEndId},
                                     {3, kEndId}});
    WorkflowGraph stripped = strip_terminals(fan);
    CHECK(stripped.internal_count() == 3);
    CHECK(stripped.edge_count() == 0);

    WorkflowGraph chain = strip_terminals(build_graph({{1, "a"}, {2, "b"}, {3, "c"}},
                                                      {{1, 2}, {2, 3}}));
    CHECK(chain.internal_count() == 3);
    CHECK(chain.edges() == EdgeSet{{1, 2}, {2, 3}});
}

TEST_CASE("deterministic_topo_sort applies the ascending tie-break") {
    CHECK(deterministic_topo_sort(diamond()).indices() == std::vector<int>{1, 2, 3, 4});
    CHECK(deterministic_topo_sort(build_graph({{1, "a"}, {2, "b"}, {3, "c"}}, {{1, 2}, {2, 3}}))
              .indices() == std::vector<int>{1, 2, 3});
    CHECK(deterministic_topo_sort(parallel(3)).indices() == std::vector<int>{1, 2, 3});
}

TEST_CASE("enumerate_topo_orders is lexicographic and capped") {
    auto fan = enumerate_topo_orders(parallel(3), 20);
    CHECK(fan.size() == 6);
    CHECK(fan.front().indices() == std::vector<int>{1, 2, 3});

    auto dia = enumerate_topo_orders(diamond(), 20);
    REQUIRE(dia.size() == 2);
    CHECK(dia[0].indices() == std::vector<int>{1, 2, 3, 4});
    CHECK(dia[1].indices() == std::vector<int>{1, 3, 2, 4});

    // 5 parallel nodes: 120 orders, the cap keeps the lexicographically
    // first 20, which are exactly the first 20 permutations
    auto capped = enumerate_topo_orders(parallel(5), 20);
    REQUIRE(capped.size() == 20);
    std::vector<int> perm{1, 2, 3, 4, 5};
    for (const auto& chain : capped) {
        CHECK(chain.indices() == perm);
        std::next_permutation(perm.begin(), perm.end());
    }
}

TEST_CASE("count_topo_orders saturates at the limit") {
    CHECK(count_topo_orders(build_graph({{1, "a"}, {2, "b"}, {3, "c"}}, {{1, 2}, {2, 3}}), 1000) ==
          1);
    CHECK(count_topo_orders(parallel(3), 1000) == 6);
    CHECK(count_topo_orders(parallel(5), 100) == 100);  // true count is 120
}

TEST_CASE("topological operations agree with the permutation oracle") {
    std::mt19937_64 seeds(7001);
    for (int trial = 0; trial < 200; ++trial) {
        fixtures::RandomDagSpec spec;
        spec.min_nodes = 1;
        spec.max_nodes = 6;
        spec.edge_prob = 0.35;
        spec.seed = seeds();
        WorkflowGraph g = fixtures::gen_random_dag(spec);

        auto ids = g.internal_indices();
        auto oracle = fixtures::oracle_topo_orders(ids, g.internal_edges());
        auto enumerated = enumerate_topo_orders(g, 100000);

        REQUIRE(enumerated.size() == oracle.size());
        for (std::size_t i = 0; i < oracle.size(); ++i) {
            CHECK(enumerated[i].indices() == oracle[i]);
        }
        CHECK(deterministic_topo_sort(g).indices() == oracle.front());
        CHECK(count_topo_orders(g, 1000000) == static_cast<long long>(oracle.size()));

        // every enumerated order respects every internal edge
        for (const auto& chain : enumerated) {
            auto order = chain.indices();
            std::map<int, int> pos;
            for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
            for (const auto& [from, to] : g.internal_edges()) {
                CHECK(pos[from] < pos[to]);
            }
        }
    }
}

TEST_CASE("strip_terminals preserves internal edge relations") {
    std::mt19937_64 seeds(7002);
    for (int trial = 0; trial < 100; ++trial) {
        fixtures::RandomDagSpec spec;
        spec.seed = seeds();
        WorkflowGraph g = fixtures::gen_random_dag(spec);
        CHECK(strip_terminals(g).edges() == g.internal_edges());
    }
}

TEST_CASE("induced subgraph on all nodes is the graph itself") {
    WorkflowGraph g = diamond();
    std::vector<int> all{kStartId, 1, 2, 3, 4, kEndId};
    CHECK(induced_subgraph(g, all) == g);

    WorkflowGraph pair = induced_subgraph(g, {1, 4});
    CHECK(pair.internal_count() == 2);
    CHECK(pair.edge_count() == 0);

    WorkflowGraph empty = induced_subgraph(g, {});
    CHECK(empty.internal_count() == 0);
    CHECK(empty.edge_count() == 0);

    CHECK_THROWS_AS(induced_subgraph(g, {9}), UnknownNodeError);
}
