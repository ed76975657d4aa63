#include "doctest.h"
#include "instances.hpp"
#include "oracles.hpp"
#include "random_dag.hpp"
#include "worfeval/errors.hpp"
#include "worfeval/qc.hpp"

using namespace worfeval;

TEST_CASE("random DAG generation is deterministic per seed") {
    fixtures::RandomDagSpec spec;
    spec.seed = 42;
    CHECK(fixtures::gen_random_dag(spec) == fixtures::gen_random_dag(spec));

    spec.seed = 43;
    CHECK_FALSE(fixtures::gen_random_dag(spec) == fixtures::gen_random_dag({2, 8, 0.3, 42}));
}

TEST_CASE("edge probability extremes") {
    fixtures::RandomDagSpec sparse{5, 5, 0.0, 9};
    CHECK(fixtures::gen_random_dag(sparse).internal_edges().empty());

    fixtures::RandomDagSpec dense{5, 5, 1.0, 9};
    WorkflowGraph g = fixtures::gen_random_dag(dense);
    CHECK(g.internal_edges().size() == 10);  // all pairs, ordered by rank
    CHECK(count_topo_orders(g, 10) == 1);
}

TEST_CASE("generated gold samples are canonical") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        fixtures::RandomDagSpec spec;
        spec.seed = seed;
        GoldSample sample = fixtures::gen_random_gold_sample(spec, "c" + std::to_string(seed));
        CHECK(check_topo_consistency(sample.gold_graph, sample.gold_chain));
        CHECK(sample.gold_graph.internal_count() >= 2);
        CHECK(sample.gold_graph.edge_count() >= 2);
    }
}

TEST_CASE("oracle self-checks on the worked instances") {
    // fan-shaped prediction against the parallel gold
    GoldSample fan = fixtures::fanout3_gold();
    CHECK(fixtures::oracle_mcis({{1, 2}, {1, 3}}, fan.gold_graph.internal_edges(),
                                {{1, 1}, {2, 2}, {3, 3}}) == 2);
    // identity instance
    GoldSample lin = fixtures::linear3_gold();
    CHECK(fixtures::oracle_mcis(lin.gold_graph.internal_edges(),
                                lin.gold_graph.internal_edges(),
                                {{1, 1}, {2, 2}, {3, 3}}) == 3);
    // linear vs reversed linear
    CHECK(fixtures::oracle_mcis({{1, 2}, {2, 3}}, lin.gold_graph.internal_edges(),
                                {{1, 3}, {2, 2}, {3, 1}}) == 2);

    CHECK(fixtures::oracle_matching({{0.9, 0.7}, {0.8, 0.0}}) == doctest::Approx(1.5));
    CHECK(fixtures::oracle_matching({{1.0, 0.0}, {0.0, 1.0}}) == doctest::Approx(2.0));
    CHECK(fixtures::oracle_matching({{0.0, 0.0}, {0.0, 0.0}}) == 0.0);

    std::vector<std::pair<int, int>> too_many(13, {1, 1});
    CHECK_THROWS_AS(fixtures::oracle_mcis({}, {}, too_many), TooLargeError);
    CHECK_THROWS_AS(
        fixtures::oracle_matching(std::vector<std::vector<double>>(8, std::vector<double>(8))),
        TooLargeError);
}
