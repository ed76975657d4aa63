#pragma once

#include <cstdint>
#include <string>

#include "worfeval/graph.hpp"
#include "worfeval/parser.hpp"

namespace worfeval::fixtures {

struct RandomDagSpec {
    int min_nodes = 2;
    int max_nodes = 8;
    double edge_prob = 0.3;
    std::uint64_t seed = 0;
};

// Deterministic per seed; acyclic because edges only run from lower to
// higher shuffled rank.
WorkflowGraph gen_random_dag(const RandomDagSpec& spec);

// Random gold sample in canonical form: nodes are relabeled so the chain
// [1..n] is the deterministic topological order, as in the released data.
GoldSample gen_random_gold_sample(const RandomDagSpec& spec, const std::string& id,
                                  Scenario scenario = Scenario::function_call);

struct PerturbSpec {
    double keep_prob = 0.85;   // chance a gold node survives into the prediction
    int max_extra_nodes = 2;   // junk nodes appended before shuffling
    double edge_prob = 0.25;   // chance per ordered node pair
    std::uint64_t seed = 0;
};

// Random prediction over a gold sample: shuffled subset of the gold labels
// plus noise nodes and arbitrary directed edges (cycles allowed).
ParsedWorkflow gen_random_prediction(const GoldSample& gold, const PerturbSpec& spec);

}  // namespace worfeval::fixtures
