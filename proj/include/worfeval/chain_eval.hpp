#pragma once

#include <vector>

#include "worfeval/graph.hpp"
#include "worfeval/matcher.hpp"

namespace worfeval {

struct ChainScore {
    int l = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    int orders_used = 0;

    friend bool operator==(const ChainScore&, const ChainScore&) = default;
};

// Length of the longest strictly increasing subsequence, O(n log n).
int lis_length(const std::vector<int>& seq);

// Core scorer over arbitrary node-id sequences; the correspondence maps gold
// ids to predicted ids. gold_count/pred_count are the |V^g| and |V^p| the
// precision and recall divide by.
ChainScore score_chain_orders(const std::vector<std::vector<int>>& gold_orders,
                              const std::vector<int>& pred_chain_ids,
                              const NodeCorrespondence& corr, int gold_count, int pred_count);

// Node-chain score: matched predicted nodes, taken in predicted-chain order,
// are mapped to gold nodes; l is the best LIS of their positions over the
// enumerated gold topological orders.
ChainScore score_chain(const WorkflowGraph& gold, const NodeChain& pred_chain,
                       const NodeCorrespondence& corr, int cap = 20);

}  // namespace worfeval
