#pragma once

#include <vector>

#include "worfeval/graph.hpp"
#include "worfeval/matcher.hpp"

namespace worfeval {

struct McisResult {
    int k = 0;
    std::vector<int> certificate;  // gold ids, ascending

    friend bool operator==(const McisResult&, const McisResult&) = default;
};

struct GraphScore {
    int k = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::vector<int> certificate;

    friend bool operator==(const GraphScore&, const GraphScore&) = default;
};

// Maximum common induced subgraph under the fixed one-to-one correspondence:
// the largest set of matched pairs on which edge presence and absence agree
// between the predicted and gold graphs, in both directions. Exact; the
// certificate is the lexicographically smallest optimum by gold id.
McisResult mcis(const EdgeSet& pred_edges, const EdgeSet& gold_edges,
                const NodeCorrespondence& corr);

// True iff `subset` of matched pairs satisfies the induced-agreement
// predicate; lets callers re-check a certificate independently.
bool induced_agreement(const EdgeSet& pred_edges, const EdgeSet& gold_edges,
                       const NodeCorrespondence& corr, const std::vector<int>& gold_subset);

GraphScore score_graph_edges(const EdgeSet& gold_edges, const EdgeSet& pred_edges,
                             const NodeCorrespondence& corr, int gold_count, int pred_count);

// Workflow-graph score over internal nodes; terminals must already be
// stripped from the predicted edge set.
GraphScore score_graph(const WorkflowGraph& gold, const EdgeSet& pred_internal_edges,
                       int pred_nodes_total, const NodeCorrespondence& corr);

}  // namespace worfeval
