#pragma once

#include <utility>
#include <vector>

#include "worfeval/graph.hpp"

namespace worfeval::fixtures {

// Brute-force reference implementations. These are deliberately written as
// exhaustive searches over plain containers and must stay independent of the
// engine code they are used to check.

// Exhaustive 2^m subset check of induced agreement under the fixed
// correspondence; pairs are (gold id, pred id). Throws TooLargeError past 12
// pairs.
int oracle_mcis(const EdgeSet& pred_edges, const EdgeSet& gold_edges,
                const std::vector<std::pair<int, int>>& pairs);

// Maximum total weight over injective row->column assignments that use only
// positive entries. Throws TooLargeError past 7x7.
double oracle_matching(const std::vector<std::vector<double>>& weights);

// Every optimal matching as a (row, col) 1-based pair list sorted by row;
// meant for tiny matrices when checking tie-break rules.
std::vector<std::vector<std::pair<int, int>>> oracle_optimal_matchings(
    const std::vector<std::vector<double>>& weights, double tolerance = 1e-9);

// All topological orders of `ids` under `edges`, generated by filtering the
// full permutation list, in lexicographic order. Throws TooLargeError past 8
// ids.
std::vector<std::vector<int>> oracle_topo_orders(const std::vector<int>& ids,
                                                 const EdgeSet& edges);

// First permutation (in lex order) that respects every edge.
std::vector<int> oracle_lex_min_topo(const std::vector<int>& ids, const EdgeSet& edges);

}  // namespace worfeval::fixtures
