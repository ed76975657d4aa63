#pragma once

#include <vector>

#include "worfeval/similarity.hpp"

namespace worfeval {

struct MatchedPair {
    int gold = 0;
    int pred = 0;
    double weight = 0.0;

    friend bool operator==(const MatchedPair&, const MatchedPair&) = default;
};

// One-to-one correspondence between gold and predicted nodes, sorted by gold
// index. Only entries above the similarity threshold are matchable.
struct NodeCorrespondence {
    std::vector<MatchedPair> pairs;

    double total_weight() const;
    std::size_t size() const { return pairs.size(); }
    bool empty() const { return pairs.empty(); }

    friend bool operator==(const NodeCorrespondence&, const NodeCorrespondence&) = default;
};

// Maximizes total weight over one-to-one pairings using the nonzero matrix
// entries; among equal-weight optima returns the lexicographically smallest
// pair list by (gold, pred). Pair indices are 1-based row/column positions.
NodeCorrespondence max_weight_matching(const SimilarityMatrix& matrix);

}  // namespace worfeval
