#include "worfeval/chain_eval.hpp"

#include <algorithm>
#include <map>

namespace worfeval {

int lis_length(const std::vector<int>& seq) {
    std::vector<int> tails;  // tails[k] = smallest tail of an increasing subsequence of length k+1
    for (int value : seq) {
        auto it = std::lower_bound(tails.begin(), tails.end(), value);
        if (it == tails.end()) {
            tails.push_back(value);
        } else {
            *it = value;
        }
    }
    return static_cast<int>(tails.size());
}

ChainScore score_chain_orders(const std::vector<std::vector<int>>& gold_orders,
                              const std::vector<int>& pred_chain_ids,
                              const NodeCorrespondence& corr, int gold_count, int pred_count) {
    ChainScore score;
    score.orders_used = static_cast<int>(gold_orders.size());
    if (pred_count == 0 || gold_count == 0) return score;

    std::map<int, int> gold_of_pred;
    for (const auto& pair : corr.pairs) gold_of_pred[pair.pred] = pair.gold;

    // Matched predicted nodes in chain order, expressed as gold ids.
    std::vector<int> matched_gold;
    matched_gold.reserve(corr.size());
    for (int pred_id : pred_chain_ids) {
        auto it = gold_of_pred.find(pred_id);
        if (it != gold_of_pred.end()) matched_gold.push_back(it->second);
    }

    int best = 0;
    std::vector<int> positions;
    positions.reserve(matched_gold.size());
    for (const auto& order : gold_orders) {
        std::map<int, int> position;
        for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = static_cast<int>(i) + 1;
        positions.clear();
        for (int gold_id : matched_gold) {
            auto it = position.find(gold_id);
            if (it != position.end()) positions.push_back(it->second);
        }
        best = std::max(best, lis_length(positions));
    }

    score.l = best;
    if (best > 0) {
        score.precision = static_cast<double>(best) / pred_count;
        score.recall = static_cast<double>(best) / gold_count;
        score.f1 = 2.0 * score.precision * score.recall / (score.precision + score.recall);
    }
    return score;
}

ChainScore score_chain(const WorkflowGraph& gold, const NodeChain& pred_chain,
                       const NodeCorrespondence& corr, int cap) {
    std::vector<std::vector<int>> orders;
    for (const auto& chain : enumerate_topo_orders(gold, cap)) {
        orders.push_back(chain.indices());
    }
    return score_chain_orders(orders, pred_chain.indices(), corr, gold.internal_count(),
                              static_cast<int>(pred_chain.size()));
}

}  // namespace worfeval
