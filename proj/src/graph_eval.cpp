#include "worfeval/graph_eval.hpp"

#include <algorithm>
#include <cstdint>
#include <map>

#include "worfeval/errors.hpp"

namespace worfeval {

namespace {

// The agreement relation on matched pairs is symmetric, so the MCIS under a
// fixed correspondence is a maximum clique in the pair-compatibility graph.
// Branch and bound with a greedy colouring bound; pair counts here stay tiny
// (benchmark workflows top out around 20 nodes).
class CliqueSolver {
public:
    explicit CliqueSolver(const std::vector<std::uint64_t>& adj) : adj_(adj) {}

    int max_clique(std::uint64_t cand) {
        best_ = 0;
        expand(cand, 0);
        return best_;
    }

private:
    void expand(std::uint64_t cand, int depth) {
        if (depth > best_) best_ = depth;
        if (cand == 0) return;

        // greedy colouring: nodes in one class are pairwise non-adjacent, so
        // a clique takes at most one per class
        std::vector<std::pair<int, int>> order;  // (vertex, colour), colour ascending
        std::uint64_t rest = cand;
        int colour = 0;
        while (rest != 0) {
            ++colour;
            std::uint64_t cls = rest;
            while (cls != 0) {
                int v = __builtin_ctzll(cls);
                std::uint64_t bit = std::uint64_t{1} << v;
                cls &= ~(adj_[v] | bit);
                rest &= ~bit;
                order.emplace_back(v, colour);
            }
        }

        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            auto [v, c] = *it;
            if (depth + c <= best_) return;  // colours descend, so the rest fail too
            expand(cand & adj_[v], depth + 1);
            cand &= ~(std::uint64_t{1} << v);
        }
    }

    const std::vector<std::uint64_t>& adj_;
    int best_ = 0;
};

bool pair_compatible(const EdgeSet& pred_edges, const EdgeSet& gold_edges, const MatchedPair& a,
                     const MatchedPair& b) {
    const bool pred_ab = pred_edges.count({a.pred, b.pred}) > 0;
    const bool gold_ab = gold_edges.count({a.gold, b.gold}) > 0;
    const bool pred_ba = pred_edges.count({b.pred, a.pred}) > 0;
    const bool gold_ba = gold_edges.count({b.gold, a.gold}) > 0;
    return pred_ab == gold_ab && pred_ba == gold_ba;
}

std::vector<MatchedPair> sorted_pairs(const NodeCorrespondence& corr) {
    std::vector<MatchedPair> pairs = corr.pairs;
    std::sort(pairs.begin(), pairs.end(),
              [](const MatchedPair& a, const MatchedPair& b) { return a.gold < b.gold; });
    return pairs;
}

}  // namespace

McisResult mcis(const EdgeSet& pred_edges, const EdgeSet& gold_edges,
                const NodeCorrespondence& corr) {
    const std::vector<MatchedPair> pairs = sorted_pairs(corr);
    const int n = static_cast<int>(pairs.size());
    if (n == 0) return {};
    if (n > 64) {
        throw TooLargeError("mcis supports at most 64 matched pairs, got " + std::to_string(n));
    }

    std::vector<std::uint64_t> adj(n, 0);
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            if (pair_compatible(pred_edges, gold_edges, pairs[a], pairs[b])) {
                adj[a] |= std::uint64_t{1} << b;
                adj[b] |= std::uint64_t{1} << a;
            }
        }
    }

    const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    CliqueSolver solver(adj);
    const int k = solver.max_clique(all);

    // Lexicographically smallest certificate: force vertices in ascending
    // gold order whenever the optimum stays reachable.
    McisResult result;
    result.k = k;
    std::uint64_t cand = all;
    int taken = 0;
    for (int v = 0; v < n && taken < k; ++v) {
        if ((cand >> v & 1) == 0) continue;
        std::uint64_t rest = cand & adj[v];
        if (taken + 1 + solver.max_clique(rest) >= k) {
            result.certificate.push_back(pairs[v].gold);
            cand = rest;
            ++taken;
        } else {
            cand &= ~(std::uint64_t{1} << v);
        }
    }
    return result;
}

bool induced_agreement(const EdgeSet& pred_edges, const EdgeSet& gold_edges,
                       const NodeCorrespondence& corr, const std::vector<int>& gold_subset) {
    std::map<int, MatchedPair> by_gold;
    for (const auto& pair : corr.pairs) by_gold[pair.gold] = pair;
    std::vector<MatchedPair> chosen;
    for (int gold_id : gold_subset) {
        auto it = by_gold.find(gold_id);
        if (it == by_gold.end()) return false;
        chosen.push_back(it->second);
    }
    for (std::size_t a = 0; a < chosen.size(); ++a) {
        for (std::size_t b = a + 1; b < chosen.size(); ++b) {
            if (!pair_compatible(pred_edges, gold_edges, chosen[a], chosen[b])) return false;
        }
    }
    return true;
}

GraphScore score_graph_edges(const EdgeSet& gold_edges, const EdgeSet& pred_edges,
                             const NodeCorrespondence& corr, int gold_count, int pred_count) {
    GraphScore score;
    if (pred_count == 0 || gold_count == 0) return score;

    McisResult m = mcis(pred_edges, gold_edges, corr);
    score.k = m.k;
    score.certificate = std::move(m.certificate);
    if (score.k > 0) {
        score.precision = static_cast<double>(score.k) / pred_count;
        score.recall = static_cast<double>(score.k) / gold_count;
        score.f1 = 2.0 * score.precision * score.recall / (score.precision + score.recall);
    }
    return score;
}

GraphScore score_graph(const WorkflowGraph& gold, const EdgeSet& pred_internal_edges,
                       int pred_nodes_total, const NodeCorrespondence& corr) {
    return score_graph_edges(gold.internal_edges(), pred_internal_edges, corr,
                             gold.internal_count(), pred_nodes_total);
}

}  // namespace worfeval
