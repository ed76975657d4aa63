#include "worfeval/qc.hpp"

#include <set>

#include "worfeval/errors.hpp"

namespace worfeval {

std::string_view to_string(QcReason reason) {
    switch (reason) {
        case QcReason::ok: return "ok";
        case QcReason::topo_mismatch: return "topo-mismatch";
        case QcReason::too_simple: return "too-simple";
        case QcReason::external_reject: return "external-reject";
    }
    return "unknown";
}

bool check_topo_consistency(const WorkflowGraph& g, const NodeChain& chain) {
    std::set<int> chain_indices;
    for (const auto& node : chain.nodes) chain_indices.insert(node.index);
    std::set<int> graph_indices;
    for (int id : g.internal_indices()) graph_indices.insert(id);
    if (chain_indices != graph_indices || chain_indices.size() != chain.size()) {
        throw IndexMismatchError("chain indices do not match the graph's internal nodes");
    }
    return deterministic_topo_sort(g).indices() == chain.indices();
}

QcVerdict filter_complexity(const WorkflowGraph& g) {
    if (g.internal_count() <= 1 || g.edge_count() <= 1) {
        return {false, QcReason::too_simple};
    }
    return {true, QcReason::ok};
}

QcReport run_qc(const std::vector<GoldSample>& samples, const ExternalPredicate& external) {
    QcReport report;
    report.total = static_cast<int>(samples.size());
    int too_simple = 0, topo_mismatch = 0, external_reject = 0;
    for (const auto& sample : samples) {
        QcVerdict complexity = filter_complexity(sample.gold_graph);
        if (!complexity.keep) {
            ++too_simple;
            report.discarded.emplace_back(sample.id, QcReason::too_simple);
            continue;
        }
        if (!check_topo_consistency(sample.gold_graph, sample.gold_chain)) {
            ++topo_mismatch;
            report.discarded.emplace_back(sample.id, QcReason::topo_mismatch);
            continue;
        }
        if (external && !external(sample)) {
            ++external_reject;
            report.discarded.emplace_back(sample.id, QcReason::external_reject);
            continue;
        }
        report.kept.push_back(sample);
    }
    if (report.total > 0) {
        report.too_simple_rate = static_cast<double>(too_simple) / report.total;
        report.topo_mismatch_rate = static_cast<double>(topo_mismatch) / report.total;
        report.external_reject_rate = static_cast<double>(external_reject) / report.total;
    }
    return report;
}

}  // namespace worfeval
