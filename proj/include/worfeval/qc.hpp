#pragma once

#include <functional>
#include <string_view>
#include <utility>
#include <vector>

#include "worfeval/graph.hpp"
#include "worfeval/parser.hpp"

namespace worfeval {

enum class QcReason { ok, topo_mismatch, too_simple, external_reject };

std::string_view to_string(QcReason reason);

struct QcVerdict {
    bool keep = true;
    QcReason reason = QcReason::ok;
};

// True iff the chain is exactly the deterministic topological order of the
// graph's internal nodes.
bool check_topo_consistency(const WorkflowGraph& g, const NodeChain& chain);

// Discards workflows with at most one internal node or at most one edge
// (terminal edges counted).
QcVerdict filter_complexity(const WorkflowGraph& g);

// Hook for filters that need resources outside this library, e.g. the
// retrieval check against a gold action corpus. Returning false discards.
using ExternalPredicate = std::function<bool(const GoldSample&)>;

struct QcReport {
    std::vector<GoldSample> kept;
    std::vector<std::pair<std::string, QcReason>> discarded;  // id, reason
    int total = 0;
    double too_simple_rate = 0.0;
    double topo_mismatch_rate = 0.0;
    double external_reject_rate = 0.0;
};

QcReport run_qc(const std::vector<GoldSample>& samples, const ExternalPredicate& external = {});

}  // namespace worfeval
