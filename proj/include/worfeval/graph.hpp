#pragma once

#include <limits>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace worfeval {

// Reserved node ids for the workflow terminals. Internal nodes use positive
// indices, so the id ordering START < internal < END is what edge sorting
// and serialization rely on.
inline constexpr int kStartId = 0;
inline constexpr int kEndId = std::numeric_limits<int>::max();

inline constexpr const char* kStartLabel = "START";
inline constexpr const char* kEndLabel = "END";

inline bool is_start(int id) { return id == kStartId; }
inline bool is_end(int id) { return id == kEndId; }
inline bool is_terminal(int id) { return is_start(id) || is_end(id); }

enum class NodeKind { internal, start, end };

struct WorkflowNode {
    int index = 0;
    std::string label;
    NodeKind kind = NodeKind::internal;

    friend bool operator==(const WorkflowNode&, const WorkflowNode&) = default;
};

inline WorkflowNode start_node() { return {kStartId, kStartLabel, NodeKind::start}; }
inline WorkflowNode end_node() { return {kEndId, kEndLabel, NodeKind::end}; }

using Edge = std::pair<int, int>;
using EdgeSet = std::set<Edge>;

// Ordered list of internal nodes.
struct NodeChain {
    std::vector<WorkflowNode> nodes;

    std::vector<int> indices() const;
    std::vector<std::string> labels() const;
    std::size_t size() const { return nodes.size(); }
    bool empty() const { return nodes.empty(); }

    friend bool operator==(const NodeChain&, const NodeChain&) = default;
};

NodeChain make_chain(const std::vector<std::pair<int, std::string>>& nodes);

class WorkflowGraph;

WorkflowGraph build_graph(const std::vector<std::pair<int, std::string>>& nodes,
                          const std::vector<Edge>& edges);
WorkflowGraph strip_terminals(const WorkflowGraph& g);
WorkflowGraph induced_subgraph(const WorkflowGraph& g, const std::vector<int>& subset);

// DAG of subtask nodes, optionally carrying the START/END terminals.
// Instances are immutable once built; all operations on them are pure.
class WorkflowGraph {
public:
    WorkflowGraph() = default;

    bool has_terminals() const { return has_terminals_; }

    // Internal nodes, keyed by index (terminals are implicit).
    const std::map<int, std::string>& internal_labels() const { return labels_; }
    const EdgeSet& edges() const { return edges_; }

    int internal_count() const { return static_cast<int>(labels_.size()); }
    std::size_t edge_count() const { return edges_.size(); }

    std::vector<int> internal_indices() const;
    bool contains(int id) const;
    bool has_edge(int from, int to) const { return edges_.count({from, to}) > 0; }
    const std::string& label_of(int index) const;

    // Edges with both endpoints internal.
    EdgeSet internal_edges() const;

    // All nodes; includes the terminals when present.
    std::vector<WorkflowNode> nodes() const;

    friend bool operator==(const WorkflowGraph&, const WorkflowGraph&) = default;

private:
    WorkflowGraph(std::map<int, std::string> labels, EdgeSet edges, bool has_terminals)
        : labels_(std::move(labels)), edges_(std::move(edges)), has_terminals_(has_terminals) {}

    friend WorkflowGraph build_graph(const std::vector<std::pair<int, std::string>>&,
                                     const std::vector<Edge>&);
    friend WorkflowGraph strip_terminals(const WorkflowGraph&);
    friend WorkflowGraph induced_subgraph(const WorkflowGraph&, const std::vector<int>&);

    std::map<int, std::string> labels_;
    EdgeSet edges_;
    bool has_terminals_ = false;
};

// Kahn removal where the smallest-index ready node goes first; the result is
// the lexicographically smallest topological order of the internal nodes.
NodeChain deterministic_topo_sort(const WorkflowGraph& g);

// First min(total, cap) topological orders of the internal subgraph in
// lexicographic order by index sequence.
std::vector<NodeChain> enumerate_topo_orders(const WorkflowGraph& g, int cap = 20);

// Exact number of topological orders, saturating at limit.
long long count_topo_orders(const WorkflowGraph& g, long long limit);

}  // namespace worfeval
