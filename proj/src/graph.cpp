#include "worfeval/graph.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>

#include "worfeval/errors.hpp"

namespace worfeval {

std::vector<int> NodeChain::indices() const {
    std::vector<int> out;
    out.reserve(nodes.size());
    for (const auto& n : nodes) out.push_back(n.index);
    return out;
}

std::vector<std::string> NodeChain::labels() const {
    std::vector<std::string> out;
    out.reserve(nodes.size());
    for (const auto& n : nodes) out.push_back(n.label);
    return out;
}

NodeChain make_chain(const std::vector<std::pair<int, std::string>>& nodes) {
    NodeChain chain;
    chain.nodes.reserve(nodes.size());
    for (const auto& [index, label] : nodes) {
        chain.nodes.push_back({index, label, NodeKind::internal});
    }
    return chain;
}

std::vector<int> WorkflowGraph::internal_indices() const {
    std::vector<int> out;
    out.reserve(labels_.size());
    for (const auto& [index, label] : labels_) out.push_back(index);
    return out;
}

bool WorkflowGraph::contains(int id) const {
    if (is_terminal(id)) return has_terminals_;
    return labels_.count(id) > 0;
}

const std::string& WorkflowGraph::label_of(int index) const {
    auto it = labels_.find(index);
    if (it == labels_.end()) throw UnknownNodeError("no node with index " + std::to_string(index));
    return it->second;
}

EdgeSet WorkflowGraph::internal_edges() const {
    EdgeSet out;
    for (const auto& [from, to] : edges_) {
        if (!is_terminal(from) && !is_terminal(to)) out.insert({from, to});
    }
    return out;
}

std::vector<WorkflowNode> WorkflowGraph::nodes() const {
    std::vector<WorkflowNode> out;
    if (has_terminals_) out.push_back(start_node());
    for (const auto& [index, label] : labels_) {
        out.push_back({index, label, NodeKind::internal});
    }
    if (has_terminals_) out.push_back(end_node());
    return out;
}

namespace {

// Kahn's algorithm over the full node set; throws on leftover nodes.
void check_acyclic(const std::map<int, std::string>& labels, const EdgeSet& edges) {
    std::map<int, int> indegree;
    std::map<int, std::vector<int>> succ;
    indegree[kStartId] = 0;
    indegree[kEndId] = 0;
    for (const auto& [index, label] : labels) indegree[index] = 0;
    for (const auto& [from, to] : edges) {
        succ[from].push_back(to);
        ++indegree[to];
    }
    std::vector<int> ready;
    for (const auto& [id, deg] : indegree) {
        if (deg == 0) ready.push_back(id);
    }
    std::size_t removed = 0;
    while (!ready.empty()) {
        int id = ready.back();
        ready.pop_back();
        ++removed;
        for (int next : succ[id]) {
            if (--indegree[next] == 0) ready.push_back(next);
        }
    }
    if (removed != indegree.size()) throw CycleError("workflow graph contains a directed cycle");
}

}  // namespace

WorkflowGraph build_graph(const std::vector<std::pair<int, std::string>>& nodes,
                          const std::vector<Edge>& edges) {
    std::map<int, std::string> labels;
    for (const auto& [index, label] : nodes) {
        if (index < 1 || index >= kEndId) {
            throw std::invalid_argument("internal node index must be a positive integer, got " +
                                        std::to_string(index));
        }
        if (!labels.emplace(index, label).second) {
            throw DuplicateIndexError("duplicate node index " + std::to_string(index));
        }
    }

    EdgeSet edge_set;
    for (const auto& [from, to] : edges) {
        for (int endpoint : {from, to}) {
            if (!is_terminal(endpoint) && labels.count(endpoint) == 0) {
                throw DanglingEdgeError("edge references undeclared index " +
                                        std::to_string(endpoint));
            }
        }
        if (is_end(from)) throw DanglingEdgeError("END cannot have outgoing edges");
        if (is_start(to)) throw DanglingEdgeError("START cannot have incoming edges");
        if (from == to) throw CycleError("self-loop on node " + std::to_string(from));
        edge_set.insert({from, to});
    }

    check_acyclic(labels, edge_set);

    // Materialize the terminals: wire START to every node with no incoming
    // edge and every node with no outgoing edge to END.
    std::map<int, int> indegree, outdegree;
    for (const auto& [index, label] : labels) indegree[index] = outdegree[index] = 0;
    for (const auto& [from, to] : edge_set) {
        if (!is_terminal(to)) ++indegree[to];
        if (!is_terminal(from)) ++outdegree[from];
    }
    for (const auto& [index, label] : labels) {
        if (indegree[index] == 0) edge_set.insert({kStartId, index});
        if (outdegree[index] == 0) edge_set.insert({index, kEndId});
    }
    if (labels.empty()) edge_set.insert({kStartId, kEndId});

    return WorkflowGraph(std::move(labels), std::move(edge_set), true);
}

WorkflowGraph strip_terminals(const WorkflowGraph& g) {
    return WorkflowGraph(g.labels_, g.internal_edges(), false);
}

WorkflowGraph induced_subgraph(const WorkflowGraph& g, const std::vector<int>& subset) {
    std::set<int> keep;
    for (int id : subset) {
        if (!g.contains(id)) {
            throw UnknownNodeError("subset references node " + std::to_string(id) +
                                   " that is not in the graph");
        }
        keep.insert(id);
    }
    const bool has_start = keep.count(kStartId) > 0;
    const bool has_end = keep.count(kEndId) > 0;
    if (has_start != has_end) {
        throw std::invalid_argument("subset must contain both terminals or neither");
    }

    std::map<int, std::string> labels;
    for (const auto& [index, label] : g.labels_) {
        if (keep.count(index)) labels.emplace(index, label);
    }
    EdgeSet edges;
    for (const auto& [from, to] : g.edges_) {
        if (keep.count(from) && keep.count(to)) edges.insert({from, to});
    }
    return WorkflowGraph(std::move(labels), std::move(edges), has_start && has_end);
}

namespace {

struct InternalDag {
    std::vector<int> ids;                    // ascending
    std::map<int, std::vector<int>> succ;    // internal -> internal
    std::map<int, int> indegree;
};

InternalDag internal_dag(const WorkflowGraph& g) {
    InternalDag dag;
    dag.ids = g.internal_indices();
    for (int id : dag.ids) dag.indegree[id] = 0;
    for (const auto& [from, to] : g.edges()) {
        if (is_terminal(from) || is_terminal(to)) continue;
        dag.succ[from].push_back(to);
        ++dag.indegree[to];
    }
    return dag;
}

}  // namespace

NodeChain deterministic_topo_sort(const WorkflowGraph& g) {
    InternalDag dag = internal_dag(g);
    std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
    for (int id : dag.ids) {
        if (dag.indegree[id] == 0) ready.push(id);
    }
    NodeChain chain;
    chain.nodes.reserve(dag.ids.size());
    while (!ready.empty()) {
        int id = ready.top();
        ready.pop();
        chain.nodes.push_back({id, g.label_of(id), NodeKind::internal});
        for (int next : dag.succ[id]) {
            if (--dag.indegree[next] == 0) ready.push(next);
        }
    }
    if (chain.size() != dag.ids.size()) throw CycleError("workflow graph contains a directed cycle");
    return chain;
}

std::vector<NodeChain> enumerate_topo_orders(const WorkflowGraph& g, int cap) {
    if (cap < 1) throw std::invalid_argument("cap must be >= 1");
    InternalDag dag = internal_dag(g);
    const std::size_t n = dag.ids.size();

    std::vector<std::vector<int>> orders;
    std::vector<int> current;
    current.reserve(n);
    std::map<int, bool> used;
    for (int id : dag.ids) used[id] = false;

    // Depth-first over ready nodes in ascending index order; emits orders in
    // lexicographic order, so truncation at cap keeps the smallest ones.
    std::function<bool()> recurse = [&]() -> bool {
        if (current.size() == n) {
            orders.push_back(current);
            return orders.size() < static_cast<std::size_t>(cap);
        }
        for (int id : dag.ids) {
            if (used[id] || dag.indegree[id] != 0) continue;
            used[id] = true;
            for (int next : dag.succ[id]) --dag.indegree[next];
            current.push_back(id);
            bool keep_going = recurse();
            current.pop_back();
            for (int next : dag.succ[id]) ++dag.indegree[next];
            used[id] = false;
            if (!keep_going) return false;
        }
        return true;
    };
    recurse();

    if (orders.empty() || orders.front().size() != n) {
        // a cycle leaves every enumeration short
        throw CycleError("workflow graph contains a directed cycle");
    }

    std::vector<NodeChain> chains;
    chains.reserve(orders.size());
    for (const auto& order : orders) {
        NodeChain chain;
        chain.nodes.reserve(order.size());
        for (int id : order) chain.nodes.push_back({id, g.label_of(id), NodeKind::internal});
        chains.push_back(std::move(chain));
    }
    return chains;
}

long long count_topo_orders(const WorkflowGraph& g, long long limit) {
    if (limit < 1) throw std::invalid_argument("limit must be >= 1");
    InternalDag dag = internal_dag(g);
    const std::size_t n = dag.ids.size();

    long long count = 0;
    std::size_t depth = 0;
    std::map<int, bool> used;
    for (int id : dag.ids) used[id] = false;

    std::function<bool()> recurse = [&]() -> bool {
        if (depth == n) {
            ++count;
            return count < limit;
        }
        for (int id : dag.ids) {
            if (used[id] || dag.indegree[id] != 0) continue;
            used[id] = true;
            for (int next : dag.succ[id]) --dag.indegree[next];
            ++depth;
            bool keep_going = recurse();
            --depth;
            for (int next : dag.succ[id]) ++dag.indegree[next];
            used[id] = false;
            if (!keep_going) return false;
        }
        return true;
    };
    recurse();

    if (count == 0) throw CycleError("workflow graph contains a directed cycle");
    return count;
}

}  // namespace worfeval
