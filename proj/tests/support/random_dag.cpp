#include "random_dag.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

namespace worfeval::fixtures {

WorkflowGraph gen_random_dag(const RandomDagSpec& spec) {
    std::mt19937_64 rng(spec.seed);
    std::uniform_int_distribution<int> node_count(spec.min_nodes, spec.max_nodes);
    const int n = node_count(rng);

    std::vector<int> rank(n);
    std::iota(rank.begin(), rank.end(), 0);
    std::shuffle(rank.begin(), rank.end(), rng);

    std::vector<std::pair<int, std::string>> nodes;
    for (int i = 1; i <= n; ++i) nodes.emplace_back(i, "subtask " + std::to_string(i));

    std::bernoulli_distribution keep(spec.edge_prob);
    std::vector<Edge> edges;
    for (int u = 1; u <= n; ++u) {
        for (int v = 1; v <= n; ++v) {
            if (u != v && rank[u - 1] < rank[v - 1] && keep(rng)) edges.emplace_back(u, v);
        }
    }
    return build_graph(nodes, edges);
}

GoldSample gen_random_gold_sample(const RandomDagSpec& spec, const std::string& id,
                                  Scenario scenario) {
    WorkflowGraph raw = gen_random_dag(spec);

    // Relabel along the deterministic order; the relabeled graph's
    // deterministic order is then exactly [1..n].
    std::vector<int> order = deterministic_topo_sort(raw).indices();
    std::map<int, int> renamed;
    for (std::size_t k = 0; k < order.size(); ++k) renamed[order[k]] = static_cast<int>(k) + 1;

    std::vector<std::pair<int, std::string>> nodes;
    for (std::size_t k = 0; k < order.size(); ++k) {
        nodes.emplace_back(static_cast<int>(k) + 1,
                           "subtask " + std::to_string(k + 1) + " of " + id);
    }
    std::vector<Edge> edges;
    for (const auto& [from, to] : raw.internal_edges()) {
        edges.emplace_back(renamed[from], renamed[to]);
    }

    GoldSample sample;
    sample.id = id;
    sample.scenario = scenario;
    sample.task = "synthetic task " + id;
    sample.action_list = {"do a step", "do another step"};
    sample.gold_graph = build_graph(nodes, edges);
    sample.gold_chain = make_chain(nodes);
    return sample;
}

ParsedWorkflow gen_random_prediction(const GoldSample& gold, const PerturbSpec& spec) {
    std::mt19937_64 rng(spec.seed);
    std::bernoulli_distribution keep(spec.keep_prob);

    std::vector<std::string> labels;
    for (const auto& node : gold.gold_chain.nodes) {
        if (keep(rng)) labels.push_back(node.label);
    }
    std::uniform_int_distribution<int> extra_count(0, spec.max_extra_nodes);
    const int extras = extra_count(rng);
    for (int j = 1; j <= extras; ++j) {
        labels.push_back("noise " + std::to_string(j) + " of " + gold.id);
    }
    std::shuffle(labels.begin(), labels.end(), rng);

    ParsedWorkflow parsed;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        parsed.nodes.emplace_back(static_cast<int>(i) + 1, labels[i]);
    }

    const int m = static_cast<int>(labels.size());
    std::bernoulli_distribution edge(spec.edge_prob);
    for (int u = 1; u <= m; ++u) {
        for (int v = 1; v <= m; ++v) {
            if (u != v && edge(rng)) parsed.edges.emplace_back(u, v);
        }
    }
    if (m > 0 && edge(rng)) parsed.edges.emplace_back(kStartId, 1);
    if (m > 0 && edge(rng)) parsed.edges.emplace_back(m, kEndId);
    return parsed;
}

}  // namespace worfeval::fixtures
