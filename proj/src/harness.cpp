#include "worfeval/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "worfeval/errors.hpp"

namespace worfeval {

namespace {

using ordered_json = nlohmann::ordered_json;

const Scenario kScenarioOrder[] = {Scenario::function_call, Scenario::problem_solving,
                                   Scenario::embodied, Scenario::open_grounded,
                                   Scenario::held_out};

std::string provider_kind_name(ProviderKind kind) {
    switch (kind) {
        case ProviderKind::exact: return "exact";
        case ProviderKind::token_cosine: return "token_cosine";
        case ProviderKind::precomputed_matrix: return "precomputed_matrix";
        case ProviderKind::embedding_vectors: return "embedding_vectors";
        case ProviderKind::embedding_service: return "embedding_service";
    }
    return "unknown";
}

std::string percent(double fraction) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", fraction * 100.0);
    return buf;
}

std::string fixed6(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    return buf;
}

std::string compact(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", value);
    return buf;
}

// Predicted nodes sorted by declared index; matrix columns use this order so
// the matcher's positional tie-break coincides with the id-level one.
std::vector<std::pair<int, std::string>> pred_by_index(const ParsedWorkflow& parsed) {
    auto nodes = parsed.nodes;
    std::sort(nodes.begin(), nodes.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return nodes;
}

NodeCorrespondence to_ids(const NodeCorrespondence& positional, const std::vector<int>& row_ids,
                          const std::vector<int>& col_ids) {
    NodeCorrespondence out;
    out.pairs.reserve(positional.size());
    for (const auto& pair : positional.pairs) {
        out.pairs.push_back({row_ids[pair.gold - 1], col_ids[pair.pred - 1], pair.weight});
    }
    return out;
}

}  // namespace

SampleResult evaluate_one(const GoldSample& gold, const Prediction& pred,
                          const SimilarityProvider& provider, const EvalConfig& cfg) {
    SampleResult result;
    result.id = gold.id;
    result.scenario = gold.scenario;

    if (pred.format_error) {
        result.format_error = true;
        return result;
    }
    const ParsedWorkflow& parsed = *pred.parsed;
    if (parsed.nodes.empty()) {
        result.empty_prediction = true;
        return result;
    }

    const auto pred_nodes = pred_by_index(parsed);

    std::vector<int> gold_ids, pred_ids;
    std::vector<std::string> gold_labels, pred_labels;
    if (cfg.include_terminals) {
        gold_ids.push_back(kStartId);
        gold_labels.push_back(kStartLabel);
        pred_ids.push_back(kStartId);
        pred_labels.push_back(kStartLabel);
    }
    for (const auto& [id, label] : gold.gold_graph.internal_labels()) {
        gold_ids.push_back(id);
        gold_labels.push_back(label);
    }
    for (const auto& [id, label] : pred_nodes) {
        pred_ids.push_back(id);
        pred_labels.push_back(label);
    }
    if (cfg.include_terminals) {
        gold_ids.push_back(kEndId);
        gold_labels.push_back(kEndLabel);
        pred_ids.push_back(kEndId);
        pred_labels.push_back(kEndLabel);
    }

    SimilarityMatrix matrix =
        build_similarity_matrix(gold_labels, pred_labels, provider, cfg.beta, gold.id);
    NodeCorrespondence corr = to_ids(max_weight_matching(matrix), gold_ids, pred_ids);

    const int gold_count = static_cast<int>(gold_ids.size());
    const int pred_count = static_cast<int>(pred_ids.size());

    // chain: textual node order, wrapped in terminals when those count
    std::vector<int> pred_chain_ids;
    if (cfg.include_terminals) pred_chain_ids.push_back(kStartId);
    for (const auto& [id, label] : parsed.nodes) pred_chain_ids.push_back(id);
    if (cfg.include_terminals) pred_chain_ids.push_back(kEndId);

    std::vector<std::vector<int>> gold_orders;
    for (const auto& chain : enumerate_topo_orders(gold.gold_graph, cfg.topo_cap)) {
        std::vector<int> order;
        if (cfg.include_terminals) order.push_back(kStartId);
        for (int id : chain.indices()) order.push_back(id);
        if (cfg.include_terminals) order.push_back(kEndId);
        gold_orders.push_back(std::move(order));
    }
    result.chain = score_chain_orders(gold_orders, pred_chain_ids, corr, gold_count, pred_count);

    // graph: predicted edges against gold edges under the correspondence
    EdgeSet pred_edges;
    for (const auto& [from, to] : parsed.edges) {
        if (cfg.include_terminals) {
            pred_edges.insert({from, to});
        } else if (!is_terminal(from) && !is_terminal(to)) {
            pred_edges.insert({from, to});
        }
    }
    const EdgeSet gold_edges =
        cfg.include_terminals ? gold.gold_graph.edges() : gold.gold_graph.internal_edges();
    result.graph = score_graph_edges(gold_edges, pred_edges, corr, gold_count, pred_count);

    return result;
}

std::vector<SampleResult> evaluate_samples(const std::vector<GoldSample>& gold,
                                           const std::vector<Prediction>& predictions,
                                           const EvalConfig& cfg) {
    std::map<std::string, const GoldSample*> gold_by_id;
    for (const auto& sample : gold) gold_by_id[sample.id] = &sample;

    std::map<std::string, const Prediction*> pred_by_id;
    for (const auto& pred : predictions) {
        if (gold_by_id.count(pred.id) == 0) {
            throw JoinError("prediction id \"" + pred.id + "\" has no gold sample");
        }
        pred_by_id[pred.id] = &pred;
    }

    const std::size_t n = gold.size();
    std::vector<SampleResult> results(n);

    const int workers = std::max(1, cfg.workers);
    std::vector<std::unique_ptr<SimilarityProvider>> providers;
    providers.push_back(make_provider(cfg.similarity));
    const bool per_worker_provider = workers > 1 && !providers.front()->concurrent_safe();
    if (per_worker_provider) {
        for (int i = 1; i < workers; ++i) providers.push_back(make_provider(cfg.similarity));
    }

    auto score_index = [&](std::size_t i, const SimilarityProvider& provider) {
        const GoldSample& sample = gold[i];
        auto it = pred_by_id.find(sample.id);
        if (it == pred_by_id.end()) {
            SampleResult missing;
            missing.id = sample.id;
            missing.scenario = sample.scenario;
            missing.missing_prediction = true;
            results[i] = std::move(missing);
        } else {
            results[i] = evaluate_one(sample, *it->second, provider, cfg);
        }
    };

    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) score_index(i, *providers.front());
        return results;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) {
        const SimilarityProvider* provider =
            per_worker_provider ? providers[t].get() : providers.front().get();
        pool.emplace_back([&, provider] {
            std::size_t i;
            while ((i = next.fetch_add(1)) < n) {
                try {
                    score_index(i, *provider);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& thread : pool) thread.join();
    if (failure) std::rethrow_exception(failure);
    return results;
}

std::vector<SampleResult> evaluate(const std::string& gold_path, const std::string& pred_path,
                                   const EvalConfig& cfg) {
    DatasetLoad dataset = load_dataset(gold_path, true);
    std::vector<Prediction> predictions = load_predictions(pred_path, cfg.parse_mode);
    return evaluate_samples(dataset.samples, predictions, cfg);
}

Report aggregate(const std::vector<SampleResult>& results, const EvalConfig& cfg) {
    Report report;
    report.beta = cfg.beta;
    report.topo_cap = cfg.topo_cap;
    report.provider = provider_kind_name(cfg.similarity.provider);
    report.include_terminals = cfg.include_terminals;
    report.sample_count = static_cast<int>(results.size());

    std::map<Scenario, std::vector<const SampleResult*>> grouped;
    for (const auto& result : results) {
        grouped[result.scenario].push_back(&result);
        if (result.format_error) ++report.format_error_count;
        if (result.missing_prediction) ++report.missing_prediction_count;
        if (result.empty_prediction) ++report.empty_prediction_count;
        report.micro_f1_chain += result.chain.f1;
        report.micro_f1_graph += result.graph.f1;
    }
    if (!results.empty()) {
        report.micro_f1_chain /= results.size();
        report.micro_f1_graph /= results.size();
    }

    for (Scenario scenario : kScenarioOrder) {
        auto it = grouped.find(scenario);
        if (it == grouped.end()) continue;
        ScenarioAverage avg;
        avg.count = static_cast<int>(it->second.size());
        for (const SampleResult* result : it->second) {
            avg.f1_chain += result->chain.f1;
            avg.f1_graph += result->graph.f1;
        }
        avg.f1_chain /= avg.count;
        avg.f1_graph /= avg.count;
        report.per_scenario.emplace_back(scenario, avg);
    }
    if (!report.per_scenario.empty()) {
        for (const auto& [scenario, avg] : report.per_scenario) {
            report.avg_f1_chain += avg.f1_chain;
            report.avg_f1_graph += avg.f1_graph;
        }
        report.avg_f1_chain /= report.per_scenario.size();
        report.avg_f1_graph /= report.per_scenario.size();
    }
    return report;
}

std::string render_markdown(const Report& report) {
    std::ostringstream out;
    out << "# WorfEval report\n\n";
    out << "| scenario | f1_chain | f1_graph | samples |\n";
    out << "| --- | ---: | ---: | ---: |\n";
    for (const auto& [scenario, avg] : report.per_scenario) {
        out << "| " << to_string(scenario) << " | " << percent(avg.f1_chain) << " | "
            << percent(avg.f1_graph) << " | " << avg.count << " |\n";
    }
    out << "| average | " << percent(report.avg_f1_chain) << " | " << percent(report.avg_f1_graph)
        << " | " << report.sample_count << " |\n\n";
    out << "samples: " << report.sample_count << "\n";
    out << "format errors: " << report.format_error_count << "\n";
    out << "missing predictions: " << report.missing_prediction_count << "\n";
    out << "empty predictions: " << report.empty_prediction_count << "\n";
    out << "micro averages: f1_chain " << percent(report.micro_f1_chain) << ", f1_graph "
        << percent(report.micro_f1_graph) << "\n";
    out << "config: beta=" << compact(report.beta) << " topo-cap=" << report.topo_cap
        << " provider=" << report.provider
        << " terminals=" << (report.include_terminals ? "included" : "excluded") << "\n";
    return out.str();
}

std::string render_csv(const std::vector<SampleResult>& results) {
    std::ostringstream out;
    out << "id,scenario,f1_chain,precision_chain,recall_chain,l,orders_used,"
           "f1_graph,precision_graph,recall_graph,k,format_error,missing_prediction,"
           "empty_prediction\n";
    for (const auto& r : results) {
        out << r.id << ',' << to_string(r.scenario) << ',' << fixed6(r.chain.f1) << ','
            << fixed6(r.chain.precision) << ',' << fixed6(r.chain.recall) << ',' << r.chain.l << ','
            << r.chain.orders_used << ',' << fixed6(r.graph.f1) << ',' << fixed6(r.graph.precision)
            << ',' << fixed6(r.graph.recall) << ',' << r.graph.k << ',' << (r.format_error ? 1 : 0)
            << ',' << (r.missing_prediction ? 1 : 0) << ',' << (r.empty_prediction ? 1 : 0) << '\n';
    }
    return out.str();
}

std::string render_jsonl(const std::vector<SampleResult>& results, const Report& report) {
    std::ostringstream out;
    for (const auto& r : results) {
        ordered_json record;
        record["id"] = r.id;
        record["scenario"] = to_string(r.scenario);
        record["format_error"] = r.format_error;
        record["missing_prediction"] = r.missing_prediction;
        record["empty_prediction"] = r.empty_prediction;
        record["chain"] = {{"l", r.chain.l},
                           {"precision", r.chain.precision},
                           {"recall", r.chain.recall},
                           {"f1", r.chain.f1},
                           {"orders_used", r.chain.orders_used}};
        record["graph"] = {{"k", r.graph.k},
                           {"precision", r.graph.precision},
                           {"recall", r.graph.recall},
                           {"f1", r.graph.f1},
                           {"certificate", r.graph.certificate}};
        out << record.dump() << '\n';
    }
    ordered_json summary;
    summary["samples"] = report.sample_count;
    summary["format_errors"] = report.format_error_count;
    summary["missing_predictions"] = report.missing_prediction_count;
    summary["empty_predictions"] = report.empty_prediction_count;
    ordered_json scenarios;
    for (const auto& [scenario, avg] : report.per_scenario) {
        scenarios[std::string(to_string(scenario))] = {
            {"count", avg.count}, {"f1_chain", avg.f1_chain}, {"f1_graph", avg.f1_graph}};
    }
    summary["per_scenario"] = scenarios;
    summary["avg_f1_chain"] = report.avg_f1_chain;
    summary["avg_f1_graph"] = report.avg_f1_graph;
    summary["micro_f1_chain"] = report.micro_f1_chain;
    summary["micro_f1_graph"] = report.micro_f1_graph;
    summary["config"] = {{"beta", report.beta},
                         {"topo_cap", report.topo_cap},
                         {"provider", report.provider},
                         {"include_terminals", report.include_terminals}};
    out << ordered_json{{"summary", summary}}.dump() << '\n';
    return out.str();
}

std::string render_report(const std::vector<SampleResult>& results, const Report& report,
                          ReportFormat format) {
    switch (format) {
        case ReportFormat::markdown: return render_markdown(report);
        case ReportFormat::csv: return render_csv(results);
        case ReportFormat::jsonl: return render_jsonl(results, report);
    }
    return {};
}

DatasetStats dataset_stats(const std::vector<GoldSample>& samples) {
    DatasetStats stats;
    stats.sample_count = static_cast<int>(samples.size());
    if (samples.empty()) return stats;

    int le5 = 0, le10 = 0, le20 = 0, le50 = 0, le100 = 0;
    std::vector<int> node_counts;
    for (const auto& sample : samples) {
        long long orders = count_topo_orders(sample.gold_graph, 101);
        if (orders <= 5) ++le5;
        if (orders <= 10) ++le10;
        if (orders <= 20) ++le20;
        if (orders <= 50) ++le50;
        if (orders <= 100) ++le100;
        int nodes = sample.gold_graph.internal_count();
        node_counts.push_back(nodes);
        ++stats.node_histogram[nodes];
        stats.mean_internal_nodes += nodes;
    }
    const double n = static_cast<double>(samples.size());
    stats.pct_le5 = 100.0 * le5 / n;
    stats.pct_le10 = 100.0 * le10 / n;
    stats.pct_le20 = 100.0 * le20 / n;
    stats.pct_le50 = 100.0 * le50 / n;
    stats.pct_le100 = 100.0 * le100 / n;
    stats.mean_internal_nodes /= n;

    std::sort(node_counts.begin(), node_counts.end());
    const std::size_t mid = node_counts.size() / 2;
    stats.median_internal_nodes =
        node_counts.size() % 2 == 1
            ? node_counts[mid]
            : (node_counts[mid - 1] + node_counts[mid]) / 2.0;
    return stats;
}

DatasetStats dataset_stats(const std::string& gold_path) {
    return dataset_stats(load_dataset(gold_path, false).samples);
}

}  // namespace worfeval
