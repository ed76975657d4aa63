#pragma once

#include <map>
#include <string>
#include <vector>

#include "worfeval/chain_eval.hpp"
#include "worfeval/graph_eval.hpp"
#include "worfeval/parser.hpp"
#include "worfeval/similarity.hpp"

namespace worfeval {

enum class ReportFormat { markdown, csv, jsonl };

struct EvalConfig {
    double beta = 0.6;
    int topo_cap = 20;
    SimilarityConfig similarity;
    bool include_terminals = false;
    int workers = 1;
    ParseMode parse_mode = ParseMode::lenient;
};

struct SampleResult {
    std::string id;
    Scenario scenario = Scenario::function_call;
    ChainScore chain;
    GraphScore graph;
    bool format_error = false;
    bool missing_prediction = false;
    bool empty_prediction = false;
};

struct ScenarioAverage {
    int count = 0;
    double f1_chain = 0.0;
    double f1_graph = 0.0;
};

// Per-scenario macro averages in the shape of the benchmark's result table;
// the overall row is the unweighted mean across scenarios present.
struct Report {
    std::vector<std::pair<Scenario, ScenarioAverage>> per_scenario;
    double avg_f1_chain = 0.0;
    double avg_f1_graph = 0.0;
    double micro_f1_chain = 0.0;
    double micro_f1_graph = 0.0;
    int sample_count = 0;
    int format_error_count = 0;
    int missing_prediction_count = 0;
    int empty_prediction_count = 0;
    // config snapshot
    double beta = 0.6;
    int topo_cap = 20;
    std::string provider;
    bool include_terminals = false;
};

// Full pipeline for one sample: similarity matrix, matching, chain score,
// graph score. The provider must match cfg.similarity.
SampleResult evaluate_one(const GoldSample& gold, const Prediction& pred,
                          const SimilarityProvider& provider, const EvalConfig& cfg);

// Scores every gold sample against the prediction with the same id; gold
// samples without a prediction score zero and are flagged. Prediction ids
// without a gold sample raise JoinError. Results keep gold order.
std::vector<SampleResult> evaluate_samples(const std::vector<GoldSample>& gold,
                                           const std::vector<Prediction>& predictions,
                                           const EvalConfig& cfg);

std::vector<SampleResult> evaluate(const std::string& gold_path, const std::string& pred_path,
                                   const EvalConfig& cfg);

Report aggregate(const std::vector<SampleResult>& results, const EvalConfig& cfg);

std::string render_markdown(const Report& report);
std::string render_csv(const std::vector<SampleResult>& results);
std::string render_jsonl(const std::vector<SampleResult>& results, const Report& report);
std::string render_report(const std::vector<SampleResult>& results, const Report& report,
                          ReportFormat format);

struct DatasetStats {
    int sample_count = 0;
    // cumulative shares of samples whose topological-order count stays within
    // each bucket, in percent
    double pct_le5 = 0.0;
    double pct_le10 = 0.0;
    double pct_le20 = 0.0;
    double pct_le50 = 0.0;
    double pct_le100 = 0.0;
    double mean_internal_nodes = 0.0;
    double median_internal_nodes = 0.0;
    std::map<int, int> node_histogram;
};

DatasetStats dataset_stats(const std::vector<GoldSample>& samples);
DatasetStats dataset_stats(const std::string& gold_path);

}  // namespace worfeval
