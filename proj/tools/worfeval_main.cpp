// worfeval: evaluate agent-generated workflows against gold workflow graphs.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "worfeval/errors.hpp"
#include "worfeval/harness.hpp"
#include "worfeval/qc.hpp"
#include "worfeval/schedule.hpp"

namespace {

using namespace worfeval;

void write_output(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw IoError("cannot open output file: " + out_path);
    out << content;
}

int run_eval(const std::string& gold_path, const std::string& pred_path, EvalConfig cfg,
             const std::string& provider_name, const std::string& report_name,
             const std::string& out_path) {
    if (provider_name == "exact") {
        cfg.similarity.provider = ProviderKind::exact;
    } else if (provider_name == "token") {
        cfg.similarity.provider = ProviderKind::token_cosine;
    } else if (provider_name == "embed-file") {
        cfg.similarity.provider = ProviderKind::embedding_vectors;
    } else if (provider_name == "embed-service") {
        cfg.similarity.provider = ProviderKind::embedding_service;
    } else if (provider_name == "sim-file") {
        cfg.similarity.provider = ProviderKind::precomputed_matrix;
    } else {
        std::cerr << "unknown provider: " << provider_name << "\n";
        return 2;
    }
    if (const char* endpoint = std::getenv("WORFEVAL_EMBED_ENDPOINT")) {
        cfg.similarity.endpoint = endpoint;
    }

    ReportFormat format;
    if (report_name == "md") {
        format = ReportFormat::markdown;
    } else if (report_name == "csv") {
        format = ReportFormat::csv;
    } else if (report_name == "jsonl") {
        format = ReportFormat::jsonl;
    } else {
        std::cerr << "unknown report format: " << report_name << "\n";
        return 2;
    }

    DatasetLoad dataset = load_dataset(gold_path, true);
    for (const auto& diagnostic : dataset.rejected) {
        std::cerr << "warning: rejected gold record, " << diagnostic << "\n";
    }
    std::vector<Prediction> predictions = load_predictions(pred_path, cfg.parse_mode);

    std::vector<SampleResult> results = evaluate_samples(dataset.samples, predictions, cfg);
    Report report = aggregate(results, cfg);
    write_output(render_report(results, report, format), out_path);
    return 0;
}

int run_qc_command(const std::string& gold_path, const std::string& out_path) {
    DatasetLoad dataset = load_dataset(gold_path, false);
    QcReport report = run_qc(dataset.samples);

    std::string discard_lines;
    for (const auto& [id, reason] : report.discarded) {
        discard_lines += "{\"id\": \"" + id + "\", \"reason\": \"" +
                         std::string(to_string(reason)) + "\"}\n";
    }
    write_output(discard_lines, out_path);

    std::ostream& info = out_path.empty() ? std::cerr : std::cout;
    info << "samples: " << report.total << "\n";
    info << "kept: " << report.kept.size() << "\n";
    info << "discarded: " << report.discarded.size() << "\n";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f%%", report.too_simple_rate * 100.0);
    info << "too-simple rate: " << buf << "\n";
    std::snprintf(buf, sizeof(buf), "%.2f%%", report.topo_mismatch_rate * 100.0);
    info << "topo-mismatch rate: " << buf << "\n";
    std::snprintf(buf, sizeof(buf), "%.2f%%", report.external_reject_rate * 100.0);
    info << "external-reject rate: " << buf << "\n";
    return 0;
}

int run_stats(const std::string& gold_path) {
    DatasetStats stats = dataset_stats(gold_path);
    std::cout << "samples: " << stats.sample_count << "\n";
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "topological-order buckets (cumulative %%): <=5: %.2f  <=10: %.2f  <=20: %.2f  "
                  "<=50: %.2f  <=100: %.2f",
                  stats.pct_le5, stats.pct_le10, stats.pct_le20, stats.pct_le50, stats.pct_le100);
    std::cout << buf << "\n";
    std::snprintf(buf, sizeof(buf), "mean internal nodes: %.2f", stats.mean_internal_nodes);
    std::cout << buf << "\n";
    std::snprintf(buf, sizeof(buf), "median internal nodes: %.1f", stats.median_internal_nodes);
    std::cout << buf << "\n";
    std::cout << "node count histogram:\n";
    for (const auto& [nodes, count] : stats.node_histogram) {
        std::cout << "  " << nodes << ": " << count << "\n";
    }
    return 0;
}

int run_critpath(const std::string& gold_path, const std::string& durations_path,
                 const std::string& out_path) {
    DatasetLoad dataset = load_dataset(gold_path, true);
    auto durations = load_durations(durations_path);

    std::string lines;
    double speedup_sum = 0.0;
    int scored = 0;
    for (const auto& sample : dataset.samples) {
        auto it = durations.find(sample.id);
        if (it == durations.end()) {
            std::cerr << "warning: no durations for sample " << sample.id << ", skipped\n";
            continue;
        }
        CriticalPath cp = critical_path(sample.gold_graph, it->second);
        double boost = speedup(sample.gold_graph, it->second);
        speedup_sum += boost;
        ++scored;

        char buf[64];
        lines += "{\"id\": \"" + sample.id + "\", \"length\": ";
        std::snprintf(buf, sizeof(buf), "%.6f", cp.length);
        lines += buf;
        lines += ", \"speedup\": ";
        std::snprintf(buf, sizeof(buf), "%.6f", boost);
        lines += buf;
        lines += ", \"path\": [";
        for (std::size_t i = 0; i < cp.path.size(); ++i) {
            if (i > 0) lines += ", ";
            lines += std::to_string(cp.path[i]);
        }
        lines += "]}\n";
    }
    write_output(lines, out_path);

    std::ostream& info = out_path.empty() ? std::cerr : std::cout;
    info << "samples scored: " << scored << "\n";
    if (scored > 0) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.4f", speedup_sum / scored);
        info << "mean speedup: " << buf << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"WorfEval workflow evaluation"};
    app.require_subcommand(1);

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "score predictions against gold workflows");
    std::string gold_path, pred_path, out_path;
    std::string provider_name = "exact";
    std::string report_name = "md";
    EvalConfig cfg;
    eval_cmd->add_option("--gold", gold_path, "gold dataset (jsonl)")->required();
    eval_cmd->add_option("--pred", pred_path, "prediction file (jsonl)")->required();
    eval_cmd->add_option("--beta", cfg.beta, "similarity threshold")->check(CLI::Range(0.0, 1.0));
    eval_cmd->add_option("--topo-cap", cfg.topo_cap, "max gold topological orders")
        ->check(CLI::PositiveNumber);
    eval_cmd->add_option("--provider", provider_name,
                         "exact|token|embed-file|embed-service|sim-file");
    eval_cmd->add_option("--embed-file", cfg.similarity.embedding_path,
                         "precomputed embedding file for embed-file");
    eval_cmd->add_option("--sim-file", cfg.similarity.matrix_path,
                         "precomputed similarity file for sim-file");
    eval_cmd->add_option("--embed-endpoint", cfg.similarity.endpoint,
                         "embedding service URL (env WORFEVAL_EMBED_ENDPOINT overrides)");
    eval_cmd->add_option("--embed-timeout", cfg.similarity.timeout_seconds,
                         "embedding request timeout in seconds");
    eval_cmd->add_option("--embed-retries", cfg.similarity.retries, "embedding request retries");
    eval_cmd->add_flag("--include-terminals", cfg.include_terminals,
                       "count START/END in scoring");
    eval_cmd->add_option("--workers", cfg.workers, "scoring threads")->check(CLI::PositiveNumber);
    eval_cmd->add_option("--report", report_name, "md|csv|jsonl");
    eval_cmd->add_option("--out", out_path, "output path (stdout when omitted)");

    // qc
    auto* qc_cmd = app.add_subcommand("qc", "run the quality-control filters");
    std::string qc_gold, qc_out;
    qc_cmd->add_option("--gold", qc_gold, "gold dataset (jsonl)")->required();
    qc_cmd->add_option("--out", qc_out, "discard report path (stdout when omitted)");

    // stats
    auto* stats_cmd = app.add_subcommand("stats", "dataset statistics");
    std::string stats_gold;
    stats_cmd->add_option("--gold", stats_gold, "gold dataset (jsonl)")->required();

    // critpath
    auto* crit_cmd = app.add_subcommand("critpath", "critical-path analysis");
    std::string crit_gold, crit_durations, crit_out;
    crit_cmd->add_option("--gold", crit_gold, "gold dataset (jsonl)")->required();
    crit_cmd->add_option("--durations", crit_durations, "duration file (jsonl)")->required();
    crit_cmd->add_option("--out", crit_out, "output path (stdout when omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (eval_cmd->parsed()) {
            return run_eval(gold_path, pred_path, cfg, provider_name, report_name, out_path);
        }
        if (qc_cmd->parsed()) return run_qc_command(qc_gold, qc_out);
        if (stats_cmd->parsed()) return run_stats(stats_gold);
        if (crit_cmd->parsed()) return run_critpath(crit_gold, crit_durations, crit_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
