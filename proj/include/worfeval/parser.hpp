#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "worfeval/graph.hpp"

namespace worfeval {

enum class ParseMode { lenient, strict };

enum class FormatErrorKind {
    missing_node_section,
    missing_edge_section,
    bad_edge_token,
    undefined_node_reference,
    duplicate_index,
    bad_node_line,  // strict mode only
};

std::string_view to_string(FormatErrorKind kind);

struct FormatDiag {
    FormatErrorKind kind;
    std::string message;

    friend bool operator==(const FormatDiag&, const FormatDiag&) = default;
};

// Raw parse output. Node order follows the text and defines the predicted
// chain; edges are kept as written (terminal references included) and may
// describe any directed graph, cyclic or not.
struct ParsedWorkflow {
    std::vector<std::pair<int, std::string>> nodes;
    std::vector<Edge> edges;

    friend bool operator==(const ParsedWorkflow&, const ParsedWorkflow&) = default;
};

struct ParseResult {
    std::optional<ParsedWorkflow> parsed;
    std::optional<FormatDiag> error;

    bool ok() const { return parsed.has_value(); }
};

// Total over arbitrary byte input: always returns either parsed or error.
ParseResult parse_workflow_text(std::string_view text, ParseMode mode = ParseMode::lenient);

// Canonical text form: node lines in chain order, then all edges sorted.
// parse(serialize(g)) reconstructs g exactly.
std::string serialize_workflow(const WorkflowGraph& g, const NodeChain& chain);
std::string serialize_workflow(const WorkflowGraph& g);

enum class Scenario { function_call, problem_solving, embodied, open_grounded, held_out };

std::string_view to_string(Scenario scenario);
std::optional<Scenario> scenario_from_string(std::string_view name);

struct GoldSample {
    std::string id;
    Scenario scenario = Scenario::function_call;
    std::string task;
    std::vector<std::string> action_list;
    WorkflowGraph gold_graph;
    NodeChain gold_chain;
};

struct Prediction {
    std::string id;
    std::optional<std::string> raw_text;
    std::optional<ParsedWorkflow> parsed;
    std::optional<FormatDiag> format_error;
};

struct DatasetLoad {
    std::vector<GoldSample> samples;
    // Line-numbered diagnostics for records that fail the post-QC invariants
    // (only populated when enforce_qc_invariants is on).
    std::vector<std::string> rejected;
};

// Line-delimited records; structural problems throw SchemaError with the line
// number. With enforce_qc_invariants, records whose graph/chain violate the
// QC guarantees are skipped and reported in `rejected` instead; pass false to
// load a pre-QC pool (the qc and stats commands do).
DatasetLoad load_dataset(const std::string& path, bool enforce_qc_invariants = true);

std::vector<Prediction> load_predictions(const std::string& path,
                                         ParseMode mode = ParseMode::lenient);

}  // namespace worfeval
