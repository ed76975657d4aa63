#include "worfeval/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "worfeval/errors.hpp"
#include "worfeval/qc.hpp"

namespace worfeval {

namespace {

using json = nlohmann::json;

// Declared node indices above this are treated as label text, and edge
// tokens above it as references that can never resolve.
constexpr int kMaxNodeIndex = 1'000'000;

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i]))) {
            return false;
        }
    }
    return true;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(start, nl - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        start = nl + 1;
    }
    return lines;
}

bool is_section_header(std::string_view line, std::string_view name, ParseMode mode) {
    std::string_view t = trim(line);
    if (mode == ParseMode::strict) {
        return t.size() == name.size() + 1 && t.substr(0, name.size()) == name && t.back() == ':';
    }
    if (t.empty() || t.back() != ':') return false;
    return iequals(t.substr(0, t.size() - 1), name);
}

// Parses a non-negative integer; rejects overlong/overflowing digit runs.
std::optional<int> parse_int(std::string_view s) {
    if (s.empty() || s.size() > 7) return std::nullopt;
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return value;
}

struct NodeLine {
    std::optional<int> explicit_index;
    std::string label;
};

// Lenient node line forms, in order of preference:
//   "3: label" / "3. label"  -> explicit index
//   "b: label" / "b. label"  -> presentation letter, positional index
//   "label"                  -> positional index
NodeLine parse_node_line_lenient(std::string_view raw) {
    std::string_view s = trim(raw);
    if (s.size() >= 2 && (s[0] == '-' || s[0] == '*') &&
        std::isspace(static_cast<unsigned char>(s[1]))) {
        s = trim(s.substr(1));
    } else if (s.size() >= 3 && s.substr(0, 3) == "\xE2\x80\xA2") {  // bullet
        s = trim(s.substr(3));
    }

    std::size_t digits = 0;
    while (digits < s.size() && std::isdigit(static_cast<unsigned char>(s[digits]))) ++digits;
    if (digits > 0) {
        std::size_t sep = digits;
        while (sep < s.size() && (s[sep] == ' ' || s[sep] == '\t')) ++sep;
        if (sep < s.size() && (s[sep] == ':' || s[sep] == '.')) {
            std::optional<int> index = parse_int(s.substr(0, digits));
            if (index && *index >= 1 && *index <= kMaxNodeIndex) {
                return {index, std::string(trim(s.substr(sep + 1)))};
            }
        }
    }

    if (s.size() >= 2 && std::isalpha(static_cast<unsigned char>(s[0]))) {
        std::size_t sep = 1;
        while (sep < s.size() && (s[sep] == ' ' || s[sep] == '\t')) ++sep;
        if (sep < s.size() && (s[sep] == ':' || s[sep] == '.')) {
            std::string label(trim(s.substr(sep + 1)));
            if (!label.empty()) return {std::nullopt, std::move(label)};
        }
    }

    return {std::nullopt, std::string(s)};
}

std::optional<NodeLine> parse_node_line_strict(std::string_view raw) {
    std::string_view s = trim(raw);
    std::size_t digits = 0;
    while (digits < s.size() && std::isdigit(static_cast<unsigned char>(s[digits]))) ++digits;
    if (digits == 0 || digits >= s.size() || s[digits] != ':') return std::nullopt;
    std::optional<int> index = parse_int(s.substr(0, digits));
    if (!index || *index < 1 || *index > kMaxNodeIndex) return std::nullopt;
    std::string label(trim(s.substr(digits + 1)));
    if (label.empty()) return std::nullopt;
    return NodeLine{index, std::move(label)};
}

struct EndpointParse {
    std::optional<int> id;
    bool looks_numeric = false;
};

EndpointParse parse_endpoint(std::string_view token) {
    token = trim(token);
    if (iequals(token, kStartLabel)) return {kStartId, false};
    if (iequals(token, kEndLabel)) return {kEndId, false};
    bool numeric = !token.empty() &&
                   std::all_of(token.begin(), token.end(),
                               [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    if (!numeric) return {std::nullopt, false};
    std::optional<int> value = parse_int(token);
    if (!value || *value < 1 || *value > kMaxNodeIndex) return {std::nullopt, true};
    return {value, true};
}

ParseResult fail(FormatErrorKind kind, std::string message) {
    ParseResult r;
    r.error = FormatDiag{kind, std::move(message)};
    return r;
}

std::string endpoint_token(int id) {
    if (is_start(id)) return kStartLabel;
    if (is_end(id)) return kEndLabel;
    return std::to_string(id);
}

}  // namespace

std::string_view to_string(FormatErrorKind kind) {
    switch (kind) {
        case FormatErrorKind::missing_node_section: return "missing-node-section";
        case FormatErrorKind::missing_edge_section: return "missing-edge-section";
        case FormatErrorKind::bad_edge_token: return "bad-edge-token";
        case FormatErrorKind::undefined_node_reference: return "undefined-node-reference";
        case FormatErrorKind::duplicate_index: return "duplicate-index";
        case FormatErrorKind::bad_node_line: return "bad-node-line";
    }
    return "unknown";
}

ParseResult parse_workflow_text(std::string_view text, ParseMode mode) {
    const auto lines = split_lines(text);

    std::size_t node_header = lines.size();
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (is_section_header(lines[i], "Node", mode)) {
            node_header = i;
            break;
        }
    }
    if (node_header == lines.size()) {
        return fail(FormatErrorKind::missing_node_section, "no \"Node:\" section found");
    }

    std::size_t edge_header = lines.size();
    for (std::size_t i = node_header + 1; i < lines.size(); ++i) {
        if (is_section_header(lines[i], "Edge", mode)) {
            edge_header = i;
            break;
        }
    }
    if (edge_header == lines.size()) {
        return fail(FormatErrorKind::missing_edge_section, "no \"Edge:\" section found");
    }

    // -- node section --
    std::vector<NodeLine> node_lines;
    for (std::size_t i = node_header + 1; i < edge_header; ++i) {
        if (trim(lines[i]).empty()) continue;
        if (mode == ParseMode::strict) {
            auto parsed = parse_node_line_strict(lines[i]);
            if (!parsed) {
                return fail(FormatErrorKind::bad_node_line,
                            "node line " + std::to_string(i + 1) + " is not \"N: label\"");
            }
            node_lines.push_back(std::move(*parsed));
        } else {
            node_lines.push_back(parse_node_line_lenient(lines[i]));
        }
    }
    if (node_lines.empty()) {
        return fail(FormatErrorKind::missing_node_section, "node section declares no nodes");
    }

    ParsedWorkflow workflow;
    std::set<int> declared;
    for (std::size_t pos = 0; pos < node_lines.size(); ++pos) {
        int index = node_lines[pos].explicit_index.value_or(static_cast<int>(pos) + 1);
        if (!declared.insert(index).second) {
            return fail(FormatErrorKind::duplicate_index,
                        "node index " + std::to_string(index) + " declared twice");
        }
        workflow.nodes.emplace_back(index, std::move(node_lines[pos].label));
    }

    // -- edge section --
    std::string edge_text;
    for (std::size_t i = edge_header + 1; i < lines.size(); ++i) {
        edge_text.append(lines[i]);
        edge_text.push_back(' ');
    }

    std::size_t pos = 0;
    while (pos < edge_text.size()) {
        char c = edge_text[pos];
        if (c == '(') {
            std::size_t close = edge_text.find(')', pos + 1);
            if (close == std::string::npos) {
                return fail(FormatErrorKind::bad_edge_token, "unterminated edge pair");
            }
            std::string_view inner(edge_text.data() + pos + 1, close - pos - 1);
            std::size_t comma = inner.find(',');
            if (comma == std::string_view::npos || inner.find(',', comma + 1) != std::string_view::npos) {
                return fail(FormatErrorKind::bad_edge_token,
                            "edge pair \"(" + std::string(inner) + ")\" must have two endpoints");
            }
            EndpointParse from = parse_endpoint(inner.substr(0, comma));
            EndpointParse to = parse_endpoint(inner.substr(comma + 1));
            for (const EndpointParse& e : {from, to}) {
                if (!e.id && !e.looks_numeric) {
                    return fail(FormatErrorKind::bad_edge_token,
                                "bad endpoint in edge pair \"(" + std::string(inner) + ")\"");
                }
                if ((!e.id && e.looks_numeric) ||
                    (e.id && !is_terminal(*e.id) && declared.count(*e.id) == 0)) {
                    return fail(FormatErrorKind::undefined_node_reference,
                                "edge pair \"(" + std::string(inner) +
                                    ")\" references an undeclared node");
                }
            }
            workflow.edges.emplace_back(*from.id, *to.id);
            pos = close + 1;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            ++pos;
        } else if (mode == ParseMode::strict) {
            return fail(FormatErrorKind::bad_edge_token,
                        std::string("unexpected character '") + c + "' in edge section");
        } else {
            ++pos;  // lenient: prose between pairs is ignored
        }
    }
    if (mode == ParseMode::strict && workflow.edges.empty()) {
        return fail(FormatErrorKind::bad_edge_token, "edge section declares no edges");
    }

    ParseResult r;
    r.parsed = std::move(workflow);
    return r;
}

std::string serialize_workflow(const WorkflowGraph& g, const NodeChain& chain) {
    std::ostringstream out;
    out << "Node:\n";
    for (const auto& node : chain.nodes) {
        out << node.index << ": " << node.label << "\n";
    }
    out << "Edge:\n";
    bool first = true;
    for (const auto& [from, to] : g.edges()) {
        if (!first) out << ' ';
        first = false;
        out << '(' << endpoint_token(from) << ", " << endpoint_token(to) << ')';
    }
    return out.str();
}

std::string serialize_workflow(const WorkflowGraph& g) {
    return serialize_workflow(g, deterministic_topo_sort(g));
}

std::string_view to_string(Scenario scenario) {
    switch (scenario) {
        case Scenario::function_call: return "function_call";
        case Scenario::problem_solving: return "problem_solving";
        case Scenario::embodied: return "embodied";
        case Scenario::open_grounded: return "open_grounded";
        case Scenario::held_out: return "held_out";
    }
    return "unknown";
}

std::optional<Scenario> scenario_from_string(std::string_view name) {
    for (Scenario s : {Scenario::function_call, Scenario::problem_solving, Scenario::embodied,
                       Scenario::open_grounded, Scenario::held_out}) {
        if (name == to_string(s)) return s;
    }
    return std::nullopt;
}

namespace {

// Shared JSONL edge-array decoding for dataset and structured predictions.
// Returns nullopt (with a diagnostic) when an endpoint is out of range.
std::optional<Edge> decode_edge(const json& pair, int line_no, std::string* why) {
    if (!pair.is_array() || pair.size() != 2) {
        throw SchemaError(line_no, "edges", "each edge must be a 2-element array");
    }
    int ids[2];
    for (int k = 0; k < 2; ++k) {
        const json& element = pair[k];
        if (element.is_string()) {
            std::string token = element.get<std::string>();
            if (token == kStartLabel) {
                ids[k] = kStartId;
            } else if (token == kEndLabel) {
                ids[k] = kEndId;
            } else {
                throw SchemaError(line_no, "edges",
                                  "edge endpoint string must be START or END, got \"" + token +
                                      "\"");
            }
        } else if (element.is_number_integer()) {
            long long v = element.get<long long>();
            if (v < 1 || v > kMaxNodeIndex) {
                if (why) *why = "edge endpoint " + std::to_string(v) + " out of range";
                return std::nullopt;
            }
            ids[k] = static_cast<int>(v);
        } else {
            throw SchemaError(line_no, "edges", "edge endpoint must be an integer or START/END");
        }
    }
    return Edge{ids[0], ids[1]};
}

const json& require_field(const json& record, const char* name, int line_no) {
    auto it = record.find(name);
    if (it == record.end()) throw SchemaError(line_no, name, "missing required field");
    return *it;
}

std::string require_string(const json& record, const char* name, int line_no) {
    const json& value = require_field(record, name, line_no);
    if (!value.is_string()) throw SchemaError(line_no, name, "must be a string");
    return value.get<std::string>();
}

std::vector<std::string> require_string_array(const json& record, const char* name, int line_no) {
    const json& value = require_field(record, name, line_no);
    if (!value.is_array()) throw SchemaError(line_no, name, "must be an array of strings");
    std::vector<std::string> out;
    for (const json& element : value) {
        if (!element.is_string()) throw SchemaError(line_no, name, "must be an array of strings");
        out.push_back(element.get<std::string>());
    }
    return out;
}

json parse_record(const std::string& line, int line_no) {
    json record = json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.is_object()) {
        throw SchemaError(line_no, "record", "not a JSON object");
    }
    return record;
}

}  // namespace

DatasetLoad load_dataset(const std::string& path, bool enforce_qc_invariants) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open dataset file: " + path);

    DatasetLoad out;
    std::set<std::string> seen_ids;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        json record = parse_record(line, line_no);

        GoldSample sample;
        sample.id = require_string(record, "id", line_no);
        if (!seen_ids.insert(sample.id).second) {
            throw SchemaError(line_no, "id", "duplicate sample id \"" + sample.id + "\"");
        }
        std::string scenario_name = require_string(record, "scenario", line_no);
        auto scenario = scenario_from_string(scenario_name);
        if (!scenario) {
            throw SchemaError(line_no, "scenario", "unknown scenario \"" + scenario_name + "\"");
        }
        sample.scenario = *scenario;
        sample.task = require_string(record, "task", line_no);
        sample.action_list = require_string_array(record, "action_list", line_no);

        std::vector<std::string> node_labels = require_string_array(record, "nodes", line_no);
        std::vector<std::pair<int, std::string>> nodes;
        for (std::size_t i = 0; i < node_labels.size(); ++i) {
            if (trim(node_labels[i]).empty()) {
                throw SchemaError(line_no, "nodes", "node labels must be non-empty");
            }
            nodes.emplace_back(static_cast<int>(i) + 1, node_labels[i]);
        }

        const json& edges_json = require_field(record, "edges", line_no);
        if (!edges_json.is_array()) throw SchemaError(line_no, "edges", "must be an array");
        std::vector<Edge> edges;
        for (const json& pair : edges_json) {
            std::string why;
            auto edge = decode_edge(pair, line_no, &why);
            if (!edge) throw SchemaError(line_no, "edges", why);
            if (!is_terminal(edge->first) && edge->first > static_cast<int>(nodes.size())) {
                throw SchemaError(line_no, "edges",
                                  "edge references undeclared node " + std::to_string(edge->first));
            }
            if (!is_terminal(edge->second) && edge->second > static_cast<int>(nodes.size())) {
                throw SchemaError(line_no, "edges",
                                  "edge references undeclared node " +
                                      std::to_string(edge->second));
            }
            edges.push_back(*edge);
        }

        try {
            sample.gold_graph = build_graph(nodes, edges);
        } catch (const EvalError& e) {
            throw SchemaError(line_no, "edges", e.what());
        }
        sample.gold_chain = make_chain(nodes);

        if (enforce_qc_invariants) {
            std::string reason;
            if (sample.gold_graph.internal_count() < 2) {
                reason = "fewer than 2 internal nodes";
            } else if (sample.gold_graph.edge_count() < 2) {
                reason = "fewer than 2 edges";
            } else if (!check_topo_consistency(sample.gold_graph, sample.gold_chain)) {
                reason = "node chain is not the deterministic topological order";
            }
            if (!reason.empty()) {
                out.rejected.push_back("line " + std::to_string(line_no) + " (id " + sample.id +
                                       "): " + reason);
                continue;
            }
        }
        out.samples.push_back(std::move(sample));
    }
    return out;
}

std::vector<Prediction> load_predictions(const std::string& path, ParseMode mode) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open prediction file: " + path);

    std::vector<Prediction> out;
    std::set<std::string> seen_ids;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        json record = parse_record(line, line_no);

        Prediction pred;
        pred.id = require_string(record, "id", line_no);
        if (!seen_ids.insert(pred.id).second) {
            throw SchemaError(line_no, "id", "duplicate prediction id \"" + pred.id + "\"");
        }

        const bool has_text = record.contains("raw_text");
        const bool has_nodes = record.contains("nodes") || record.contains("edges");
        if (has_text == has_nodes) {
            throw SchemaError(line_no, "raw_text",
                              "record must have either raw_text or nodes/edges");
        }

        if (has_text) {
            pred.raw_text = require_string(record, "raw_text", line_no);
            ParseResult parsed = parse_workflow_text(*pred.raw_text, mode);
            if (parsed.ok()) {
                pred.parsed = std::move(parsed.parsed);
            } else {
                pred.format_error = std::move(parsed.error);
            }
        } else {
            std::vector<std::string> node_labels = require_string_array(record, "nodes", line_no);
            ParsedWorkflow workflow;
            for (std::size_t i = 0; i < node_labels.size(); ++i) {
                workflow.nodes.emplace_back(static_cast<int>(i) + 1, node_labels[i]);
            }
            const json& edges_json = require_field(record, "edges", line_no);
            if (!edges_json.is_array()) throw SchemaError(line_no, "edges", "must be an array");
            for (const json& pair : edges_json) {
                std::string why;
                auto edge = decode_edge(pair, line_no, &why);
                bool undefined = !edge;
                if (edge) {
                    for (int id : {edge->first, edge->second}) {
                        if (!is_terminal(id) && id > static_cast<int>(node_labels.size())) {
                            undefined = true;
                        }
                    }
                }
                if (undefined) {
                    pred.format_error =
                        FormatDiag{FormatErrorKind::undefined_node_reference,
                                   why.empty() ? "edge references an undeclared node" : why};
                    break;
                }
                workflow.edges.push_back(*edge);
            }
            if (!pred.format_error) pred.parsed = std::move(workflow);
        }
        out.push_back(std::move(pred));
    }
    return out;
}

}  // namespace worfeval
