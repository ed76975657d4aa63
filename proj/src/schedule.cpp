#include "worfeval/schedule.hpp"

#include <algorithm>
#include <fstream>

#include "json.hpp"
#include "worfeval/errors.hpp"

namespace worfeval {

CriticalPath critical_path(const WorkflowGraph& g, const DurationMap& durations) {
    const std::vector<int> ids = g.internal_indices();
    for (int id : ids) {
        if (durations.count(id) == 0) {
            throw MissingDurationError("no duration for node " + std::to_string(id));
        }
    }
    CriticalPath result;
    if (ids.empty()) return result;

    // Path starts/ends follow the actual terminal edges when present,
    // otherwise fall back to degree-zero nodes.
    std::map<int, std::vector<int>> succ;
    std::map<int, bool> can_start, can_end, has_in, has_out;
    for (int id : ids) can_start[id] = can_end[id] = has_in[id] = has_out[id] = false;
    for (const auto& [from, to] : g.edges()) {
        if (is_start(from) && !is_terminal(to)) can_start[to] = true;
        if (is_end(to) && !is_terminal(from)) can_end[from] = true;
        if (!is_terminal(from) && !is_terminal(to)) {
            succ[from].push_back(to);
            has_in[to] = true;
            has_out[from] = true;
        }
    }
    if (!g.has_terminals()) {
        for (int id : ids) {
            can_start[id] = !has_in[id];
            can_end[id] = !has_out[id];
        }
    }

    // suffix[v] = best path sum from v (inclusive) to the end; tail[v] keeps
    // the chosen continuation value so the walk below can compare exactly.
    std::map<int, double> suffix, tail;
    std::vector<int> order = deterministic_topo_sort(g).indices();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int v = *it;
        double best_tail = can_end[v] ? 0.0 : -1.0;
        for (int w : succ[v]) best_tail = std::max(best_tail, suffix[w]);
        if (best_tail < 0.0) best_tail = 0.0;  // dead ends act as path ends
        tail[v] = best_tail;
        suffix[v] = durations.at(v) + best_tail;
    }

    double total = 0.0;
    for (int id : ids) {
        if (can_start[id]) total = std::max(total, suffix[id]);
    }
    result.length = total;

    // Greedy front-to-back walk: the smallest feasible node at each step
    // yields the lexicographically smallest maximizer.
    int current = -1;
    for (int id : ids) {
        if (can_start[id] && suffix[id] == total) {
            current = id;
            break;
        }
    }
    while (current != -1) {
        result.path.push_back(current);
        double remaining = tail[current];
        if (can_end[current] && remaining == 0.0) break;
        std::vector<int> next_ids = succ[current];
        std::sort(next_ids.begin(), next_ids.end());
        int next = -1;
        for (int w : next_ids) {
            if (suffix[w] == remaining) {
                next = w;
                break;
            }
        }
        current = next;
    }
    return result;
}

double speedup(const WorkflowGraph& g, const DurationMap& durations) {
    CriticalPath cp = critical_path(g, durations);
    double total = 0.0;
    for (int id : g.internal_indices()) total += durations.at(id);
    if (total <= 0.0) throw ZeroDurationError("total duration is zero");
    return total / cp.length;
}

std::map<std::string, DurationMap> load_durations(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open duration file: " + path);

    std::map<std::string, DurationMap> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json record = nlohmann::json::parse(line, nullptr, false);
        if (record.is_discarded() || !record.is_object()) {
            throw SchemaError(line_no, "record", "not a JSON object");
        }
        if (!record.contains("id") || !record["id"].is_string()) {
            throw SchemaError(line_no, "id", "missing or non-string");
        }
        if (!record.contains("durations") || !record["durations"].is_array()) {
            throw SchemaError(line_no, "durations", "missing or non-array");
        }
        DurationMap durations;
        int index = 0;
        for (const auto& cell : record["durations"]) {
            if (!cell.is_number()) throw SchemaError(line_no, "durations", "entries must be numbers");
            double value = cell.get<double>();
            if (value < 0.0) throw SchemaError(line_no, "durations", "durations must be >= 0");
            durations[++index] = value;
        }
        out[record["id"].get<std::string>()] = std::move(durations);
    }
    return out;
}

}  // namespace worfeval
