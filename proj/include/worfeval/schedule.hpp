#pragma once

#include <map>
#include <string>
#include <vector>

#include "worfeval/graph.hpp"

namespace worfeval {

// Per-internal-node execution time in seconds; terminals take no time.
using DurationMap = std::map<int, double>;

struct CriticalPath {
    double length = 0.0;
    std::vector<int> path;  // internal nodes only, lexicographically smallest maximizer

    friend bool operator==(const CriticalPath&, const CriticalPath&) = default;
};

// Longest duration-weighted START-to-END path, by dynamic programming over a
// topological order.
CriticalPath critical_path(const WorkflowGraph& g, const DurationMap& durations);

// (sum of all durations) / critical-path length; 1.0 means no parallelism.
double speedup(const WorkflowGraph& g, const DurationMap& durations);

// Line-delimited {id, durations} records; durations[i] is the time of node
// i+1. Negative entries are rejected.
std::map<std::string, DurationMap> load_durations(const std::string& path);

}  // namespace worfeval
