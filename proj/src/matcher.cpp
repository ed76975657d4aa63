#include "worfeval/matcher.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace worfeval {

namespace {

// Equal-weight optima are separated from genuinely worse matchings by this
// relative slack; it only needs to absorb floating-point noise in the sums.
constexpr double kTieSlack = 1e-12;

// Max-sum perfect assignment on a square matrix: Hungarian algorithm with
// potentials on the negated weights, O(n^3).
double assignment_max(const std::vector<std::vector<double>>& w) {
    const int n = static_cast<int>(w.size());
    if (n == 0) return 0.0;
    const double inf = std::numeric_limits<double>::infinity();

    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> match(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        match[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            int i0 = match[j0], j1 = 0;
            double delta = inf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                double cur = -w[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            int j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    double total = 0.0;
    for (int j = 1; j <= n; ++j) total += w[match[j] - 1][j - 1];
    return total;
}

}  // namespace

double NodeCorrespondence::total_weight() const {
    double total = 0.0;
    for (const auto& pair : pairs) total += pair.weight;
    return total;
}

NodeCorrespondence max_weight_matching(const SimilarityMatrix& matrix) {
    const int rows = matrix.rows();
    const int cols = matrix.cols();
    const int n = std::max(rows, cols);
    NodeCorrespondence result;
    if (n == 0) return result;

    // Zero-padded square matrix: padded cells contribute nothing, so a
    // perfect assignment on it realizes the best partial matching.
    std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) w[i][j] = matrix.at(i, j);
    }

    const double best = assignment_max(w);
    const double slack = kTieSlack * std::max(1.0, std::abs(best));

    std::vector<char> used_row(rows, 0), used_col(cols, 0);

    // Best completion weight with the given rows/cols unavailable.
    auto residual_max = [&](int extra_row, int extra_col) {
        std::vector<int> live_rows, live_cols;
        for (int i = 0; i < n; ++i) {
            if (i < rows && (used_row[i] || i == extra_row)) continue;
            live_rows.push_back(i);
        }
        for (int j = 0; j < n; ++j) {
            if (j < cols && (used_col[j] || j == extra_col)) continue;
            live_cols.push_back(j);
        }
        std::vector<std::vector<double>> sub(live_rows.size(),
                                             std::vector<double>(live_cols.size(), 0.0));
        for (std::size_t a = 0; a < live_rows.size(); ++a) {
            for (std::size_t b = 0; b < live_cols.size(); ++b) {
                sub[a][b] = w[live_rows[a]][live_cols[b]];
            }
        }
        return assignment_max(sub);
    };

    // Greedy forcing in lexicographic (gold, pred) order: a pair enters the
    // matching iff the remaining cells can still complete it to the optimum.
    double forced = 0.0;
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            if (used_col[j] || matrix.at(i, j) <= 0.0) continue;
            double candidate = forced + matrix.at(i, j) + residual_max(i, j);
            if (candidate >= best - slack) {
                used_row[i] = used_col[j] = 1;
                forced += matrix.at(i, j);
                result.pairs.push_back({i + 1, j + 1, matrix.at(i, j)});
                break;
            }
        }
    }
    return result;
}

}  // namespace worfeval
