#include "worfeval/similarity.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "worfeval/errors.hpp"

namespace worfeval {

namespace {

using json = nlohmann::json;

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

std::set<std::string> token_set(const std::string& text) {
    std::set<std::string> tokens;
    std::string current;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!current.empty()) tokens.insert(std::move(current));
            current.clear();
        } else {
            current.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    if (!current.empty()) tokens.insert(std::move(current));
    return tokens;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
    return sum;
}

void normalize(std::vector<double>& v, const std::string& what) {
    double norm = std::sqrt(dot(v, v));
    if (norm < 1e-12) throw SchemaError(0, "vector", "zero-norm embedding for " + what);
    for (double& x : v) x /= norm;
}

}  // namespace

SimilarityMatrix SimilarityProvider::matrix(const std::vector<std::string>& gold_labels,
                                            const std::vector<std::string>& pred_labels,
                                            double beta, const std::string&) const {
    SimilarityMatrix m(static_cast<int>(gold_labels.size()), static_cast<int>(pred_labels.size()),
                       beta);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            m.set_thresholded(i, j, score(gold_labels[i], pred_labels[j]));
        }
    }
    return m;
}

double ExactProvider::score(const std::string& a, const std::string& b) const {
    return a == b ? 1.0 : 0.0;
}

double TokenCosineProvider::score(const std::string& a, const std::string& b) const {
    std::set<std::string> ta = token_set(a);
    std::set<std::string> tb = token_set(b);
    if (ta.empty() || tb.empty()) return 0.0;
    std::size_t common = 0;
    for (const auto& token : ta) common += tb.count(token);
    return static_cast<double>(common) /
           std::sqrt(static_cast<double>(ta.size()) * static_cast<double>(tb.size()));
}

PrecomputedMatrixProvider::PrecomputedMatrixProvider(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open similarity matrix file: " + path);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json record = json::parse(line, nullptr, false);
        if (record.is_discarded() || !record.is_object()) {
            throw SchemaError(line_no, "record", "not a JSON object");
        }
        if (!record.contains("id") || !record["id"].is_string()) {
            throw SchemaError(line_no, "id", "missing or non-string");
        }
        if (!record.contains("matrix") || !record["matrix"].is_array()) {
            throw SchemaError(line_no, "matrix", "missing or non-array");
        }
        std::vector<std::vector<double>> matrix;
        std::size_t width = 0;
        for (const json& row : record["matrix"]) {
            if (!row.is_array()) throw SchemaError(line_no, "matrix", "rows must be arrays");
            std::vector<double> values;
            for (const json& cell : row) {
                if (!cell.is_number()) throw SchemaError(line_no, "matrix", "entries must be numbers");
                double v = cell.get<double>();
                if (v < 0.0 || v > 1.0) {
                    throw SchemaError(line_no, "matrix", "entries must lie in [0, 1]");
                }
                values.push_back(v);
            }
            if (matrix.empty()) {
                width = values.size();
            } else if (values.size() != width) {
                throw SchemaError(line_no, "matrix", "rows must have equal length");
            }
            matrix.push_back(std::move(values));
        }
        matrices_[record["id"].get<std::string>()] = std::move(matrix);
    }
}

double PrecomputedMatrixProvider::score(const std::string&, const std::string&) const {
    throw ProviderError("precomputed matrices are keyed by sample id, not by label pair");
}

SimilarityMatrix PrecomputedMatrixProvider::matrix(const std::vector<std::string>& gold_labels,
                                                   const std::vector<std::string>& pred_labels,
                                                   double beta,
                                                   const std::string& sample_id) const {
    auto it = matrices_.find(sample_id);
    if (it == matrices_.end()) {
        throw ProviderError("no precomputed matrix for sample id \"" + sample_id + "\"");
    }
    const auto& raw = it->second;
    if (raw.size() != gold_labels.size() ||
        (!raw.empty() && raw.front().size() != pred_labels.size()) ||
        (raw.empty() && !pred_labels.empty() && !gold_labels.empty())) {
        throw ProviderError("precomputed matrix for \"" + sample_id +
                            "\" does not match the sample's node counts");
    }
    SimilarityMatrix m(static_cast<int>(gold_labels.size()), static_cast<int>(pred_labels.size()),
                       beta);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            m.set_thresholded(i, j, raw[i][j]);
        }
    }
    return m;
}

EmbeddingFileProvider::EmbeddingFileProvider(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open embedding file: " + path);
    std::string line;
    int line_no = 0;
    std::size_t dim = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json record = json::parse(line, nullptr, false);
        if (record.is_discarded() || !record.is_object()) {
            throw SchemaError(line_no, "record", "not a JSON object");
        }
        if (!record.contains("label") || !record["label"].is_string()) {
            throw SchemaError(line_no, "label", "missing or non-string");
        }
        if (!record.contains("vector") || !record["vector"].is_array()) {
            throw SchemaError(line_no, "vector", "missing or non-array");
        }
        std::vector<double> vec;
        for (const json& cell : record["vector"]) {
            if (!cell.is_number()) throw SchemaError(line_no, "vector", "entries must be numbers");
            vec.push_back(cell.get<double>());
        }
        if (dim == 0) {
            dim = vec.size();
        } else if (vec.size() != dim) {
            throw SchemaError(line_no, "vector", "all vectors must have the same dimension");
        }
        if (vec.empty()) throw SchemaError(line_no, "vector", "vector must be non-empty");
        normalize(vec, record["label"].get<std::string>());
        vectors_[record["label"].get<std::string>()] = std::move(vec);
    }
}

const std::vector<double>& EmbeddingFileProvider::vector_for(const std::string& label) const {
    auto it = vectors_.find(label);
    if (it == vectors_.end()) {
        throw ProviderError("no precomputed embedding for label \"" + label + "\"");
    }
    return it->second;
}

double EmbeddingFileProvider::score(const std::string& a, const std::string& b) const {
    return clamp01(dot(vector_for(a), vector_for(b)));
}

std::unique_ptr<SimilarityProvider> make_provider(const SimilarityConfig& config) {
    switch (config.provider) {
        case ProviderKind::exact:
            return std::make_unique<ExactProvider>();
        case ProviderKind::token_cosine:
            return std::make_unique<TokenCosineProvider>();
        case ProviderKind::precomputed_matrix:
            if (config.matrix_path.empty()) {
                throw ProviderError("precomputed_matrix provider needs a matrix file path");
            }
            return std::make_unique<PrecomputedMatrixProvider>(config.matrix_path);
        case ProviderKind::embedding_vectors:
            if (config.embedding_path.empty()) {
                throw ProviderError("embedding_vectors provider needs an embedding file path");
            }
            return std::make_unique<EmbeddingFileProvider>(config.embedding_path);
        case ProviderKind::embedding_service:
            if (config.endpoint.empty()) {
                throw ProviderError("embedding_service provider needs an endpoint");
            }
            return std::make_unique<EmbeddingServiceProvider>(config.endpoint,
                                                              config.timeout_seconds,
                                                              config.retries);
    }
    throw std::invalid_argument("unknown provider kind");
}

double similarity(const SimilarityProvider& provider, const std::string& a, const std::string& b) {
    return clamp01(provider.score(a, b));
}

SimilarityMatrix build_similarity_matrix(const std::vector<std::string>& gold_labels,
                                         const std::vector<std::string>& pred_labels,
                                         const SimilarityProvider& provider, double beta,
                                         const std::string& sample_id) {
    if (gold_labels.empty()) throw std::invalid_argument("gold label list must be non-empty");
    if (beta < 0.0 || beta > 1.0) throw std::invalid_argument("beta must lie in [0, 1]");
    return provider.matrix(gold_labels, pred_labels, beta, sample_id);
}

}  // namespace worfeval
