#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace worfeval {

// Thresholded gold x predicted similarity scores: every entry is either 0 or
// at least beta.
class SimilarityMatrix {
public:
    SimilarityMatrix() = default;
    SimilarityMatrix(int rows, int cols, double beta)
        : rows_(rows), cols_(cols), beta_(beta), values_(static_cast<std::size_t>(rows) * cols, 0.0) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double beta() const { return beta_; }

    double at(int i, int j) const { return values_[static_cast<std::size_t>(i) * cols_ + j]; }

    // Applies the threshold rule: values below beta are stored as exactly 0.
    void set_thresholded(int i, int j, double sigma) {
        values_[static_cast<std::size_t>(i) * cols_ + j] = sigma >= beta_ ? sigma : 0.0;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    double beta_ = 0.0;
    std::vector<double> values_;
};

// Semantic similarity between subtask labels, in [0, 1].
class SimilarityProvider {
public:
    virtual ~SimilarityProvider() = default;

    virtual std::string name() const = 0;
    virtual double score(const std::string& a, const std::string& b) const = 0;

    // Whether one instance tolerates concurrent callers. Providers that
    // serialize requests report false and the harness gives each worker its
    // own instance.
    virtual bool concurrent_safe() const { return true; }

    // Whole-matrix hook; the default scores label pairs, providers keyed by
    // sample id override it.
    virtual SimilarityMatrix matrix(const std::vector<std::string>& gold_labels,
                                    const std::vector<std::string>& pred_labels, double beta,
                                    const std::string& sample_id) const;
};

class ExactProvider final : public SimilarityProvider {
public:
    std::string name() const override { return "exact"; }
    double score(const std::string& a, const std::string& b) const override;
};

// Cosine over binary bags of lowercased whitespace tokens.
class TokenCosineProvider final : public SimilarityProvider {
public:
    std::string name() const override { return "token_cosine"; }
    double score(const std::string& a, const std::string& b) const override;
};

// Whole matrices keyed by sample id, loaded from a line-delimited file of
// {id, matrix} records.
class PrecomputedMatrixProvider final : public SimilarityProvider {
public:
    explicit PrecomputedMatrixProvider(const std::string& path);

    std::string name() const override { return "precomputed_matrix"; }
    double score(const std::string& a, const std::string& b) const override;
    SimilarityMatrix matrix(const std::vector<std::string>& gold_labels,
                            const std::vector<std::string>& pred_labels, double beta,
                            const std::string& sample_id) const override;

private:
    std::unordered_map<std::string, std::vector<std::vector<double>>> matrices_;
};

// Unit vectors keyed by exact label text, loaded from a line-delimited file
// of {label, vector} records. Similarity is the clamped dot product.
class EmbeddingFileProvider final : public SimilarityProvider {
public:
    explicit EmbeddingFileProvider(const std::string& path);

    std::string name() const override { return "embedding_vectors"; }
    double score(const std::string& a, const std::string& b) const override;

private:
    const std::vector<double>& vector_for(const std::string& label) const;
    std::unordered_map<std::string, std::vector<double>> vectors_;
};

// Client for an external sentence-embedding endpoint. Requests serialize on
// one connection; vectors are cached by text for the life of the instance.
class EmbeddingServiceProvider final : public SimilarityProvider {
public:
    explicit EmbeddingServiceProvider(std::string endpoint, double timeout_seconds = 10.0,
                                      int retries = 2);
    ~EmbeddingServiceProvider() override;

    std::string name() const override { return "embedding_service"; }
    double score(const std::string& a, const std::string& b) const override;
    bool concurrent_safe() const override { return false; }

    // One unit vector per input text, all of the same dimension.
    std::vector<std::vector<double>> embed_batch(const std::vector<std::string>& texts);

private:
    std::vector<std::vector<double>> embed_locked(const std::vector<std::string>& texts);

    std::string host_;
    std::string path_;
    double timeout_seconds_;
    int retries_;
    mutable std::mutex mutex_;
    mutable std::unordered_map<std::string, std::vector<double>> cache_;
};

enum class ProviderKind {
    exact,
    token_cosine,
    precomputed_matrix,
    embedding_vectors,
    embedding_service,
};

struct SimilarityConfig {
    double beta = 0.6;
    ProviderKind provider = ProviderKind::exact;
    std::string matrix_path;     // precomputed_matrix
    std::string embedding_path;  // embedding_vectors
    std::string endpoint;        // embedding_service
    double timeout_seconds = 10.0;
    int retries = 2;
};

std::unique_ptr<SimilarityProvider> make_provider(const SimilarityConfig& config);

double similarity(const SimilarityProvider& provider, const std::string& a, const std::string& b);

SimilarityMatrix build_similarity_matrix(const std::vector<std::string>& gold_labels,
                                         const std::vector<std::string>& pred_labels,
                                         const SimilarityProvider& provider, double beta,
                                         const std::string& sample_id = {});

}  // namespace worfeval
