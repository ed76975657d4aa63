#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "httplib.h"
#include "json.hpp"
#include "worfeval/errors.hpp"
#include "worfeval/similarity.hpp"

namespace worfeval {

namespace {

using json = nlohmann::json;

// Accepts http://host[:port][/path]; anything else is rejected up front.
void split_endpoint(const std::string& endpoint, std::string& host, std::string& path) {
    const std::string scheme = "http://";
    if (endpoint.rfind(scheme, 0) != 0) {
        throw ServiceError("embedding endpoint must start with http://, got: " + endpoint);
    }
    std::string rest = endpoint.substr(scheme.size());
    std::size_t slash = rest.find('/');
    if (slash == std::string::npos) {
        host = scheme + rest;
        path = "/";
    } else {
        host = scheme + rest.substr(0, slash);
        path = rest.substr(slash);
    }
    if (host == scheme) throw ServiceError("embedding endpoint has no host: " + endpoint);
}

}  // namespace

EmbeddingServiceProvider::EmbeddingServiceProvider(std::string endpoint, double timeout_seconds,
                                                   int retries)
    : timeout_seconds_(timeout_seconds), retries_(std::max(0, retries)) {
    split_endpoint(endpoint, host_, path_);
}

EmbeddingServiceProvider::~EmbeddingServiceProvider() = default;

std::vector<std::vector<double>> EmbeddingServiceProvider::embed_batch(
    const std::vector<std::string>& texts) {
    std::lock_guard<std::mutex> lock(mutex_);
    return embed_locked(texts);
}

std::vector<std::vector<double>> EmbeddingServiceProvider::embed_locked(
    const std::vector<std::string>& texts) {
    if (texts.empty()) return {};

    std::vector<std::string> missing;
    for (const auto& text : texts) {
        if (cache_.count(text) == 0) missing.push_back(text);
    }
    std::sort(missing.begin(), missing.end());
    missing.erase(std::unique(missing.begin(), missing.end()), missing.end());

    if (!missing.empty()) {
        json request;
        request["texts"] = missing;
        const std::string body = request.dump();

        httplib::Client client(host_);
        client.set_connection_timeout(std::chrono::milliseconds(
            static_cast<int>(timeout_seconds_ * 1000)));
        client.set_read_timeout(std::chrono::milliseconds(
            static_cast<int>(timeout_seconds_ * 1000)));

        httplib::Result result;
        std::string last_error;
        for (int attempt = 0; attempt <= retries_; ++attempt) {
            result = client.Post(path_, body, "application/json");
            if (result && result->status >= 200 && result->status < 300) break;
            last_error = result ? "status " + std::to_string(result->status)
                                : "transport error: " + httplib::to_string(result.error());
            result = httplib::Result();
        }
        if (!result) {
            throw ServiceError("embedding service unreachable (" + last_error + ")");
        }

        json response = json::parse(result->body, nullptr, false);
        if (response.is_discarded() || !response.contains("embeddings") ||
            !response["embeddings"].is_array()) {
            throw ServiceError("embedding service returned malformed response");
        }
        const json& embeddings = response["embeddings"];
        if (embeddings.size() != missing.size()) {
            throw ServiceError("embedding service returned " + std::to_string(embeddings.size()) +
                               " vectors for " + std::to_string(missing.size()) + " texts");
        }
        std::size_t dim = 0;
        for (std::size_t i = 0; i < missing.size(); ++i) {
            const json& row = embeddings[i];
            if (!row.is_array() || row.empty()) {
                throw ServiceError("embedding service returned a non-array vector");
            }
            std::vector<double> vec;
            vec.reserve(row.size());
            for (const json& cell : row) {
                if (!cell.is_number()) {
                    throw ServiceError("embedding service returned a non-numeric entry");
                }
                vec.push_back(cell.get<double>());
            }
            if (dim == 0) dim = vec.size();
            if (vec.size() != dim) {
                throw ServiceError("embedding service returned vectors of mixed dimension");
            }
            double norm = 0.0;
            for (double x : vec) norm += x * x;
            norm = std::sqrt(norm);
            if (norm < 1e-12) throw ServiceError("embedding service returned a zero vector");
            for (double& x : vec) x /= norm;
            cache_[missing[i]] = std::move(vec);
        }
        // dimension must agree with anything already cached
        if (!cache_.empty()) {
            std::size_t cached_dim = cache_.begin()->second.size();
            for (const auto& [text, vec] : cache_) {
                if (vec.size() != cached_dim) {
                    throw ServiceError("embedding service changed vector dimension mid-run");
                }
            }
        }
    }

    std::vector<std::vector<double>> out;
    out.reserve(texts.size());
    for (const auto& text : texts) out.push_back(cache_.at(text));
    return out;
}

double EmbeddingServiceProvider::score(const std::string& a, const std::string& b) const {
    auto* self = const_cast<EmbeddingServiceProvider*>(this);
    auto vectors = self->embed_batch({a, b});
    double sum = 0.0;
    for (std::size_t i = 0; i < vectors[0].size(); ++i) sum += vectors[0][i] * vectors[1][i];
    return std::min(1.0, std::max(0.0, sum));
}

}  // namespace worfeval
