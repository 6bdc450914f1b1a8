#include "tas/embedding.hpp"

#include <algorithm>
#include <cmath>

namespace tas {

double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
    if (a.values.size() != b.values.size()) {
        throw DimensionMismatch("cosine: dimensions " +
                                std::to_string(a.values.size()) + " vs " +
                                std::to_string(b.values.size()));
    }
    double dot = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        dot += static_cast<double>(a.values[i]) * static_cast<double>(b.values[i]);
    }
    return std::clamp(dot, -1.0, 1.0);
}

void normalize(std::vector<float>& values) {
    double norm_sq = 0.0;
    for (float v : values) norm_sq += static_cast<double>(v) * v;
    if (norm_sq == 0.0) {
        if (!values.empty()) values[0] = 1.0f;
        return;
    }
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (float& v : values) v = static_cast<float>(v * inv);
}

}  // namespace tas
