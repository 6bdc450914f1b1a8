#pragma once

#include <vector>

#include "tas/errors.hpp"

namespace tas {

enum class Modality { image, text };

// Fixed-length unit vector; cosine similarity reduces to a dot product.
struct EmbeddingVector {
    std::vector<float> values;
    Modality modality = Modality::text;

    std::size_t dimension() const { return values.size(); }
    bool operator==(const EmbeddingVector&) const = default;
};

// Dot product in double precision, clamped to [-1, 1].
// Throws DimensionMismatch on unequal lengths.
double cosine(const EmbeddingVector& a, const EmbeddingVector& b);

// Scale to unit L2 norm in place (double-precision accumulation).
void normalize(std::vector<float>& values);

}  // namespace tas
