#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "tas/image.hpp"

namespace tas {

// COCO-style uncompressed RLE: column-major run lengths, first run counts
// background pixels (may be zero).
struct Rle {
    int width = 0;
    int height = 0;
    std::vector<std::int64_t> counts;

    bool operator==(const Rle&) const = default;
};

Rle rle_encode(const BinaryMask& mask);

// Throws SumMismatch when the runs do not cover width*height pixels exactly.
BinaryMask rle_decode(const Rle& rle);

// Wire format: {"size": [height, width], "counts": [int...]}.
nlohmann::json rle_to_json(const Rle& rle);
Rle rle_from_json(const nlohmann::json& j);

}  // namespace tas
