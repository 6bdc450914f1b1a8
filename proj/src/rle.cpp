#include "tas/rle.hpp"

#include "tas/errors.hpp"

namespace tas {

Rle rle_encode(const BinaryMask& mask) {
    Rle r;
    r.width = mask.width;
    r.height = mask.height;
    std::int64_t run = 0;
    bool current = false;  // leading background run
    for (int x = 0; x < mask.width; ++x) {
        for (int y = 0; y < mask.height; ++y) {
            bool v = mask.get(x, y);
            if (v == current) {
                ++run;
            } else {
                r.counts.push_back(run);
                current = v;
                run = 1;
            }
        }
    }
    r.counts.push_back(run);
    return r;
}

BinaryMask rle_decode(const Rle& rle) {
    std::int64_t total = 0;
    for (std::int64_t c : rle.counts) {
        if (c < 0) throw SumMismatch("rle_decode: negative run length");
        total += c;
    }
    const std::int64_t expected =
        static_cast<std::int64_t>(rle.width) * rle.height;
    if (total != expected) {
        throw SumMismatch("rle_decode: runs sum to " + std::to_string(total) +
                          ", grid has " + std::to_string(expected) + " pixels");
    }
    BinaryMask mask(rle.width, rle.height);
    std::int64_t idx = 0;  // column-major position
    bool value = false;
    for (std::int64_t c : rle.counts) {
        for (std::int64_t i = 0; i < c; ++i, ++idx) {
            if (value) {
                int x = static_cast<int>(idx / rle.height);
                int y = static_cast<int>(idx % rle.height);
                mask.set(x, y, true);
            }
        }
        value = !value;
    }
    return mask;
}

nlohmann::json rle_to_json(const Rle& rle) {
    return {{"size", {rle.height, rle.width}}, {"counts", rle.counts}};
}

Rle rle_from_json(const nlohmann::json& j) {
    Rle r;
    r.height = j.at("size").at(0).get<int>();
    r.width = j.at("size").at(1).get<int>();
    r.counts = j.at("counts").get<std::vector<std::int64_t>>();
    return r;
}

}  // namespace tas
