#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "tas/errors.hpp"

namespace tas {

using Rgb = std::array<std::uint8_t, 3>;

// 8-bit RGB raster, row-major, origin top-left. x is the column index,
// y the row index.
struct Image {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // width*height*3

    Image() = default;
    Image(int w, int h, Rgb fill = {0, 0, 0});

    const std::uint8_t* at(int x, int y) const {
        return pixels.data() + 3 * (static_cast<std::size_t>(y) * width + x);
    }
    std::uint8_t* at(int x, int y) {
        return pixels.data() + 3 * (static_cast<std::size_t>(y) * width + x);
    }
    Rgb get(int x, int y) const {
        const std::uint8_t* p = at(x, y);
        return {p[0], p[1], p[2]};
    }
    void set(int x, int y, Rgb c) {
        std::uint8_t* p = at(x, y);
        p[0] = c[0]; p[1] = c[1]; p[2] = c[2];
    }
    bool operator==(const Image&) const = default;
};

// Foreground indicator bits, same grid and conventions as Image.
struct BinaryMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> bits;  // row-major, 0 or 1

    BinaryMask() = default;
    BinaryMask(int w, int h, bool fill = false)
        : width(w), height(h),
          bits(static_cast<std::size_t>(w) * h, fill ? 1 : 0) {}

    bool get(int x, int y) const {
        return bits[static_cast<std::size_t>(y) * width + x] != 0;
    }
    void set(int x, int y, bool v) {
        bits[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0;
    }
    bool operator==(const BinaryMask&) const = default;
};

struct BBox {
    int x_min = 0, y_min = 0, x_max = 0, y_max = 0;  // inclusive
    int width() const { return x_max - x_min + 1; }
    int height() const { return y_max - y_min + 1; }
    bool operator==(const BBox&) const = default;
};

struct Centroid {
    double x = 0.0, y = 0.0;
    bool operator==(const Centroid&) const = default;
};

struct MaskGeometry {
    long long area = 0;
    BBox bbox;
    Centroid centroid;
};

// Area, tight bbox and mean-of-foreground-coordinates centroid.
// Throws EmptyMask when no bit is set.
MaskGeometry derive_geometry(const BinaryMask& mask);

struct MaskProposal {
    int proposal_id = 0;
    BinaryMask mask;
    long long area = 0;
    BBox bbox;
    Centroid centroid;

    static MaskProposal from_mask(int id, BinaryMask mask);
};

}  // namespace tas
