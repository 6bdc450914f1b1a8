#include "tas/image.hpp"

namespace tas {

Image::Image(int w, int h, Rgb fill)
    : width(w), height(h), pixels(static_cast<std::size_t>(w) * h * 3) {
    for (std::size_t i = 0; i < pixels.size(); i += 3) {
        pixels[i] = fill[0];
        pixels[i + 1] = fill[1];
        pixels[i + 2] = fill[2];
    }
}

MaskGeometry derive_geometry(const BinaryMask& mask) {
    MaskGeometry g;
    long long sum_x = 0, sum_y = 0;
    int x_min = mask.width, y_min = mask.height, x_max = -1, y_max = -1;
    for (int y = 0; y < mask.height; ++y) {
        for (int x = 0; x < mask.width; ++x) {
            if (!mask.get(x, y)) continue;
            ++g.area;
            sum_x += x;
            sum_y += y;
            if (x < x_min) x_min = x;
            if (x > x_max) x_max = x;
            if (y < y_min) y_min = y;
            if (y > y_max) y_max = y;
        }
    }
    if (g.area == 0) throw EmptyMask("derive_geometry: mask has no foreground pixels");
    g.bbox = {x_min, y_min, x_max, y_max};
    g.centroid = {static_cast<double>(sum_x) / g.area,
                  static_cast<double>(sum_y) / g.area};
    return g;
}

MaskProposal MaskProposal::from_mask(int id, BinaryMask mask) {
    MaskGeometry g = derive_geometry(mask);
    MaskProposal p;
    p.proposal_id = id;
    p.mask = std::move(mask);
    p.area = g.area;
    p.bbox = g.bbox;
    p.centroid = g.centroid;
    return p;
}

}  // namespace tas
