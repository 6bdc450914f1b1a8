#include "tas/preprocess.hpp"

#include <algorithm>
#include <cmath>

#include "tas/errors.hpp"

namespace tas {
namespace {

void check_geometry(const Image& image, const MaskProposal& p) {
    if (p.mask.width != image.width || p.mask.height != image.height) {
        throw GeometryMismatch("mask " + std::to_string(p.mask.width) + "x" +
                               std::to_string(p.mask.height) + " vs image " +
                               std::to_string(image.width) + "x" +
                               std::to_string(image.height));
    }
    if (p.bbox.x_min < 0 || p.bbox.y_min < 0 || p.bbox.x_max >= image.width ||
        p.bbox.y_max >= image.height || p.area <= 0) {
        throw GeometryMismatch("proposal bbox/area out of range");
    }
}

std::uint8_t round_u8(double v) {
    return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0l, 255l));
}

}  // namespace

MaskedView crop_masked(const Image& image, const MaskProposal& proposal) {
    check_geometry(image, proposal);
    const BBox& b = proposal.bbox;
    MaskedView view;
    view.style = ViewStyle::crop;
    view.source_proposal = proposal.proposal_id;
    view.image = Image(b.width(), b.height());
    for (int y = b.y_min; y <= b.y_max; ++y) {
        for (int x = b.x_min; x <= b.x_max; ++x) {
            if (proposal.mask.get(x, y)) {
                view.image.set(x - b.x_min, y - b.y_min, image.get(x, y));
            }
        }
    }
    return view;
}

Image gaussian_blur(const Image& image, double sigma) {
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> kernel(2 * radius + 1);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        kernel[i + radius] = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
        sum += kernel[i + radius];
    }
    for (double& k : kernel) k /= sum;

    const int w = image.width, h = image.height;
    // horizontal then vertical pass, double accumulation, edge clamp
    std::vector<double> tmp(static_cast<std::size_t>(w) * h * 3);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc[3] = {0, 0, 0};
            for (int i = -radius; i <= radius; ++i) {
                int sx = std::clamp(x + i, 0, w - 1);
                const std::uint8_t* p = image.at(sx, y);
                for (int c = 0; c < 3; ++c) acc[c] += kernel[i + radius] * p[c];
            }
            double* t = &tmp[3 * (static_cast<std::size_t>(y) * w + x)];
            for (int c = 0; c < 3; ++c) t[c] = acc[c];
        }
    }
    Image out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc[3] = {0, 0, 0};
            for (int i = -radius; i <= radius; ++i) {
                int sy = std::clamp(y + i, 0, h - 1);
                const double* t = &tmp[3 * (static_cast<std::size_t>(sy) * w + x)];
                for (int c = 0; c < 3; ++c) acc[c] += kernel[i + radius] * t[c];
            }
            std::uint8_t* p = out.at(x, y);
            for (int c = 0; c < 3; ++c) p[c] = round_u8(acc[c]);
        }
    }
    return out;
}

MaskedView blur_masked(const Image& image, const MaskProposal& proposal,
                       double sigma) {
    check_geometry(image, proposal);
    if (sigma <= 0.0) throw GeometryMismatch("blur_masked: sigma must be > 0");
    const Image blurred = gaussian_blur(image, sigma);
    const BBox& b = proposal.bbox;
    MaskedView view;
    view.style = ViewStyle::blur;
    view.source_proposal = proposal.proposal_id;
    view.image = Image(b.width(), b.height());
    for (int y = b.y_min; y <= b.y_max; ++y) {
        for (int x = b.x_min; x <= b.x_max; ++x) {
            const Image& src = proposal.mask.get(x, y) ? image : blurred;
            view.image.set(x - b.x_min, y - b.y_min, src.get(x, y));
        }
    }
    return view;
}

Image pad_to_square(const Image& image) {
    const int side = std::max(image.width, image.height);
    if (image.width == image.height) return image;
    Image out(side, side);
    const int off_x = (side - image.width) / 2;
    const int off_y = (side - image.height) / 2;
    for (int y = 0; y < image.height; ++y) {
        for (int x = 0; x < image.width; ++x) {
            out.set(x + off_x, y + off_y, image.get(x, y));
        }
    }
    return out;
}

Image resize_bilinear(const Image& image, int out_width, int out_height) {
    if (image.width == out_width && image.height == out_height) return image;
    Image out(out_width, out_height);
    const double sx = static_cast<double>(image.width) / out_width;
    const double sy = static_cast<double>(image.height) / out_height;
    for (int y = 0; y < out_height; ++y) {
        const double src_y = (y + 0.5) * sy - 0.5;
        const int y0 = std::clamp(static_cast<int>(std::floor(src_y)), 0, image.height - 1);
        const int y1 = std::min(y0 + 1, image.height - 1);
        const double fy = std::clamp(src_y - y0, 0.0, 1.0);
        for (int x = 0; x < out_width; ++x) {
            const double src_x = (x + 0.5) * sx - 0.5;
            const int x0 = std::clamp(static_cast<int>(std::floor(src_x)), 0, image.width - 1);
            const int x1 = std::min(x0 + 1, image.width - 1);
            const double fx = std::clamp(src_x - x0, 0.0, 1.0);
            const std::uint8_t* p00 = image.at(x0, y0);
            const std::uint8_t* p10 = image.at(x1, y0);
            const std::uint8_t* p01 = image.at(x0, y1);
            const std::uint8_t* p11 = image.at(x1, y1);
            std::uint8_t* po = out.at(x, y);
            for (int c = 0; c < 3; ++c) {
                const double top = p00[c] * (1.0 - fx) + p10[c] * fx;
                const double bot = p01[c] * (1.0 - fx) + p11[c] * fx;
                po[c] = round_u8(top * (1.0 - fy) + bot * fy);
            }
        }
    }
    return out;
}

Image to_encoder_input(const MaskedView& view, int resolution) {
    return resize_bilinear(pad_to_square(view.image), resolution, resolution);
}

}  // namespace tas
