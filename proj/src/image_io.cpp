#include "tas/image_io.hpp"

#include <opencv2/imgcodecs.hpp>

#include "tas/errors.hpp"

namespace tas {

Image load_image(const std::string& path) {
    cv::Mat bgr = cv::imread(path, cv::IMREAD_COLOR);
    if (bgr.empty()) throw IoError("cannot read image: " + path);
    Image out(bgr.cols, bgr.rows);
    for (int y = 0; y < bgr.rows; ++y) {
        const cv::Vec3b* row = bgr.ptr<cv::Vec3b>(y);
        for (int x = 0; x < bgr.cols; ++x) {
            out.set(x, y, {row[x][2], row[x][1], row[x][0]});
        }
    }
    return out;
}

void save_image(const std::string& path, const Image& image) {
    cv::Mat bgr(image.height, image.width, CV_8UC3);
    for (int y = 0; y < image.height; ++y) {
        cv::Vec3b* row = bgr.ptr<cv::Vec3b>(y);
        for (int x = 0; x < image.width; ++x) {
            Rgb c = image.get(x, y);
            row[x] = {c[2], c[1], c[0]};
        }
    }
    if (!cv::imwrite(path, bgr)) throw IoError("cannot write image: " + path);
}

Image overlay_mask(const Image& image, const BinaryMask& mask) {
    if (mask.width != image.width || mask.height != image.height) {
        throw DimensionMismatch("overlay_mask: mask/image dimensions differ");
    }
    Image out = image;
    for (int y = 0; y < image.height; ++y) {
        for (int x = 0; x < image.width; ++x) {
            if (!mask.get(x, y)) continue;
            Rgb c = out.get(x, y);
            out.set(x, y, {static_cast<std::uint8_t>((c[0] + 255) / 2),
                           static_cast<std::uint8_t>(c[1] / 2),
                           static_cast<std::uint8_t>(c[2] / 2)});
        }
    }
    return out;
}

}  // namespace tas
