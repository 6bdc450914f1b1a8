#include <doctest.h>

#include <cmath>
#include <random>

#include "tas/preprocess.hpp"
#include "support.hpp"

using namespace tas;

namespace {

Image random_image(int w, int h, std::mt19937& rng) {
    std::uniform_int_distribution<int> level(0, 255);
    Image img(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            img.set(x, y, {static_cast<std::uint8_t>(level(rng)),
                           static_cast<std::uint8_t>(level(rng)),
                           static_cast<std::uint8_t>(level(rng))});
    return img;
}

// direct 2D convolution with the same truncation and edge clamp
Image blur_oracle(const Image& img, double sigma) {
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> k(2 * radius + 1);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        k[i + radius] = std::exp(-double(i) * i / (2.0 * sigma * sigma));
        sum += k[i + radius];
    }
    for (double& v : k) v /= sum;
    Image out(img.width, img.height);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            double acc[3] = {0, 0, 0};
            for (int dy = -radius; dy <= radius; ++dy) {
                for (int dx = -radius; dx <= radius; ++dx) {
                    int sx = std::clamp(x + dx, 0, img.width - 1);
                    int sy = std::clamp(y + dy, 0, img.height - 1);
                    const std::uint8_t* p = img.at(sx, sy);
                    double wgt = k[dx + radius] * k[dy + radius];
                    for (int c = 0; c < 3; ++c) acc[c] += wgt * p[c];
                }
            }
            out.set(x, y, {static_cast<std::uint8_t>(std::lround(acc[0])),
                           static_cast<std::uint8_t>(std::lround(acc[1])),
                           static_cast<std::uint8_t>(std::lround(acc[2]))});
        }
    }
    return out;
}

}  // namespace

TEST_CASE("crop of a full-image mask is the identity") {
    std::mt19937 rng(1);
    Image img = random_image(9, 7, rng);
    MaskProposal full = MaskProposal::from_mask(0, BinaryMask(9, 7, true));
    MaskedView view = crop_masked(img, full);
    CHECK(view.image == img);
    CHECK(view.style == ViewStyle::crop);
}

TEST_CASE("crop of a single-pixel mask keeps that pixel") {
    std::mt19937 rng(2);
    Image img = random_image(8, 8, rng);
    BinaryMask m(8, 8);
    m.set(3, 5, true);
    MaskedView view = crop_masked(img, MaskProposal::from_mask(0, m));
    REQUIRE(view.image.width == 1);
    REQUIRE(view.image.height == 1);
    CHECK(view.image.get(0, 0) == img.get(3, 5));
}

TEST_CASE("crop zeroes background within the bbox, pixel by pixel") {
    for (int seed = 0; seed < 20; ++seed) {
        std::mt19937 rng(seed);
        Image img = random_image(16, 12, rng);
        MaskProposal p =
            MaskProposal::from_mask(0, tas_test::random_nonempty_mask(16, 12, rng));
        MaskedView view = crop_masked(img, p);
        for (int y = p.bbox.y_min; y <= p.bbox.y_max; ++y) {
            for (int x = p.bbox.x_min; x <= p.bbox.x_max; ++x) {
                Rgb expect = p.mask.get(x, y) ? img.get(x, y) : Rgb{0, 0, 0};
                REQUIRE(view.image.get(x - p.bbox.x_min, y - p.bbox.y_min) == expect);
            }
        }
    }
}

TEST_CASE("crop rejects mismatched geometry") {
    Image img(8, 8);
    MaskProposal p = MaskProposal::from_mask(0, BinaryMask(4, 4, true));
    CHECK_THROWS_AS(crop_masked(img, p), GeometryMismatch);
    CHECK_THROWS_AS(blur_masked(img, p, 2.0), GeometryMismatch);
}

TEST_CASE("blur of a full-image mask leaves the image untouched") {
    std::mt19937 rng(3);
    Image img = random_image(8, 8, rng);
    MaskProposal full = MaskProposal::from_mask(0, BinaryMask(8, 8, true));
    CHECK(blur_masked(img, full, 5.0).image == img);
}

TEST_CASE("blurred background matches a direct convolution oracle") {
    for (int seed = 0; seed < 10; ++seed) {
        std::mt19937 rng(seed);
        Image img = random_image(8, 8, rng);
        MaskProposal p =
            MaskProposal::from_mask(0, tas_test::random_nonempty_mask(8, 8, rng, 0.3));
        const double sigma = 1.5;
        Image oracle = blur_oracle(img, sigma);
        MaskedView view = blur_masked(img, p, sigma);
        for (int y = p.bbox.y_min; y <= p.bbox.y_max; ++y) {
            for (int x = p.bbox.x_min; x <= p.bbox.x_max; ++x) {
                Rgb got = view.image.get(x - p.bbox.x_min, y - p.bbox.y_min);
                Rgb want = p.mask.get(x, y) ? img.get(x, y) : oracle.get(x, y);
                for (int c = 0; c < 3; ++c) {
                    REQUIRE(std::abs(int(got[c]) - int(want[c])) <= 1);
                }
            }
        }
    }
}

TEST_CASE("foreground pixels are invariant under blur for any sigma") {
    std::mt19937 rng(4);
    Image img = random_image(12, 10, rng);
    MaskProposal p =
        MaskProposal::from_mask(0, tas_test::random_nonempty_mask(12, 10, rng));
    for (double sigma : {0.001, 0.8, 3.0, 15.0}) {
        MaskedView view = blur_masked(img, p, sigma);
        for (int y = p.bbox.y_min; y <= p.bbox.y_max; ++y)
            for (int x = p.bbox.x_min; x <= p.bbox.x_max; ++x)
                if (p.mask.get(x, y))
                    REQUIRE(view.image.get(x - p.bbox.x_min, y - p.bbox.y_min) ==
                            img.get(x, y));
    }
}

TEST_CASE("near-zero sigma keeps the background within one level") {
    std::mt19937 rng(5);
    Image img = random_image(8, 8, rng);
    MaskProposal p =
        MaskProposal::from_mask(0, tas_test::random_nonempty_mask(8, 8, rng, 0.3));
    MaskedView view = blur_masked(img, p, 0.001);
    for (int y = p.bbox.y_min; y <= p.bbox.y_max; ++y)
        for (int x = p.bbox.x_min; x <= p.bbox.x_max; ++x) {
            Rgb got = view.image.get(x - p.bbox.x_min, y - p.bbox.y_min);
            Rgb want = img.get(x, y);
            for (int c = 0; c < 3; ++c)
                REQUIRE(std::abs(int(got[c]) - int(want[c])) <= 1);
        }
}

TEST_CASE("large sigma drives a two-tone background toward the local mean") {
    // left half 0, right half 200; foreground is one pixel so nearly the
    // whole bbox is background
    Image img(8, 8);
    for (int y = 0; y < 8; ++y)
        for (int x = 4; x < 8; ++x) img.set(x, y, {200, 200, 200});
    BinaryMask m(8, 8);
    m.set(0, 0, true);
    m.set(7, 7, true);  // stretch bbox over the whole image
    MaskedView view = blur_masked(img, MaskProposal::from_mask(0, m), 50.0);
    // with sigma >> image size every background pixel approaches the clamped
    // window mean; just check the two halves have converged toward each other
    int left = view.image.get(1, 4)[0];
    int right = view.image.get(6, 4)[0];
    CHECK(std::abs(left - right) < 60);
    CHECK(left > 40);
    CHECK(right < 160);
}

TEST_CASE("to_encoder_input is the identity at the native resolution") {
    std::mt19937 rng(6);
    MaskedView view{random_image(32, 32, rng), ViewStyle::crop, 0};
    CHECK(to_encoder_input(view, 32) == view.image);
}

TEST_CASE("thin content gets centered pads, never stretched") {
    Image band(4, 2, {220, 30, 30});
    MaskedView view{band, ViewStyle::crop, 0};
    Image out = to_encoder_input(view, 224);
    REQUIRE(out.width == 224);
    REQUIRE(out.height == 224);
    // band is padded to 4x4 (rows 1-2) before scaling: vertical middle red,
    // outer rows exactly black, no horizontal padding
    CHECK(out.get(112, 112)[0] > 100);
    CHECK(out.get(2, 112)[0] > 100);
    CHECK(out.get(221, 112)[0] > 100);
    CHECK(out.get(112, 2) == Rgb{0, 0, 0});
    CHECK(out.get(112, 221) == Rgb{0, 0, 0});
}

TEST_CASE("2x downscale equals block averaging within one level") {
    Image checker(448, 448);
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> level(0, 255);
    for (int y = 0; y < 448; ++y)
        for (int x = 0; x < 448; ++x) {
            auto v = static_cast<std::uint8_t>(level(rng));
            checker.set(x, y, {v, v, v});
        }
    Image out = resize_bilinear(checker, 224, 224);
    for (int y = 0; y < 224; y += 17) {
        for (int x = 0; x < 224; x += 17) {
            double mean = (checker.get(2 * x, 2 * y)[0] + checker.get(2 * x + 1, 2 * y)[0] +
                           checker.get(2 * x, 2 * y + 1)[0] +
                           checker.get(2 * x + 1, 2 * y + 1)[0]) /
                          4.0;
            REQUIRE(std::abs(out.get(x, y)[0] - mean) <= 1.0);
        }
    }
}
