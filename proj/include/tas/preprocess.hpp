#pragma once

#include "tas/image.hpp"

namespace tas {

enum class ViewStyle { crop, blur };

// Bbox-sized rendering of one mask proposal, ready for an encoder or
// captioner. crop: background black. blur: background Gaussian-blurred,
// foreground untouched.
struct MaskedView {
    Image image;
    ViewStyle style = ViewStyle::crop;
    int source_proposal = 0;
};

// Throws GeometryMismatch when the proposal does not fit the image.
MaskedView crop_masked(const Image& image, const MaskProposal& proposal);

// Blur runs on the full image before cropping (truncated kernel radius
// ceil(3*sigma), edge clamp), so background context survives near the bbox
// border. Throws GeometryMismatch; requires sigma > 0.
MaskedView blur_masked(const Image& image, const MaskProposal& proposal,
                       double sigma);

// Pad to square with centered black borders, then bilinear-resize.
Image to_encoder_input(const MaskedView& view, int resolution);

// Helpers shared with tests and adapters.
Image gaussian_blur(const Image& image, double sigma);
Image resize_bilinear(const Image& image, int out_width, int out_height);
Image pad_to_square(const Image& image);

}  // namespace tas
