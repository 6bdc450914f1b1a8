#pragma once

#include <string>

#include "tas/image.hpp"

namespace tas {

// Throws IoError on unreadable files or unsupported formats.
Image load_image(const std::string& path);

// Format chosen by extension (.png, .ppm, .jpg, ...).
void save_image(const std::string& path, const Image& image);

// Chosen mask tinted red at 50% over the original.
Image overlay_mask(const Image& image, const BinaryMask& mask);

}  // namespace tas
