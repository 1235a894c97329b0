#pragma once

#include <filesystem>

#include "snake/image.hpp"

namespace snake {

/// Reads a binary graymap (P5, 8 or 16 bit) or a single-channel PNG.
/// Format is chosen by magic bytes, not by extension.
GrayImage load_image(const std::filesystem::path& path);

/// Writes P5. maxval is 255 when every intensity is an integer in [0, 255],
/// 65535 when every intensity is an integer in [0, 65535]; anything else
/// cannot be stored without loss and throws FormatError.
void save_pgm(const std::filesystem::path& path, const GrayImage& img);

void save_ppm(const std::filesystem::path& path, const RgbImage& img);

}  // namespace snake
