#pragma once

#include "coin/raster.hpp"

#include <filesystem>

namespace coin {

/// Binary PGM (P5) or PPM (P6), maxval <= 255. Grayscale files are promoted
/// to RGB by channel triplication.
RgbImage load_image(const std::filesystem::path& path);

/// Binary PGM (P5) only.
GrayImage read_pgm(const std::filesystem::path& path);

/// Writes binary P5 with maxval 255. Byte-exact round trip with read_pgm.
void write_pgm(const GrayImage& img, const std::filesystem::path& path);

}  // namespace coin
