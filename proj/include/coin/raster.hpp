#pragma once

#include <Eigen/Dense>

#include <cstdint>

namespace coin {

/// Row-major dense raster, (row, col) indexed. Row 0 is the top of the image.
template <typename Scalar>
using Raster = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using Index = Eigen::Index;

/// 8-bit single-channel image.
using GrayImage = Raster<std::uint8_t>;

/// Boolean edge mask with the dimensions of the image it was derived from.
using EdgeMap = Raster<bool>;

/// 24-bit color image stored as three 8-bit planes of equal shape.
struct RgbImage {
  Raster<std::uint8_t> r, g, b;

  Index width() const { return r.cols(); }
  Index height() const { return r.rows(); }
};

inline GrayImage make_gray(Index height, Index width, std::uint8_t value = 0) {
  return GrayImage::Constant(height, width, value);
}

}  // namespace coin
