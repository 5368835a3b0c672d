#include "coin/imaging.hpp"

#include "coin/errors.hpp"

#include <algorithm>
#include <cmath>

namespace coin {

namespace {

constexpr double kPi = 3.14159265358979323846;

inline std::uint8_t clamp_pixel(long value) {
  return static_cast<std::uint8_t>(std::clamp(value, 0l, 255l));
}

inline std::uint8_t sample_replicate(const GrayImage& img, Index y, Index x) {
  y = std::clamp<Index>(y, 0, img.rows() - 1);
  x = std::clamp<Index>(x, 0, img.cols() - 1);
  return img(y, x);
}

inline double sample_zero(const GrayImage& img, Index y, Index x) {
  if (y < 0 || y >= img.rows() || x < 0 || x >= img.cols()) return 0.0;
  return static_cast<double>(img(y, x));
}

// Bilinear sample with 0 outside the image.
double bilinear_zero(const GrayImage& img, double sy, double sx) {
  const Index x0 = static_cast<Index>(std::floor(sx));
  const Index y0 = static_cast<Index>(std::floor(sy));
  const double wx = sx - static_cast<double>(x0);
  const double wy = sy - static_cast<double>(y0);
  const double top = (1.0 - wx) * sample_zero(img, y0, x0) + wx * sample_zero(img, y0, x0 + 1);
  const double bot = (1.0 - wx) * sample_zero(img, y0 + 1, x0) + wx * sample_zero(img, y0 + 1, x0 + 1);
  return (1.0 - wy) * top + wy * bot;
}

// Bilinear sample with coordinates clamped to the image rectangle.
double bilinear_clamped(const GrayImage& img, double sy, double sx) {
  sx = std::clamp(sx, 0.0, static_cast<double>(img.cols() - 1));
  sy = std::clamp(sy, 0.0, static_cast<double>(img.rows() - 1));
  const Index x0 = static_cast<Index>(std::floor(sx));
  const Index y0 = static_cast<Index>(std::floor(sy));
  const double wx = sx - static_cast<double>(x0);
  const double wy = sy - static_cast<double>(y0);
  const double top = (1.0 - wx) * sample_replicate(img, y0, x0) + wx * sample_replicate(img, y0, x0 + 1);
  const double bot = (1.0 - wx) * sample_replicate(img, y0 + 1, x0) + wx * sample_replicate(img, y0 + 1, x0 + 1);
  return (1.0 - wy) * top + wy * bot;
}

void sobel_at(const GrayImage& img, Index y, Index x, double& gx, double& gy) {
  const double p00 = sample_replicate(img, y - 1, x - 1);
  const double p01 = sample_replicate(img, y - 1, x);
  const double p02 = sample_replicate(img, y - 1, x + 1);
  const double p10 = sample_replicate(img, y, x - 1);
  const double p12 = sample_replicate(img, y, x + 1);
  const double p20 = sample_replicate(img, y + 1, x - 1);
  const double p21 = sample_replicate(img, y + 1, x);
  const double p22 = sample_replicate(img, y + 1, x + 1);
  gx = (p02 + 2.0 * p12 + p22) - (p00 + 2.0 * p10 + p20);
  gy = (p20 + 2.0 * p21 + p22) - (p00 + 2.0 * p01 + p02);
}

}  // namespace

GrayImage to_grayscale(const RgbImage& img) {
  GrayImage out(img.height(), img.width());
  for (Index y = 0; y < img.height(); ++y) {
    for (Index x = 0; x < img.width(); ++x) {
      const double luma = 0.299 * img.r(y, x) + 0.587 * img.g(y, x) + 0.114 * img.b(y, x);
      out(y, x) = clamp_pixel(std::lround(luma));
    }
  }
  return out;
}

EdgeMap sobel_edges(const GrayImage& img, double threshold) {
  if (img.rows() < 3 || img.cols() < 3) {
    throw ImageTooSmall("sobel_edges: image must be at least 3x3");
  }
  EdgeMap edges(img.rows(), img.cols());
  for (Index y = 0; y < img.rows(); ++y) {
    for (Index x = 0; x < img.cols(); ++x) {
      double gx, gy;
      sobel_at(img, y, x, gx, gy);
      edges(y, x) = std::sqrt(gx * gx + gy * gy) >= threshold;
    }
  }
  return edges;
}

double max_gradient_magnitude(const GrayImage& img) {
  if (img.rows() < 3 || img.cols() < 3) {
    throw ImageTooSmall("max_gradient_magnitude: image must be at least 3x3");
  }
  double best = 0.0;
  for (Index y = 0; y < img.rows(); ++y) {
    for (Index x = 0; x < img.cols(); ++x) {
      double gx, gy;
      sobel_at(img, y, x, gx, gy);
      best = std::max(best, std::sqrt(gx * gx + gy * gy));
    }
  }
  return best;
}

GrayImage rotate(const GrayImage& img, double angle_degrees) {
  const double theta = angle_degrees * kPi / 180.0;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double cx = static_cast<double>(img.cols() - 1) / 2.0;
  const double cy = static_cast<double>(img.rows() - 1) / 2.0;

  // Inverse map. Rows grow downward, so a visually counterclockwise rotation
  // is an algebraic rotation by -theta; its inverse applied to destination
  // offsets recovers the source sample.
  GrayImage out(img.rows(), img.cols());
  for (Index y = 0; y < img.rows(); ++y) {
    const double dy = static_cast<double>(y) - cy;
    for (Index x = 0; x < img.cols(); ++x) {
      const double dx = static_cast<double>(x) - cx;
      const double sx = cx + c * dx - s * dy;
      const double sy = cy + s * dx + c * dy;
      out(y, x) = clamp_pixel(std::lround(bilinear_zero(img, sy, sx)));
    }
  }
  return out;
}

GrayImage crop_to_circle(const GrayImage& img, const CircleHypothesis& c) {
  const long r = c.r;
  const long x0 = static_cast<long>(c.u) - r;
  const long y0 = static_cast<long>(c.v) - r;
  const long side = 2 * r + 1;
  if (x0 + side <= 0 || y0 + side <= 0 || x0 >= img.cols() || y0 >= img.rows()) {
    throw CircleOutOfBounds("crop_to_circle: bounding square misses the image");
  }
  GrayImage out = make_gray(side, side);
  for (long y = 0; y < side; ++y) {
    const long dy = y - r;
    for (long x = 0; x < side; ++x) {
      const long dx = x - r;
      if (dx * dx + dy * dy > r * r) continue;
      const long sy = y0 + y, sx = x0 + x;
      if (sy < 0 || sy >= img.rows() || sx < 0 || sx >= img.cols()) continue;
      out(y, x) = img(sy, sx);
    }
  }
  return out;
}

GrayImage resize(const GrayImage& img, Index out_w, Index out_h) {
  GrayImage out(out_h, out_w);
  const double x_ratio = static_cast<double>(img.cols()) / static_cast<double>(out_w);
  const double y_ratio = static_cast<double>(img.rows()) / static_cast<double>(out_h);
  for (Index y = 0; y < out_h; ++y) {
    const double sy = (static_cast<double>(y) + 0.5) * y_ratio - 0.5;
    for (Index x = 0; x < out_w; ++x) {
      const double sx = (static_cast<double>(x) + 0.5) * x_ratio - 0.5;
      out(y, x) = clamp_pixel(std::lround(bilinear_clamped(img, sy, sx)));
    }
  }
  return out;
}

}  // namespace coin
