#pragma once

#include "coin/raster.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace coin {

/// Search window for the circle accumulator. angular_step is the spacing in
/// degrees of the vote rays cast from each edge pixel.
struct HoughParams {
  int r_min = 1;
  int r_max = 1;
  double angular_step = 1.0;
};

/// Defaults for a single coin dominating the frame: radii between 20% and
/// 50% of the shorter image side.
HoughParams default_hough_params(Index height, Index width);

struct CircleHypothesis {
  int u = 0;      // center column
  int v = 0;      // center row
  int r = 0;
  std::int64_t votes = 0;
};

/// Dense (v, u, r) vote grid. Planes are stored per radius so the voting
/// inner loop stays within one height*width block.
class HoughAccumulator {
 public:
  HoughAccumulator(Index height, Index width, const HoughParams& params);

  std::int32_t& at(Index v, Index u, int r) {
    return counts_[plane_ * (r - r_min_) + v * width_ + u];
  }
  std::int32_t at(Index v, Index u, int r) const {
    return counts_[plane_ * (r - r_min_) + v * width_ + u];
  }

  Index height() const { return height_; }
  Index width() const { return width_; }
  int r_min() const { return r_min_; }
  int r_max() const { return r_max_; }
  std::int64_t total_votes() const;

 private:
  Index height_, width_, plane_;
  int r_min_, r_max_;
  std::vector<std::int32_t> counts_;
};

/// Casts a vote ray sweep from every edge pixel. For a given (pixel, radius)
/// each distinct rounded center votes once, however many rays land on it.
HoughAccumulator accumulate(const EdgeMap& edges, const HoughParams& params);

/// Global accumulator maximum; ties broken by smallest r, then v, then u.
/// Throws NoCircleFound when every cell is zero.
CircleHypothesis find_best_circle(const HoughAccumulator& acc, const HoughParams& params);

/// sobel_edges -> accumulate -> find_best_circle. A missing threshold means
/// 0.25 * the image's maximum gradient magnitude.
CircleHypothesis detect_coin(const GrayImage& img, const HoughParams& params,
                             std::optional<double> sobel_threshold = std::nullopt);

}  // namespace coin
