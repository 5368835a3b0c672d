#include "coin/hough.hpp"

#include "coin/errors.hpp"
#include "coin/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace coin {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Center offsets for one radius, one per distinct rounded (du, dv) over the
// angle sweep. For an edge pixel (x, y) the voted center is (x + du, y + dv);
// with integer x the floor(t + 0.5) rounding below agrees with rounding
// x - r*cos(theta) to the nearest integer for every in-bounds center.
std::vector<std::pair<int, int>> ray_offsets(int r, double angular_step) {
  std::vector<std::pair<int, int>> offsets;
  for (double deg = 0.0; deg < 360.0; deg += angular_step) {
    const double theta = deg * kPi / 180.0;
    const int du = static_cast<int>(std::floor(0.5 - r * std::cos(theta)));
    const int dv = static_cast<int>(std::floor(0.5 - r * std::sin(theta)));
    offsets.emplace_back(du, dv);
  }
  std::sort(offsets.begin(), offsets.end());
  offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());
  return offsets;
}

void validate(const HoughParams& params) {
  if (params.r_min < 1 || params.r_min > params.r_max) {
    throw Error("hough: requires 1 <= r_min <= r_max");
  }
  if (!(params.angular_step > 0.0) || params.angular_step > 90.0) {
    throw Error("hough: angular_step must be in (0, 90] degrees");
  }
}

}  // namespace

HoughParams default_hough_params(Index height, Index width) {
  const double side = static_cast<double>(std::min(height, width));
  HoughParams params;
  params.r_min = std::max(1, static_cast<int>(std::lround(0.2 * side)));
  params.r_max = std::max(params.r_min, static_cast<int>(std::lround(0.5 * side)));
  params.angular_step = 1.0;
  return params;
}

HoughAccumulator::HoughAccumulator(Index height, Index width, const HoughParams& params)
    : height_(height),
      width_(width),
      plane_(height * width),
      r_min_(params.r_min),
      r_max_(params.r_max),
      counts_(static_cast<std::size_t>(plane_) * (params.r_max - params.r_min + 1), 0) {}

std::int64_t HoughAccumulator::total_votes() const {
  std::int64_t sum = 0;
  for (const auto c : counts_) sum += c;
  return sum;
}

HoughAccumulator accumulate(const EdgeMap& edges, const HoughParams& params) {
  validate(params);
  if (edges.rows() < 1 || edges.cols() < 1) {
    throw Error("accumulate: empty edge map raster");
  }

  std::vector<std::vector<std::pair<int, int>>> offsets_by_radius;
  offsets_by_radius.reserve(params.r_max - params.r_min + 1);
  for (int r = params.r_min; r <= params.r_max; ++r) {
    offsets_by_radius.push_back(ray_offsets(r, params.angular_step));
  }

  const int height = static_cast<int>(edges.rows());
  const int width = static_cast<int>(edges.cols());
  HoughAccumulator acc(height, width, params);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if (!edges(y, x)) continue;
      for (int r = params.r_min; r <= params.r_max; ++r) {
        for (const auto& [du, dv] : offsets_by_radius[r - params.r_min]) {
          const int u = x + du;
          const int v = y + dv;
          if (u < 0 || u >= width || v < 0 || v >= height) continue;
          ++acc.at(v, u, r);
        }
      }
    }
  }
  return acc;
}

CircleHypothesis find_best_circle(const HoughAccumulator& acc, const HoughParams& params) {
  validate(params);
  CircleHypothesis best;
  // Scanning r, then v, then u with a strict comparison realizes the
  // smallest-r/v/u tie-break.
  for (int r = acc.r_min(); r <= acc.r_max(); ++r) {
    for (Index v = 0; v < acc.height(); ++v) {
      for (Index u = 0; u < acc.width(); ++u) {
        const std::int64_t votes = acc.at(v, u, r);
        if (votes > best.votes) {
          best = CircleHypothesis{static_cast<int>(u), static_cast<int>(v), r, votes};
        }
      }
    }
  }
  if (best.votes == 0) {
    throw NoCircleFound("find_best_circle: accumulator holds no votes");
  }
  return best;
}

CircleHypothesis detect_coin(const GrayImage& img, const HoughParams& params,
                             std::optional<double> sobel_threshold) {
  double threshold;
  if (sobel_threshold) {
    threshold = *sobel_threshold;
  } else {
    const double max_mag = max_gradient_magnitude(img);
    if (max_mag == 0.0) {
      throw NoCircleFound("detect_coin: image has no gradients");
    }
    threshold = 0.25 * max_mag;
  }
  const EdgeMap edges = sobel_edges(img, threshold);
  const HoughAccumulator acc = accumulate(edges, params);
  return find_best_circle(acc, params);
}

}  // namespace coin
