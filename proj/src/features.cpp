#include "coin/features.hpp"

#include "coin/errors.hpp"

namespace coin {

PatternGrid pattern_average(const GrayImage& coin) {
  if (coin.rows() != kCoinSide || coin.cols() != kCoinSide) {
    throw DimensionMismatch("pattern_average: expected a 100x100 trimmed coin");
  }
  PatternGrid grid;
  for (Index a = 0; a < kGridSide; ++a) {
    for (Index b = 0; b < kGridSide; ++b) {
      long sum = 0;
      for (Index j = 0; j < kSegment; ++j) {
        for (Index k = 0; k < kSegment; ++k) {
          sum += coin(a * kSegment + j, b * kSegment + k);
        }
      }
      grid(a, b) = static_cast<double>(sum) / 25.0;
    }
  }
  return grid;
}

Eigen::VectorXd to_feature_vector(const PatternGrid& grid, bool normalize) {
  Eigen::VectorXd features(kFeatureCount);
  const double divisor = normalize ? 255.0 : 1.0;
  for (Index row = 0; row < kGridSide; ++row) {
    for (Index col = 0; col < kGridSide; ++col) {
      features(row * kGridSide + col) = grid(row, col) / divisor;
    }
  }
  return features;
}

Eigen::VectorXd featurize(const GrayImage& coin, bool normalize) {
  return to_feature_vector(pattern_average(coin), normalize);
}

}  // namespace coin
