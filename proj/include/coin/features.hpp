#pragma once

#include "coin/raster.hpp"

#include <Eigen/Dense>

namespace coin {

inline constexpr Index kCoinSide = 100;   // trimmed coin edge length
inline constexpr Index kSegment = 5;      // averaging block edge length
inline constexpr Index kGridSide = 20;    // kCoinSide / kSegment
inline constexpr int kFeatureCount = 400; // kGridSide^2

/// 20x20 grid of 5x5 block means, each cell in [0, 255].
using PatternGrid = Eigen::Matrix<double, kGridSide, kGridSide, Eigen::RowMajor>;

/// Block means of a 100x100 trimmed coin: integer block sum, one division
/// by 25, no further arithmetic.
PatternGrid pattern_average(const GrayImage& coin);

/// Row-major flattening (index = row*20 + col). With normalize, cells are
/// divided by 255 into [0, 1]; otherwise raw averages pass through.
Eigen::VectorXd to_feature_vector(const PatternGrid& grid, bool normalize = true);

/// pattern_average + to_feature_vector in one step.
Eigen::VectorXd featurize(const GrayImage& coin, bool normalize = true);

}  // namespace coin
