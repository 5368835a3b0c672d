#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "coin/errors.hpp"
#include "coin/features.hpp"
#include "test_util.hpp"

using namespace coin;

namespace {

// Independent oracle: plain double loop per 5x5 block, integer sum, one
// division by 25.
PatternGrid pattern_average_oracle(const GrayImage& coin) {
  PatternGrid grid;
  for (int a = 0; a < 20; ++a) {
    for (int b = 0; b < 20; ++b) {
      long sum = 0;
      for (int j = 0; j < 5; ++j) {
        for (int k = 0; k < 5; ++k) sum += coin(5 * a + j, 5 * b + k);
      }
      grid(a, b) = static_cast<double>(sum) / 25.0;
    }
  }
  return grid;
}

}  // namespace

TEST_CASE("pattern_average of a constant image is that constant") {
  const GrayImage coin = GrayImage::Constant(100, 100, 87);
  const PatternGrid grid = pattern_average(coin);
  CHECK((grid.array() == 87.0).all());
}

TEST_CASE("pattern_average of one block holding 1..25") {
  GrayImage coin = make_gray(100, 100);
  int value = 1;
  for (int j = 0; j < 5; ++j) {
    for (int k = 0; k < 5; ++k) coin(10 + j, 15 + k) = static_cast<std::uint8_t>(value++);
  }
  const PatternGrid grid = pattern_average(coin);
  CHECK(grid(2, 3) == 13.0);  // 325 / 25
  CHECK(grid(2, 2) == 0.0);
  CHECK(grid(3, 3) == 0.0);
}

TEST_CASE("pattern_average of a checkerboard gives the two parity means") {
  GrayImage coin(100, 100);
  for (Index y = 0; y < 100; ++y) {
    for (Index x = 0; x < 100; ++x) coin(y, x) = (y + x) % 2 == 0 ? 255 : 0;
  }
  const PatternGrid grid = pattern_average(coin);
  for (Index a = 0; a < 20; ++a) {
    for (Index b = 0; b < 20; ++b) {
      // 13 or 12 of 25 pixels land on the 255 parity per block
      const double expected = (5 * a + 5 * b) % 2 == 0 ? 13.0 * 255.0 / 25.0 : 12.0 * 255.0 / 25.0;
      CHECK(grid(a, b) == expected);
    }
  }
}

TEST_CASE("pattern_average equals the brute-force oracle on random images") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const GrayImage coin = testutil::random_gray(100, 100, seed);
    CHECK(pattern_average(coin) == pattern_average_oracle(coin));
  }
}

TEST_CASE("pattern_average preserves the image mean exactly") {
  const GrayImage coin = testutil::random_gray(100, 100, 42);
  long pixel_sum = 0;
  for (Index y = 0; y < 100; ++y) {
    for (Index x = 0; x < 100; ++x) pixel_sum += coin(y, x);
  }
  const PatternGrid grid = pattern_average(coin);
  // Each cell is an integer block sum divided by 25; recovering those
  // integers and summing regroups to the exact pixel total.
  long regrouped = 0;
  for (Index a = 0; a < 20; ++a) {
    for (Index b = 0; b < 20; ++b) regrouped += std::lround(grid(a, b) * 25.0);
  }
  CHECK(regrouped == pixel_sum);
}

TEST_CASE("pattern_average rejects non-100x100 input") {
  CHECK_THROWS_AS(pattern_average(make_gray(99, 100)), DimensionMismatch);
  CHECK_THROWS_AS(pattern_average(make_gray(100, 105)), DimensionMismatch);
}

TEST_CASE("to_feature_vector normalization endpoints") {
  PatternGrid grid = PatternGrid::Constant(255.0);
  CHECK((to_feature_vector(grid).array() == 1.0).all());
  grid.setZero();
  CHECK((to_feature_vector(grid).array() == 0.0).all());
}

TEST_CASE("to_feature_vector flattens row-major") {
  PatternGrid grid = PatternGrid::Zero();
  grid(2, 3) = 255.0;
  const Eigen::VectorXd features = to_feature_vector(grid);
  CHECK(features.size() == 400);
  for (int i = 0; i < 400; ++i) {
    CHECK(features(i) == (i == 2 * 20 + 3 ? 1.0 : 0.0));
  }
}

TEST_CASE("to_feature_vector without normalization passes raw averages") {
  PatternGrid grid = PatternGrid::Constant(131.4);
  const Eigen::VectorXd features = to_feature_vector(grid, false);
  CHECK((features.array() == 131.4).all());
}

TEST_CASE("flattening inverts exactly back to the grid") {
  const GrayImage coin = testutil::random_gray(100, 100, 9);
  const PatternGrid grid = pattern_average(coin);

  // Raw mode: unflattening recovers every cell bit-for-bit.
  const Eigen::VectorXd raw = to_feature_vector(grid, false);
  PatternGrid rebuilt;
  for (int row = 0; row < 20; ++row) {
    for (int col = 0; col < 20; ++col) rebuilt(row, col) = raw(row * 20 + col);
  }
  CHECK(rebuilt == grid);

  // Normalized mode: each entry is exactly its cell divided by 255.
  const Eigen::VectorXd scaled = to_feature_vector(grid, true);
  for (int i = 0; i < 400; ++i) {
    CHECK(scaled(i) == grid(i / 20, i % 20) / 255.0);
  }
}
