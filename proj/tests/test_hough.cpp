#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "coin/errors.hpp"
#include "coin/hough.hpp"
#include "coin/imaging.hpp"
#include "test_util.hpp"

#include <algorithm>
#include <cstdlib>
#include <vector>

using namespace coin;

TEST_CASE("default params cover 20 to 50 percent of the short side") {
  const HoughParams params = default_hough_params(100, 100);
  CHECK(params.r_min == 20);
  CHECK(params.r_max == 50);
}

TEST_CASE("empty edge map accumulates nothing") {
  const EdgeMap edges = EdgeMap::Constant(30, 30, false);
  const HoughAccumulator acc = accumulate(edges, {5, 10, 1.0});
  CHECK(acc.total_votes() == 0);
  CHECK_THROWS_AS(find_best_circle(acc, {5, 10, 1.0}), NoCircleFound);
}

TEST_CASE("single edge pixel with 90 degree rays votes the four axis centers") {
  EdgeMap edges = EdgeMap::Constant(41, 41, false);
  edges(20, 20) = true;
  const int r = 7;
  const HoughParams params{r, r, 90.0};
  const HoughAccumulator acc = accumulate(edges, params);
  CHECK(acc.total_votes() == 4);
  CHECK(acc.at(20, 13, r) == 1);
  CHECK(acc.at(20, 27, r) == 1);
  CHECK(acc.at(13, 20, r) == 1);
  CHECK(acc.at(27, 20, r) == 1);
}

TEST_CASE("single edge pixel near the border drops out-of-bounds centers") {
  EdgeMap edges = EdgeMap::Constant(20, 20, false);
  edges(1, 1) = true;
  const HoughAccumulator acc = accumulate(edges, {5, 5, 90.0});
  CHECK(acc.total_votes() == 2);  // (x+r, y) and (x, y+r) only
}

TEST_CASE("accumulator peak sits on the drawn circle, brute force agrees") {
  EdgeMap edges = EdgeMap::Constant(100, 100, false);
  testutil::stamp_circle(edges, 50, 50, 30);
  const HoughParams params{20, 40, 1.0};
  const HoughAccumulator acc = accumulate(edges, params);
  const CircleHypothesis peak = find_best_circle(acc, params);
  CHECK(std::abs(peak.u - 50) <= 1);
  CHECK(std::abs(peak.v - 50) <= 1);
  CHECK(std::abs(peak.r - 30) <= 1);

  const testutil::BruteCircle oracle = testutil::brute_force_best_circle(edges, 20, 40);
  CHECK(std::abs(peak.u - oracle.u) <= 1);
  CHECK(std::abs(peak.v - oracle.v) <= 1);
  CHECK(std::abs(peak.r - oracle.r) <= 1);
}

TEST_CASE("find_best_circle reports the unique maximum cell") {
  HoughAccumulator acc(30, 30, {10, 16, 1.0});
  acc.at(10, 20, 15) = 7;
  const CircleHypothesis best = find_best_circle(acc, {10, 16, 1.0});
  CHECK(best.u == 20);
  CHECK(best.v == 10);
  CHECK(best.r == 15);
  CHECK(best.votes == 7);
}

TEST_CASE("find_best_circle breaks ties toward the smaller radius") {
  HoughAccumulator acc(30, 30, {10, 16, 1.0});
  acc.at(5, 5, 14) = 9;
  acc.at(4, 4, 12) = 9;
  const CircleHypothesis best = find_best_circle(acc, {10, 16, 1.0});
  CHECK(best.r == 12);
}

TEST_CASE("voting is additive over any partition of the edge pixels") {
  // Order independence, stated as additivity: splitting the edge set into
  // disjoint halves and summing their accumulators reproduces the full one.
  EdgeMap edges = EdgeMap::Constant(40, 40, false);
  Rng rng(17);
  for (int i = 0; i < 60; ++i) {
    edges(rng.uniform_int(0, 39), rng.uniform_int(0, 39)) = true;
  }
  EdgeMap part_a = EdgeMap::Constant(40, 40, false);
  EdgeMap part_b = EdgeMap::Constant(40, 40, false);
  int toggle = 0;
  for (Index v = 0; v < 40; ++v) {
    for (Index u = 0; u < 40; ++u) {
      if (edges(v, u)) (toggle++ % 2 == 0 ? part_a : part_b)(v, u) = true;
    }
  }
  const HoughParams params{6, 12, 2.0};
  const HoughAccumulator whole = accumulate(edges, params);
  const HoughAccumulator a = accumulate(part_a, params);
  const HoughAccumulator b = accumulate(part_b, params);
  for (int r = 6; r <= 12; ++r) {
    for (Index v = 0; v < 40; ++v) {
      for (Index u = 0; u < 40; ++u) {
        CHECK(whole.at(v, u, r) == a.at(v, u, r) + b.at(v, u, r));
      }
    }
  }
}

TEST_CASE("vote total equals the per-pixel distinct-center count") {
  EdgeMap edges = EdgeMap::Constant(25, 25, false);
  edges(12, 12) = true;
  edges(3, 20) = true;
  edges(24, 0) = true;
  const HoughParams params{4, 9, 3.0};
  const HoughAccumulator acc = accumulate(edges, params);

  // Oracle: regenerate every rounded in-bounds center and dedupe per
  // (pixel, radius) with a sorted set.
  constexpr double kPi = 3.14159265358979323846;
  long expected = 0;
  for (Index y = 0; y < 25; ++y) {
    for (Index x = 0; x < 25; ++x) {
      if (!edges(y, x)) continue;
      for (int r = params.r_min; r <= params.r_max; ++r) {
        std::vector<std::pair<long, long>> centers;
        for (double deg = 0.0; deg < 360.0; deg += params.angular_step) {
          const double theta = deg * kPi / 180.0;
          const long u = std::lround(x - r * std::cos(theta));
          const long v = std::lround(y - r * std::sin(theta));
          if (u >= 0 && u < 25 && v >= 0 && v < 25) centers.emplace_back(u, v);
        }
        std::sort(centers.begin(), centers.end());
        centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
        expected += static_cast<long>(centers.size());
      }
    }
  }
  CHECK(acc.total_votes() == expected);
}

TEST_CASE("noise only ever adds votes") {
  EdgeMap edges = EdgeMap::Constant(60, 60, false);
  testutil::stamp_circle(edges, 30, 30, 18);
  const HoughParams params{12, 24, 1.0};
  const HoughAccumulator clean = accumulate(edges, params);
  const CircleHypothesis peak = find_best_circle(clean, params);

  EdgeMap noisy = edges;
  Rng rng(5);
  for (int i = 0; i < 120; ++i) {
    noisy(rng.uniform_int(0, 59), rng.uniform_int(0, 59)) = true;
  }
  const HoughAccumulator dirty = accumulate(noisy, params);
  CHECK(dirty.at(peak.v, peak.u, peak.r) >= peak.votes);
}

TEST_CASE("random circles are recovered within one pixel") {
  Rng rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    const int r = rng.uniform_int(12, 20);
    const int cu = rng.uniform_int(r + 2, 57 - r);
    const int cv = rng.uniform_int(r + 2, 57 - r);
    EdgeMap edges = EdgeMap::Constant(60, 60, false);
    testutil::stamp_circle(edges, cu, cv, r);
    const HoughParams params{10, 22, 1.0};
    const CircleHypothesis found = find_best_circle(accumulate(edges, params), params);
    CHECK(std::abs(found.u - cu) <= 1);
    CHECK(std::abs(found.v - cv) <= 1);
    CHECK(std::abs(found.r - r) <= 1);
  }
}

TEST_CASE("detect_coin finds a bright disc on black") {
  const GrayImage img = testutil::draw_disc(100, 50.0, 50.0, 30.0, 220);
  const CircleHypothesis found = detect_coin(img, default_hough_params(100, 100));
  CHECK(std::abs(found.u - 50) <= 1);
  CHECK(std::abs(found.v - 50) <= 1);
  CHECK(std::abs(found.r - 30) <= 1);
}

TEST_CASE("detect_coin ignores an attached rectangular shadow") {
  GrayImage img = testutil::draw_disc(100, 45.0, 45.0, 28.0, 220);
  for (Index y = 60; y < 90; ++y) {
    for (Index x = 40; x < 95; ++x) {
      if (img(y, x) == 0) img(y, x) = 70;  // dimmer block touching the disc
    }
  }
  const CircleHypothesis found = detect_coin(img, default_hough_params(100, 100));
  CHECK(std::abs(found.u - 45) <= 1);
  CHECK(std::abs(found.v - 45) <= 1);
  CHECK(std::abs(found.r - 28) <= 1);
}

TEST_CASE("detect_coin reports NoCircleFound on a blank image") {
  const GrayImage img = make_gray(50, 50);
  CHECK_THROWS_AS(detect_coin(img, default_hough_params(50, 50)), NoCircleFound);
}
