#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mcm/histogram.hpp"
#include "test_util.hpp"

namespace mcm {
namespace {

TEST(BinPixel, PureRed) {
  const PixelBins bins = bin_pixel({255, 0, 0});
  EXPECT_EQ(bins.hue, 0);
  EXPECT_EQ(bins.sat, 11);
  EXPECT_EQ(bins.val, 3);
}

TEST(BinPixel, AchromaticGoesToHueZero) {
  const PixelBins bins = bin_pixel({128, 128, 128});
  EXPECT_EQ(bins.hue, 0);
  EXPECT_EQ(bins.sat, 0);
  EXPECT_EQ(bins.val, 2);  // floor(4 * 128 / 255)
  EXPECT_EQ(bin_pixel({0, 0, 0}).val, 0);
}

TEST(BinPixel, MatchesFloatingPointBinsAwayFromEdges) {
  std::mt19937 gen(2);
  std::uniform_int_distribution<int> channel(0, 255);
  int checked = 0;
  for (int i = 0; i < 50000; ++i) {
    const Rgb px{static_cast<std::uint8_t>(channel(gen)),
                 static_cast<std::uint8_t>(channel(gen)),
                 static_cast<std::uint8_t>(channel(gen))};
    const HsvPixel hsv = rgb_to_hsv(px);
    const double h = hsv.h / 15.0, s = hsv.s * 12.0, v = hsv.v * 4.0;
    auto near_edge = [](double x) { return std::abs(x - std::round(x)) < 1e-9; };
    if (near_edge(h) || near_edge(s) || near_edge(v)) continue;
    const PixelBins bins = bin_pixel(px);
    ASSERT_EQ(bins.hue, std::min(23, static_cast<int>(h)));
    ASSERT_EQ(bins.sat, std::min(11, static_cast<int>(s)));
    ASSERT_EQ(bins.val, std::min(3, static_cast<int>(v)));
    ++checked;
  }
  EXPECT_GT(checked, 40000);
}

TEST(HistogramAccumulator, PureRedPatch) {
  HistogramAccumulator acc;
  for (int i = 0; i < 9; ++i) acc.add(bin_pixel({255, 0, 0}));
  const Histogram h = acc.normalize();
  for (int i = 0; i < kHistogramBins; ++i) {
    const bool hot = i == 0 || i == kHueBins + 11 || i == kHueBins + kSaturationBins + 3;
    EXPECT_DOUBLE_EQ(h[i], hot ? 1.0 / 3.0 : 0.0) << "bin " << i;
  }
  double sum = 0.0;
  for (double v : h) sum += v;
  EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(Bhattacharyya, HandEvaluatedExample) {
  Histogram p{}, q{};
  p[0] = 1.0;
  q[0] = 0.5;
  q[1] = 0.5;
  // sqrt(1 - sqrt(0.5))
  EXPECT_NEAR(bhattacharyya_distance(p, q), 0.5411961001461970, 1e-12);
}

TEST(Bhattacharyya, IdenticalIsExactlyZero) {
  std::mt19937_64 gen(1);
  for (int i = 0; i < 1000; ++i) {
    const Histogram h = testing::random_histogram(gen);
    ASSERT_EQ(bhattacharyya_distance(h, h), 0.0);
  }
}

TEST(Bhattacharyya, DisjointIsOne) {
  Histogram p{}, q{};
  p[3] = 1.0;
  q[7] = 1.0;
  EXPECT_DOUBLE_EQ(bhattacharyya_distance(p, q), 1.0);
}

TEST(Bhattacharyya, AgreesWithDirectSummation) {
  std::mt19937_64 gen(17);
  for (int i = 0; i < 2000; ++i) {
    const Histogram p = testing::random_histogram(gen);
    const Histogram q = testing::random_histogram(gen);
    ASSERT_NEAR(bhattacharyya_distance(p, q), testing::bhattacharyya_oracle(p, q), 1e-12);
    ASSERT_EQ(bhattacharyya_distance(p, q), bhattacharyya_distance(q, p));
  }
}

}  // namespace
}  // namespace mcm
