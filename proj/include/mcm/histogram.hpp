#pragma once

// 40-bin concatenated HSV histograms (24 hue, 12 saturation, 4 value bins)
// and the Bhattacharyya distance between them.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>

#include "mcm/imaging.hpp"

namespace mcm {

inline constexpr int kHueBins = 24;
inline constexpr int kSaturationBins = 12;
inline constexpr int kValueBins = 4;
inline constexpr int kHistogramBins = kHueBins + kSaturationBins + kValueBins;

using Histogram = std::array<double, kHistogramBins>;

// Bin indices of one pixel; sat and val are local to their sub-histograms.
struct PixelBins {
  std::uint8_t hue = 0;
  std::uint8_t sat = 0;
  std::uint8_t val = 0;
};

namespace detail {

// Floor division for a possibly negative numerator and positive divisor.
constexpr int floor_div(int num, int den) {
  return num >= 0 ? num / den : -((-num + den - 1) / den);
}

}  // namespace detail

// Uniform bins over h in [0,360), s in [0,1], v in [0,1], evaluated in exact
// integer arithmetic so that bin edges do not depend on rounding. Equivalent
// to floor(h / 15), floor(12 s), floor(4 v) clamped to the last bin.
constexpr PixelBins bin_pixel(Rgb px) {
  const int r = px.r, g = px.g, b = px.b;
  const int max = std::max({r, g, b});
  const int min = std::min({r, g, b});
  const int delta = max - min;

  PixelBins bins;
  bins.val = static_cast<std::uint8_t>(
      std::min(kValueBins - 1, kValueBins * max / kChannelMax));
  if (max == 0 || delta == 0) return bins;
  bins.sat = static_cast<std::uint8_t>(
      std::min(kSaturationBins - 1, kSaturationBins * delta / max));

  // Each 60 degree sector spans four 15 degree hue bins.
  constexpr int kPerSector = kHueBins / 6;
  int hue;
  if (max == r) {
    hue = detail::floor_div(kPerSector * (g - b), delta);
    if (hue < 0) hue += kHueBins;
  } else if (max == g) {
    hue = detail::floor_div(kPerSector * (b - r), delta) + 2 * kPerSector;
  } else {
    hue = detail::floor_div(kPerSector * (r - g), delta) + 4 * kPerSector;
  }
  bins.hue = static_cast<std::uint8_t>(std::clamp(hue, 0, kHueBins - 1));
  return bins;
}

// Accumulates raw counts; `normalize` turns them into the unit-sum vector.
class HistogramAccumulator {
 public:
  void add(PixelBins bins, std::uint32_t weight = 1) {
    counts_[bins.hue] += weight;
    counts_[kHueBins + bins.sat] += weight;
    counts_[kHueBins + kSaturationBins + bins.val] += weight;
    pixels_ += weight;
  }

  void add(const HistogramAccumulator& other) {
    for (int i = 0; i < kHistogramBins; ++i) counts_[i] += other.counts_[i];
    pixels_ += other.pixels_;
  }

  void subtract(const HistogramAccumulator& other) {
    for (int i = 0; i < kHistogramBins; ++i) counts_[i] -= other.counts_[i];
    pixels_ -= other.pixels_;
  }

  std::uint64_t pixels() const noexcept { return pixels_; }

  // Each of the three sub-histograms is normalized to unit sum and the
  // concatenation is scaled by 1/3, so the whole vector sums to one.
  // Requires pixels() > 0. Dividing (rather than multiplying by a
  // reciprocal) rounds each bin correctly, so equal proportions from
  // different pixel counts give bit-identical histograms.
  Histogram normalize() const {
    Histogram out{};
    const double denom = 3.0 * static_cast<double>(pixels_);
    for (int i = 0; i < kHistogramBins; ++i) {
      out[i] = static_cast<double>(counts_[i]) / denom;
    }
    return out;
  }

 private:
  std::array<std::uint64_t, kHistogramBins> counts_{};
  std::uint64_t pixels_ = 0;
};

// sqrt(1 - BC) with BC = sum_i sqrt(p_i q_i). For unit-sum inputs
// 1 - BC = 0.5 * sum_i (sqrt(p_i) - sqrt(q_i))^2, which is what is evaluated:
// it is exactly zero for identical histograms and does not cancel
// catastrophically for near-identical ones. Clamped to [0, 1].
inline double bhattacharyya_from_roots(const Histogram& root_p,
                                       const Histogram& root_q) {
  double acc = 0.0;
  for (int i = 0; i < kHistogramBins; ++i) {
    const double d = root_p[i] - root_q[i];
    acc += d * d;
  }
  return std::sqrt(std::clamp(0.5 * acc, 0.0, 1.0));
}

inline Histogram elementwise_sqrt(const Histogram& h) {
  Histogram out;
  for (int i = 0; i < kHistogramBins; ++i) out[i] = std::sqrt(h[i]);
  return out;
}

inline double bhattacharyya_distance(const Histogram& p, const Histogram& q) {
  return bhattacharyya_from_roots(elementwise_sqrt(p), elementwise_sqrt(q));
}

}  // namespace mcm
