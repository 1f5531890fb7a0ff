#pragma once

// Raster and mask types, RGB/HSV conversion, and the multiplicative
// brightness/contrast transform used to synthesize illumination variants.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mcm/error.hpp"

namespace mcm {

// Full-scale channel value.
inline constexpr int kChannelMax = 255;

// Default saturation ceiling for the mean foreground channel value of the
// brightest simulated variant.
inline constexpr double kDefaultSaturationThreshold = 240.0;

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

// Row-major RGB pixel grid. Channel range [0, 255] is enforced by the type.
class ImageRaster {
 public:
  ImageRaster() = default;

  ImageRaster(int width, int height, Rgb fill = {})
      : width_(width), height_(height) {
    check_dimensions(width, height);
    pixels_.assign(static_cast<std::size_t>(width) * height, fill);
  }

  ImageRaster(int width, int height, std::vector<Rgb> pixels)
      : width_(width), height_(height), pixels_(std::move(pixels)) {
    check_dimensions(width, height);
    if (pixels_.size() != static_cast<std::size_t>(width) * height) {
      throw_invalid("ImageRaster: pixel count " +
                    std::to_string(pixels_.size()) + " does not match " +
                    std::to_string(width) + "x" + std::to_string(height));
    }
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  bool empty() const noexcept { return pixels_.empty(); }

  const Rgb& at(int x, int y) const { return pixels_[index(x, y)]; }
  Rgb& at(int x, int y) { return pixels_[index(x, y)]; }

  std::span<const Rgb> pixels() const noexcept { return pixels_; }
  std::span<Rgb> pixels() noexcept { return pixels_; }

  friend bool operator==(const ImageRaster&, const ImageRaster&) = default;

 private:
  static void check_dimensions(int width, int height) {
    if (width <= 0 || height <= 0) {
      throw_invalid("ImageRaster: zero-dimension image");
    }
  }

  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<Rgb> pixels_;
};

// Per-pixel foreground flags aligned with an ImageRaster.
class BlobMask {
 public:
  BlobMask() = default;

  BlobMask(int width, int height, bool fill = false)
      : width_(width), height_(height) {
    if (width <= 0 || height <= 0) throw_invalid("BlobMask: zero dimension");
    flags_.assign(static_cast<std::size_t>(width) * height, fill ? 1 : 0);
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

  bool foreground(int x, int y) const {
    return flags_[static_cast<std::size_t>(y) * width_ + x] != 0;
  }
  void set(int x, int y, bool value) {
    flags_[static_cast<std::size_t>(y) * width_ + x] = value ? 1 : 0;
  }

  std::span<const std::uint8_t> flags() const noexcept { return flags_; }

  std::size_t count() const {
    return static_cast<std::size_t>(std::count(flags_.begin(), flags_.end(), 1));
  }

  bool matches(const ImageRaster& raster) const noexcept {
    return width_ == raster.width() && height_ == raster.height();
  }

  friend bool operator==(const BlobMask&, const BlobMask&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> flags_;
};

inline void require_aligned(const ImageRaster& raster, const BlobMask& mask) {
  if (!mask.matches(raster)) {
    throw_invalid("mask " + std::to_string(mask.width()) + "x" +
                  std::to_string(mask.height()) + " does not match raster " +
                  std::to_string(raster.width()) + "x" +
                  std::to_string(raster.height()));
  }
}

struct HsvPixel {
  double h = 0.0;  // degrees, [0, 360)
  double s = 0.0;  // [0, 1]
  double v = 0.0;  // [0, 1]
};

// Hexcone model. Hue is 0 for achromatic pixels.
inline HsvPixel rgb_to_hsv(Rgb px) {
  const int r = px.r, g = px.g, b = px.b;
  const int max = std::max({r, g, b});
  const int min = std::min({r, g, b});
  const int delta = max - min;

  HsvPixel out;
  out.v = static_cast<double>(max) / kChannelMax;
  if (max == 0 || delta == 0) return out;
  out.s = static_cast<double>(delta) / max;

  double sector;
  if (max == r) {
    sector = static_cast<double>(g - b) / delta;
    if (sector < 0.0) sector += 6.0;
  } else if (max == g) {
    sector = static_cast<double>(b - r) / delta + 2.0;
  } else {
    sector = static_cast<double>(r - g) / delta + 4.0;
  }
  out.h = 60.0 * sector;
  if (out.h >= 360.0) out.h -= 360.0;
  return out;
}

inline Rgb hsv_to_rgb(const HsvPixel& hsv) {
  const double c = hsv.v * hsv.s;
  const double hp = std::fmod(hsv.h, 360.0) / 60.0;
  const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(hp)) {
    case 0: r = c; g = x; break;
    case 1: r = x; g = c; break;
    case 2: g = c; b = x; break;
    case 3: g = x; b = c; break;
    case 4: r = x; b = c; break;
    default: r = c; b = x; break;
  }
  const double m = hsv.v - c;
  auto to_channel = [m](double value) {
    const double scaled = std::round((value + m) * kChannelMax);
    return static_cast<std::uint8_t>(std::clamp(scaled, 0.0, 255.0));
  };
  return {to_channel(r), to_channel(g), to_channel(b)};
}

// Ordered list of positive brightness/contrast multipliers.
class CoefficientVector {
 public:
  CoefficientVector() = default;

  explicit CoefficientVector(std::vector<double> values)
      : values_(std::move(values)) {
    if (values_.empty()) throw_invalid("coefficient vector must not be empty");
    for (double k : values_) {
      if (!(k > 0.0) || !std::isfinite(k)) {
        throw_invalid("coefficients must be finite and positive");
      }
    }
  }

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double max() const { return *std::max_element(values_.begin(), values_.end()); }

  friend bool operator==(const CoefficientVector&,
                         const CoefficientVector&) = default;

 private:
  std::vector<double> values_;
};

inline CoefficientVector default_coefficients() {
  return CoefficientVector({1.4, 1.2, 1.0, 0.8, 0.6});
}

// Mean of all R, G and B values over foreground pixels.
inline double foreground_channel_mean(const ImageRaster& raster,
                                      const BlobMask& mask) {
  require_aligned(raster, mask);
  std::uint64_t sum = 0;
  std::uint64_t count = 0;
  const auto pixels = raster.pixels();
  const auto flags = mask.flags();
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    if (!flags[i]) continue;
    sum += pixels[i].r + pixels[i].g + pixels[i].b;
    count += 3;
  }
  if (count == 0) throw_data("mask has no foreground pixels");
  return static_cast<double>(sum) / static_cast<double>(count);
}

// Rescales the coefficients uniformly so the brightest variant keeps the
// foreground mean at or below `threshold`. Unchanged if already within it.
inline CoefficientVector adjust_coefficients(const CoefficientVector& k,
                                             const ImageRaster& raster,
                                             const BlobMask& mask,
                                             double threshold) {
  if (!(threshold > 0.0) || threshold > kChannelMax) {
    throw_invalid("saturation threshold must lie in (0, 255]");
  }
  const double mean = foreground_channel_mean(raster, mask);
  const double peak = mean * k.max();
  if (peak <= threshold) return k;

  const double scale = threshold / peak;
  std::vector<double> scaled(k.values().begin(), k.values().end());
  for (double& value : scaled) value *= scale;
  return CoefficientVector(std::move(scaled));
}

// Multiplies every channel of every foreground pixel by `coefficient`,
// rounding half up and clamping to [0, 255]. Background is left untouched.
inline ImageRaster apply_brightness_contrast(const ImageRaster& raster,
                                             const BlobMask& mask,
                                             double coefficient) {
  require_aligned(raster, mask);
  if (!(coefficient > 0.0)) throw_invalid("coefficient must be positive");

  std::array<std::uint8_t, 256> lut{};
  for (int v = 0; v < 256; ++v) {
    // The epsilon keeps exact halves (e.g. 5 x 0.7) from rounding down
    // because of binary representation error in the coefficient.
    const double scaled = std::floor(v * coefficient + 0.5 + 1e-9);
    lut[v] = static_cast<std::uint8_t>(std::clamp(scaled, 0.0, 255.0));
  }

  ImageRaster out = raster;
  auto pixels = out.pixels();
  const auto flags = mask.flags();
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    if (!flags[i]) continue;
    pixels[i] = {lut[pixels[i].r], lut[pixels[i].g], lut[pixels[i].b]};
  }
  return out;
}

}  // namespace mcm
