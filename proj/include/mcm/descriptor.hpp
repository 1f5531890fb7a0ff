#pragma once

// Multiple-instance person descriptors: each body part is a set of randomly
// sampled rectangular patches, each patch described by its 40-bin HSV
// histogram and its relative vertical position inside the part.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mcm/error.hpp"
#include "mcm/histogram.hpp"
#include "mcm/imaging.hpp"
#include "mcm/partition.hpp"
#include "mcm/random.hpp"

namespace mcm {

struct PatchDescriptor {
  Histogram hsv{};
  double y_pos = 0.0;

  friend bool operator==(const PatchDescriptor&, const PatchDescriptor&) = default;
};

// Unordered bag of patch descriptors for one body part.
struct PartSet {
  std::vector<PatchDescriptor> patches;

  std::size_t size() const noexcept { return patches.size(); }
  bool empty() const noexcept { return patches.empty(); }

  friend bool operator==(const PartSet&, const PartSet&) = default;
};

enum class Provenance { kTemplate, kProbe };

inline std::string_view to_string(Provenance p) {
  return p == Provenance::kTemplate ? "template" : "probe";
}

inline Provenance parse_provenance(std::string_view text) {
  if (text == "template") return Provenance::kTemplate;
  if (text == "probe") return Provenance::kProbe;
  throw_data("unknown provenance '" + std::string(text) + "'");
}

struct PersonDescriptor {
  std::vector<PartSet> parts;  // torso, legs
  std::string person_id;
  Provenance provenance = Provenance::kProbe;
  std::uint64_t seed = 0;

  friend bool operator==(const PersonDescriptor&,
                         const PersonDescriptor&) = default;
};

struct SamplingConfig {
  int patches = 80;  // per part
  double area_min = 0.125;
  double area_max = 0.25;
  double aspect_min = 0.5;  // width / height
  double aspect_max = 2.0;
  double min_mask_coverage = 0.5;
  std::uint64_t seed = 0;
  int max_attempts = 1000;  // rejection-sampling budget per patch

  void validate() const {
    if (patches < 1) throw_invalid("patch count must be at least 1");
    if (!(area_min > 0.0) || area_min > area_max || !(area_max < 1.0)) {
      throw_invalid("patch area bounds must satisfy 0 < min <= max < 1");
    }
    if (!(aspect_min > 0.0) || aspect_min > aspect_max) {
      throw_invalid("patch aspect bounds must satisfy 0 < min <= max");
    }
    if (min_mask_coverage < 0.0 || min_mask_coverage > 1.0) {
      throw_invalid("mask coverage must lie in [0, 1]");
    }
    if (max_attempts < 1) throw_invalid("retry budget must be at least 1");
  }
};

struct SimulationConfig {
  CoefficientVector coefficients = default_coefficients();
  double threshold = kDefaultSaturationThreshold;
};

struct Rect {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;

  long area() const noexcept { return static_cast<long>(width) * height; }

  friend bool operator==(const Rect&, const Rect&) = default;
};

// Checks the invariants every emitted patch must satisfy.
inline bool is_valid_patch(const PatchDescriptor& patch, double tolerance = 1e-9) {
  double sum = 0.0;
  for (double v : patch.hsv) {
    if (!(v >= 0.0)) return false;
    sum += v;
  }
  return std::abs(sum - 1.0) <= tolerance && patch.y_pos >= 0.0 &&
         patch.y_pos <= 1.0;
}

namespace detail {

// Summed-area table over the foreground flags of one band.
class CoverageTable {
 public:
  CoverageTable(const BlobMask& mask, RowBand band)
      : width_(mask.width()), top_(band.top),
        sums_(static_cast<std::size_t>(band.height() + 1) * (width_ + 1), 0) {
    for (int y = 0; y < band.height(); ++y) {
      int row = 0;
      for (int x = 0; x < width_; ++x) {
        row += mask.foreground(x, band.top + y) ? 1 : 0;
        at(x + 1, y + 1) = at(x + 1, y) + row;
      }
    }
  }

  int count(const Rect& r) const {
    const int y0 = r.y - top_, y1 = y0 + r.height;
    const int x0 = r.x, x1 = x0 + r.width;
    return at(x1, y1) - at(x0, y1) - at(x1, y0) + at(x0, y0);
  }

 private:
  int& at(int x, int y) { return sums_[static_cast<std::size_t>(y) * (width_ + 1) + x]; }
  int at(int x, int y) const {
    return sums_[static_cast<std::size_t>(y) * (width_ + 1) + x];
  }

  int width_;
  int top_;
  std::vector<int> sums_;
};

inline std::vector<PixelBins> bin_raster(const ImageRaster& raster) {
  std::vector<PixelBins> bins(raster.pixels().size());
  std::transform(raster.pixels().begin(), raster.pixels().end(), bins.begin(),
                 bin_pixel);
  return bins;
}

inline double relative_center(const Rect& rect, const RowBand& band) {
  const double center = rect.y + 0.5 * rect.height;
  return std::clamp((center - band.top) / band.height(), 0.0, 1.0);
}

inline PatchDescriptor describe_binned(std::span<const PixelBins> bins,
                                       const BlobMask& mask, const Rect& rect,
                                       const RowBand& band) {
  HistogramAccumulator acc;
  const auto flags = mask.flags();
  const int width = mask.width();
  for (int y = rect.y; y < rect.y + rect.height; ++y) {
    const std::size_t row = static_cast<std::size_t>(y) * width;
    for (int x = rect.x; x < rect.x + rect.width; ++x) {
      if (flags[row + x]) acc.add(bins[row + x]);
    }
  }
  if (acc.pixels() == 0) throw_data("patch contains no foreground pixels");
  return {acc.normalize(), relative_center(rect, band)};
}

inline void require_inside(const Rect& rect, int width, int height) {
  if (rect.width <= 0 || rect.height <= 0 || rect.x < 0 || rect.y < 0 ||
      rect.x + rect.width > width || rect.y + rect.height > height) {
    throw_invalid("patch rectangle lies outside the image");
  }
}

}  // namespace detail

// Draws config.patches rectangles inside the part band. Each has an area
// fraction of the band in [area_min, area_max], an aspect ratio in
// [aspect_min, aspect_max] before clamping to the band, and at least
// min_mask_coverage foreground. Deterministic in config.seed.
inline std::vector<Rect> sample_patches(const PartRegion& region,
                                        const SamplingConfig& config) {
  config.validate();
  const RowBand band = region.band;
  const int band_width = region.mask.width();
  const int band_height = band.height();
  if (band_height <= 0 || band_width <= 0) throw_data("empty part band");

  const double band_area = static_cast<double>(band_width) * band_height;
  const detail::CoverageTable coverage(region.mask, band);
  constexpr double kSlack = 1e-12;

  Rng rng(config.seed);
  std::vector<Rect> rects;
  rects.reserve(config.patches);
  for (int p = 0; p < config.patches; ++p) {
    bool accepted = false;
    for (int attempt = 0; attempt < config.max_attempts && !accepted; ++attempt) {
      const double area = rng.uniform(config.area_min, config.area_max) * band_area;
      const double aspect = rng.uniform(config.aspect_min, config.aspect_max);
      Rect rect;
      rect.width = std::clamp(static_cast<int>(std::lround(std::sqrt(area * aspect))),
                              1, band_width);
      rect.height = std::clamp(static_cast<int>(std::lround(std::sqrt(area / aspect))),
                               1, band_height);
      const double fraction = static_cast<double>(rect.area()) / band_area;
      if (fraction < config.area_min - kSlack || fraction > config.area_max + kSlack) {
        continue;
      }
      rect.x = static_cast<int>(rng.uniform_int(0, band_width - rect.width));
      rect.y = band.top +
               static_cast<int>(rng.uniform_int(0, band_height - rect.height));
      const double covered =
          static_cast<double>(coverage.count(rect)) / static_cast<double>(rect.area());
      if (covered + kSlack < config.min_mask_coverage || coverage.count(rect) == 0) {
        continue;
      }
      rects.push_back(rect);
      accepted = true;
    }
    if (!accepted) {
      throw_data("part band [" + std::to_string(band.top) + ", " +
                 std::to_string(band.bottom) + ") admits no patch within " +
                 std::to_string(config.max_attempts) + " attempts");
    }
  }
  return rects;
}

// Histogram over the foreground pixels inside `rect`, plus the relative
// vertical position of the rectangle center within `band` (clamped to [0,1]).
inline PatchDescriptor describe_patch(const ImageRaster& raster,
                                      const BlobMask& mask, const Rect& rect,
                                      const RowBand& band) {
  require_aligned(raster, mask);
  detail::require_inside(rect, raster.width(), raster.height());
  if (band.height() <= 0) throw_invalid("empty part band");
  HistogramAccumulator acc;
  for (int y = rect.y; y < rect.y + rect.height; ++y) {
    for (int x = rect.x; x < rect.x + rect.width; ++x) {
      if (mask.foreground(x, y)) acc.add(bin_pixel(raster.at(x, y)));
    }
  }
  if (acc.pixels() == 0) throw_data("patch contains no foreground pixels");
  return {acc.normalize(), detail::relative_center(rect, band)};
}

// Per-part seed so the parts draw from independent streams.
inline std::uint64_t part_seed(std::uint64_t seed, std::size_t part) {
  return derive_seed(seed, static_cast<std::uint64_t>(part));
}

// Samples P rectangles per part and describes them. With simulation, the
// coefficients are first adjusted against the saturation threshold, and each
// rectangle yields one descriptor per coefficient (rectangle-major order), so
// every part holds P * S descriptors. Rectangles are shared by all variants.
inline PersonDescriptor build_descriptor(
    const ImageRaster& raster, const BlobMask& mask,
    const BodyPartition& partition, const SamplingConfig& config,
    const std::optional<SimulationConfig>& simulation = std::nullopt) {
  require_aligned(raster, mask);
  config.validate();

  std::vector<std::vector<PixelBins>> variants;
  if (simulation) {
    const CoefficientVector k = adjust_coefficients(
        simulation->coefficients, raster, mask, simulation->threshold);
    for (double coefficient : k.values()) {
      variants.push_back(detail::bin_raster(
          apply_brightness_contrast(raster, mask, coefficient)));
    }
  } else {
    variants.push_back(detail::bin_raster(raster));
  }

  PersonDescriptor out;
  out.provenance = simulation ? Provenance::kTemplate : Provenance::kProbe;
  out.seed = config.seed;
  out.parts.resize(partition.parts.size());
  for (std::size_t part = 0; part < partition.parts.size(); ++part) {
    const PartRegion& region = partition.parts[part];
    SamplingConfig part_config = config;
    part_config.seed = part_seed(config.seed, part);
    const auto rects = sample_patches(region, part_config);

    auto& patches = out.parts[part].patches;
    patches.reserve(rects.size() * variants.size());
    for (const Rect& rect : rects) {
      for (const auto& bins : variants) {
        patches.push_back(
            detail::describe_binned(bins, region.mask, rect, region.band));
      }
    }
  }
  return out;
}

// Everything needed to go from an image and mask to a descriptor.
struct ExtractionConfig {
  SamplingConfig sampling;
  PartitionMode partition = PartitionMode::kSearch;
  std::optional<SimulationConfig> simulation;  // set for templates
};

inline PersonDescriptor extract_descriptor(const ImageRaster& raster,
                                           const BlobMask& mask,
                                           const ExtractionConfig& config,
                                           std::string person_id) {
  const BodyPartition partition = find_partition(raster, mask, config.partition);
  PersonDescriptor out =
      build_descriptor(raster, mask, partition, config.sampling, config.simulation);
  out.person_id = std::move(person_id);
  return out;
}

// Part-wise union of several frames of the same person (MvsS / MvsM).
inline PersonDescriptor merge_descriptors(std::span<const PersonDescriptor> frames) {
  if (frames.empty()) throw_invalid("nothing to merge");
  PersonDescriptor out = frames.front();
  for (const PersonDescriptor& frame : frames.subspan(1)) {
    if (frame.person_id != out.person_id) {
      throw_data("cannot merge descriptors of different persons ('" +
                 out.person_id + "' vs '" + frame.person_id + "')");
    }
    if (frame.parts.size() != out.parts.size()) {
      throw_data("cannot merge descriptors with different part counts");
    }
    for (std::size_t j = 0; j < out.parts.size(); ++j) {
      auto& dst = out.parts[j].patches;
      dst.insert(dst.end(), frame.parts[j].patches.begin(),
                 frame.parts[j].patches.end());
    }
  }
  return out;
}

}  // namespace mcm
