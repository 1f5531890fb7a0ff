#pragma once

// Splits a person blob into torso and legs bands along two horizontal axes.
// The band above the first axis (head) is discarded.

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "mcm/error.hpp"
#include "mcm/histogram.hpp"
#include "mcm/imaging.hpp"

namespace mcm {

// Number of body parts per descriptor (torso, legs).
inline constexpr std::size_t kNumParts = 2;

// Half-open row interval [top, bottom).
struct RowBand {
  int top = 0;
  int bottom = 0;

  int height() const noexcept { return bottom - top; }
  bool contains(int y) const noexcept { return y >= top && y < bottom; }

  friend bool operator==(const RowBand&, const RowBand&) = default;
};

struct PartRegion {
  RowBand band;
  BlobMask mask;  // blob mask restricted to `band`
  std::size_t foreground = 0;
};

struct BodyPartition {
  int head_torso_y = 0;
  int torso_legs_y = 0;
  std::array<PartRegion, kNumParts> parts;  // torso, legs
};

enum class PartitionMode { kFixed, kSearch };

inline PartitionMode parse_partition_mode(std::string_view text) {
  if (text == "fixed") return PartitionMode::kFixed;
  if (text == "search") return PartitionMode::kSearch;
  throw_invalid("unknown partition mode '" + std::string(text) +
                "' (expected fixed or search)");
}

inline std::string_view to_string(PartitionMode mode) {
  return mode == PartitionMode::kFixed ? "fixed" : "search";
}

namespace partition_params {
inline constexpr double kFixedHeadTorso = 0.15;
inline constexpr double kFixedTorsoLegs = 0.55;
inline constexpr double kHeadTorsoLow = 0.08;
inline constexpr double kHeadTorsoHigh = 0.25;
inline constexpr double kTorsoLegsLow = 0.40;
inline constexpr double kTorsoLegsHigh = 0.65;
// Height of the comparison windows above/below a candidate axis.
inline constexpr double kWindowFraction = 0.10;
inline constexpr int kMinWindowRows = 2;
inline constexpr int kMinHeight = 8;
}  // namespace partition_params

// Rows compared on each side of a candidate axis.
inline int axis_window_rows(int height) {
  return std::max(partition_params::kMinWindowRows,
                  static_cast<int>(std::lround(
                      partition_params::kWindowFraction * height)));
}

// Inclusive candidate range [ceil(lo * h), floor(hi * h)], kept off row 0
// and the last row.
inline std::pair<int, int> axis_candidates(int height, double lo, double hi) {
  const int first = std::max(1, static_cast<int>(std::ceil(lo * height)));
  const int last =
      std::min(height - 1, static_cast<int>(std::floor(hi * height)));
  return {first, last};
}

inline PartRegion make_part_region(const BlobMask& mask, RowBand band) {
  PartRegion region{band, BlobMask(mask.width(), mask.height()), 0};
  for (int y = band.top; y < band.bottom; ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (mask.foreground(x, y)) {
        region.mask.set(x, y, true);
        ++region.foreground;
      }
    }
  }
  return region;
}

namespace detail {

// Finds the row in [first, last] maximising the Bhattacharyya distance
// between the foreground histograms of the `window` rows above and below it.
// `prefix[y]` accumulates rows [0, y). Ties keep the smallest row.
inline int best_axis(const std::vector<HistogramAccumulator>& prefix,
                     int height, int first, int last, int window) {
  int best_row = -1;
  double best_score = -std::numeric_limits<double>::infinity();
  for (int y = first; y <= last; ++y) {
    HistogramAccumulator above = prefix[y];
    above.subtract(prefix[std::max(0, y - window)]);
    HistogramAccumulator below = prefix[std::min(height, y + window)];
    below.subtract(prefix[y]);
    if (above.pixels() == 0 || below.pixels() == 0) continue;
    const double score =
        bhattacharyya_distance(above.normalize(), below.normalize());
    if (score > best_score) {
      best_score = score;
      best_row = y;
    }
  }
  return best_row;
}

}  // namespace detail

inline BodyPartition find_partition(const ImageRaster& raster,
                                    const BlobMask& mask, PartitionMode mode) {
  require_aligned(raster, mask);
  const int height = raster.height();
  if (height < partition_params::kMinHeight) {
    throw_data("image too short to partition (" + std::to_string(height) +
               " rows, need at least " +
               std::to_string(partition_params::kMinHeight) + ")");
  }
  if (mask.count() == 0) throw_data("blob mask is empty");

  BodyPartition out;
  if (mode == PartitionMode::kFixed) {
    out.head_torso_y = static_cast<int>(
        std::lround(partition_params::kFixedHeadTorso * height));
    out.torso_legs_y = static_cast<int>(
        std::lround(partition_params::kFixedTorsoLegs * height));
  } else {
    std::vector<HistogramAccumulator> prefix(height + 1);
    for (int y = 0; y < height; ++y) {
      prefix[y + 1] = prefix[y];
      for (int x = 0; x < raster.width(); ++x) {
        if (mask.foreground(x, y)) prefix[y + 1].add(bin_pixel(raster.at(x, y)));
      }
    }
    const int window = axis_window_rows(height);
    const auto [ht_first, ht_last] =
        axis_candidates(height, partition_params::kHeadTorsoLow,
                        partition_params::kHeadTorsoHigh);
    const auto [tl_first, tl_last] =
        axis_candidates(height, partition_params::kTorsoLegsLow,
                        partition_params::kTorsoLegsHigh);
    out.head_torso_y =
        detail::best_axis(prefix, height, ht_first, ht_last, window);
    out.torso_legs_y =
        detail::best_axis(prefix, height, tl_first, tl_last, window);
    if (out.head_torso_y < 0 || out.torso_legs_y < 0) {
      throw_data("no foreground on both sides of any candidate body axis");
    }
  }

  out.parts[0] = make_part_region(mask, {out.head_torso_y, out.torso_legs_y});
  out.parts[1] = make_part_region(mask, {out.torso_legs_y, height});
  if (out.parts[0].foreground == 0) throw_data("torso band has no foreground");
  if (out.parts[1].foreground == 0) throw_data("legs band has no foreground");
  return out;
}

inline const PartRegion& part_bounding_region(const BodyPartition& partition,
                                              std::size_t index) {
  if (index >= partition.parts.size()) {
    throw_invalid("part index " + std::to_string(index) + " out of range");
  }
  return partition.parts[index];
}

}  // namespace mcm
