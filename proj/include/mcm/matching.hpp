#pragma once

// Patch metric, k-th Hausdorff set distance, weighted sequence distance and
// gallery ranking.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "mcm/descriptor.hpp"
#include "mcm/error.hpp"
#include "mcm/histogram.hpp"
#include "mcm/parallel.hpp"

namespace mcm {

struct MatchConfig {
  double beta = 0.6;  // weight of the vertical-position term
  int k = 10;         // rank used by the k-th Hausdorff distance
  std::vector<double> part_weights = {0.5, 0.5};

  void validate(std::size_t num_parts) const {
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
      throw_invalid("beta must be finite and non-negative");
    }
    if (k < 1) throw_invalid("k must be at least 1");
    if (part_weights.size() != num_parts) {
      throw_invalid("expected " + std::to_string(num_parts) +
                    " part weights, got " + std::to_string(part_weights.size()));
    }
    double sum = 0.0;
    for (double w : part_weights) {
      if (!(w >= 0.0)) throw_invalid("part weights must be non-negative");
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw_invalid("part weights must sum to 1");
  }
};

// Bhattacharyya distance of the histograms, inflated by the difference in
// vertical position: b * (1 + beta * |y1 - y2|).
inline double patch_distance(const PatchDescriptor& a, const PatchDescriptor& b,
                             double beta) {
  return bhattacharyya_distance(a.hsv, b.hsv) *
         (1.0 + beta * std::abs(a.y_pos - b.y_pos));
}

// k-th largest value (k = 1 is the maximum); k is clamped to values.size().
// Reorders `values`.
inline double kth_largest(std::vector<double>& values, int k) {
  if (values.empty()) throw_invalid("kth_largest of an empty list");
  const std::size_t rank =
      std::min(values.size(), static_cast<std::size_t>(std::max(k, 1))) - 1;
  std::nth_element(values.begin(), values.begin() + rank, values.end(),
                   std::greater<>());
  return values[rank];
}

// Symmetric k-th Hausdorff distance under an arbitrary element metric:
// max(h_k(X, Y), h_k(Y, X)), where h_k(X, Y) is the k-th largest of the
// nearest-neighbour distances from the elements of X to Y. Both directions
// come from a single pass over the |X| x |Y| distance matrix.
template <class T, class Metric>
double kth_hausdorff(std::span<const T> x, std::span<const T> y, int k,
                     Metric&& metric) {
  if (x.empty() || y.empty()) throw_data("k-th Hausdorff of an empty set");
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> from_x(x.size(), kInf);
  std::vector<double> from_y(y.size(), kInf);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      const double d = metric(x[i], y[j]);
      from_x[i] = std::min(from_x[i], d);
      from_y[j] = std::min(from_y[j], d);
    }
  }
  return std::max(kth_largest(from_x, k), kth_largest(from_y, k));
}

inline double kth_hausdorff(const PartSet& x, const PartSet& y, double beta,
                            int k) {
  return kth_hausdorff(
      std::span<const PatchDescriptor>(x.patches),
      std::span<const PatchDescriptor>(y.patches), k,
      [beta](const PatchDescriptor& a, const PatchDescriptor& b) {
        return patch_distance(a, b, beta);
      });
}

// A part set with square-rooted histograms laid out contiguously, so that
// repeated matching does not recompute roots.
class PreparedPartSet {
 public:
  PreparedPartSet() = default;

  explicit PreparedPartSet(const PartSet& set) {
    roots_.reserve(set.size() * kHistogramBins);
    y_.reserve(set.size());
    for (const PatchDescriptor& patch : set.patches) {
      for (double v : patch.hsv) roots_.push_back(std::sqrt(v));
      y_.push_back(patch.y_pos);
    }
  }

  std::size_t size() const noexcept { return y_.size(); }
  const double* root(std::size_t i) const { return &roots_[i * kHistogramBins]; }
  double y(std::size_t i) const { return y_[i]; }

 private:
  std::vector<double> roots_;
  std::vector<double> y_;
};

inline double kth_hausdorff(const PreparedPartSet& x, const PreparedPartSet& y,
                            double beta, int k) {
  if (x.size() == 0 || y.size() == 0) {
    throw_data("k-th Hausdorff of an empty set");
  }
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> from_x(x.size(), kInf);
  std::vector<double> from_y(y.size(), kInf);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double* p = x.root(i);
    const double yi = x.y(i);
    double row_min = kInf;
    for (std::size_t j = 0; j < y.size(); ++j) {
      const double* q = y.root(j);
      double acc = 0.0;
      for (int b = 0; b < kHistogramBins; ++b) {
        const double diff = p[b] - q[b];
        acc += diff * diff;
      }
      const double d = std::sqrt(std::clamp(0.5 * acc, 0.0, 1.0)) *
                       (1.0 + beta * std::abs(yi - y.y(j)));
      row_min = std::min(row_min, d);
      from_y[j] = std::min(from_y[j], d);
    }
    from_x[i] = row_min;
  }
  return std::max(kth_largest(from_x, k), kth_largest(from_y, k));
}

struct PreparedDescriptor {
  std::string person_id;
  std::vector<PreparedPartSet> parts;

  PreparedDescriptor() = default;
  explicit PreparedDescriptor(const PersonDescriptor& d) : person_id(d.person_id) {
    parts.reserve(d.parts.size());
    for (const PartSet& set : d.parts) parts.emplace_back(set);
  }
};

// Weighted combination of per-part distances; uniform weights give the mean.
inline double combine_part_distances(std::span<const double> distances,
                                     std::span<const double> weights) {
  double total = 0.0;
  for (std::size_t j = 0; j < distances.size(); ++j) {
    total += weights[j] * distances[j];
  }
  return total;
}

inline void require_same_parts(std::size_t a, std::size_t b) {
  if (a != b) {
    throw_data("part count mismatch (" + std::to_string(a) + " vs " +
               std::to_string(b) + ")");
  }
}

inline double sequence_distance(const PreparedDescriptor& t,
                                const PreparedDescriptor& q,
                                const MatchConfig& config) {
  require_same_parts(t.parts.size(), q.parts.size());
  config.validate(t.parts.size());
  std::vector<double> distances(t.parts.size());
  for (std::size_t j = 0; j < t.parts.size(); ++j) {
    distances[j] = kth_hausdorff(t.parts[j], q.parts[j], config.beta, config.k);
  }
  return combine_part_distances(distances, config.part_weights);
}

inline double sequence_distance(const PersonDescriptor& t,
                                const PersonDescriptor& q,
                                const MatchConfig& config) {
  return sequence_distance(PreparedDescriptor(t), PreparedDescriptor(q), config);
}

// Same combination under a caller-supplied patch metric.
template <class PatchMetric>
double sequence_distance(const PersonDescriptor& t, const PersonDescriptor& q,
                         const MatchConfig& config, PatchMetric&& metric) {
  require_same_parts(t.parts.size(), q.parts.size());
  config.validate(t.parts.size());
  std::vector<double> distances(t.parts.size());
  for (std::size_t j = 0; j < t.parts.size(); ++j) {
    distances[j] = kth_hausdorff(
        std::span<const PatchDescriptor>(t.parts[j].patches),
        std::span<const PatchDescriptor>(q.parts[j].patches), config.k, metric);
  }
  return combine_part_distances(distances, config.part_weights);
}

struct RankedMatch {
  std::string template_id;
  double distance = 0.0;

  friend bool operator==(const RankedMatch&, const RankedMatch&) = default;
};

struct RankedMatchList {
  std::string probe_id;
  std::vector<RankedMatch> matches;  // ascending distance

  // 1-based rank of `template_id`, or 0 if absent.
  std::size_t rank_of(const std::string& template_id) const {
    for (std::size_t i = 0; i < matches.size(); ++i) {
      if (matches[i].template_id == template_id) return i + 1;
    }
    return 0;
  }
};

// Sorts ascending by distance; equal distances are ordered by template id.
inline RankedMatchList make_ranking(std::string probe_id,
                                    std::vector<RankedMatch> matches) {
  std::stable_sort(matches.begin(), matches.end(),
                   [](const RankedMatch& a, const RankedMatch& b) {
                     if (a.distance != b.distance) return a.distance < b.distance;
                     return a.template_id < b.template_id;
                   });
  return {std::move(probe_id), std::move(matches)};
}

// Ranks every gallery entry by `distance(probe, entry)`.
template <class Probe, class Entry, class PairDistance>
  requires std::invocable<PairDistance&, const Probe&, const Entry&>
RankedMatchList rank_gallery(const Probe& probe, std::span<const Entry> gallery,
                             PairDistance&& distance, unsigned jobs = 1) {
  if (gallery.empty()) throw_data("gallery is empty");
  std::vector<RankedMatch> matches(gallery.size());
  parallel_for(gallery.size(), jobs, [&](std::size_t i) {
    matches[i] = {gallery[i].person_id, distance(probe, gallery[i])};
  });
  return make_ranking(probe.person_id, std::move(matches));
}

inline RankedMatchList rank_gallery(const PersonDescriptor& probe,
                                    std::span<const PersonDescriptor> gallery,
                                    const MatchConfig& config,
                                    unsigned jobs = 1) {
  if (gallery.empty()) throw_data("gallery is empty");
  const PreparedDescriptor prepared_probe(probe);
  std::vector<PreparedDescriptor> prepared(gallery.begin(), gallery.end());
  return rank_gallery(
      prepared_probe, std::span<const PreparedDescriptor>(prepared),
      [&config](const PreparedDescriptor& q, const PreparedDescriptor& t) {
        return sequence_distance(t, q, config);
      },
      jobs);
}

}  // namespace mcm
