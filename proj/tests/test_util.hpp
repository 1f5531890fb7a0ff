#pragma once

// Shared generators for randomized tests.

#include <cmath>
#include <random>
#include <vector>

#include "mcm/descriptor.hpp"
#include "mcm/histogram.hpp"

namespace mcm::testing {

// A normalized 40-bin histogram with three unit-sum sub-histograms, some
// bins forced to zero to mimic sparse patches.
inline Histogram random_histogram(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Histogram h{};
  const int sizes[] = {kHueBins, kSaturationBins, kValueBins};
  int offset = 0;
  for (int size : sizes) {
    double sum = 0.0;
    for (int i = 0; i < size; ++i) {
      const double v = u(gen) < 0.3 ? 0.0 : u(gen);
      h[offset + i] = v;
      sum += v;
    }
    if (sum == 0.0) {
      h[offset] = 1.0;
      sum = 1.0;
    }
    for (int i = 0; i < size; ++i) h[offset + i] /= 3.0 * sum;
    offset += size;
  }
  return h;
}

inline PatchDescriptor random_patch(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return {random_histogram(gen), u(gen)};
}

inline PartSet random_set(std::mt19937_64& gen, int min_size, int max_size) {
  std::uniform_int_distribution<int> size(min_size, max_size);
  PartSet set;
  const int n = size(gen);
  for (int i = 0; i < n; ++i) set.patches.push_back(random_patch(gen));
  return set;
}

inline PersonDescriptor random_person(std::mt19937_64& gen, std::string id,
                                      int min_size, int max_size) {
  PersonDescriptor d;
  d.person_id = std::move(id);
  for (std::size_t j = 0; j < kNumParts; ++j) {
    d.parts.push_back(random_set(gen, min_size, max_size));
  }
  return d;
}

// Direct-summation Bhattacharyya distance sqrt(1 - sum sqrt(p q)).
inline double bhattacharyya_oracle(const Histogram& p, const Histogram& q) {
  double bc = 0.0;
  for (int i = 0; i < kHistogramBins; ++i) bc += std::sqrt(p[i] * q[i]);
  bc = std::min(1.0, std::max(0.0, bc));
  return std::sqrt(1.0 - bc);
}

}  // namespace mcm::testing
