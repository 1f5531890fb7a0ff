#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "mcm/matching.hpp"
#include "test_util.hpp"

namespace mcm {
namespace {

// Full distance matrix, explicit sort, k-th largest of each direction.
double hausdorff_oracle(const PartSet& x, const PartSet& y, double beta, int k) {
  std::vector<std::vector<double>> d(x.size(), std::vector<double>(y.size()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      d[i][j] = testing::bhattacharyya_oracle(x.patches[i].hsv, y.patches[j].hsv) *
                (1.0 + beta * std::abs(x.patches[i].y_pos - y.patches[j].y_pos));
    }
  }
  std::vector<double> rows, cols;
  for (std::size_t i = 0; i < x.size(); ++i) {
    rows.push_back(*std::min_element(d[i].begin(), d[i].end()));
  }
  for (std::size_t j = 0; j < y.size(); ++j) {
    double m = d[0][j];
    for (std::size_t i = 1; i < x.size(); ++i) m = std::min(m, d[i][j]);
    cols.push_back(m);
  }
  std::sort(rows.rbegin(), rows.rend());
  std::sort(cols.rbegin(), cols.rend());
  const auto pick = [k](const std::vector<double>& v) {
    return v[std::min<std::size_t>(k, v.size()) - 1];
  };
  return std::max(pick(rows), pick(cols));
}

PatchDescriptor one_hot(int bin, double y) {
  PatchDescriptor p;
  p.hsv[bin] = 1.0;
  p.y_pos = y;
  return p;
}

TEST(PatchDistance, Examples) {
  PatchDescriptor a = one_hot(0, 0.2);
  PatchDescriptor b;
  b.hsv[0] = b.hsv[1] = 0.5;
  b.y_pos = 0.2;
  const double expected = std::sqrt(1.0 - std::sqrt(0.5));
  EXPECT_NEAR(patch_distance(a, b, 0.6), expected, 1e-12);
  EXPECT_NEAR(patch_distance(a, b, 0.6), 0.5412, 5e-5);
  b.y_pos = 0.7;
  EXPECT_NEAR(patch_distance(a, b, 0.6), expected * 1.3, 1e-12);
  EXPECT_NEAR(patch_distance(a, b, 0.6), 0.7035, 1e-4);
  EXPECT_EQ(patch_distance(a, a, 0.6), 0.0);
}

TEST(PatchDistance, Properties) {
  std::mt19937_64 gen(77);
  for (int i = 0; i < 1000; ++i) {
    const PatchDescriptor a = testing::random_patch(gen);
    PatchDescriptor b = testing::random_patch(gen);
    const double d = patch_distance(a, b, 0.6);
    ASSERT_GE(d, 0.0);
    ASSERT_EQ(d, patch_distance(b, a, 0.6));
    // Identical histograms at different heights still give zero.
    PatchDescriptor moved = a;
    moved.y_pos = 1.0 - a.y_pos;
    ASSERT_EQ(patch_distance(a, moved, 0.6), 0.0);
    // beta = 0 ignores position.
    b.y_pos = 0.0;
    const double at0 = patch_distance(a, b, 0.0);
    b.y_pos = 1.0;
    ASSERT_EQ(at0, patch_distance(a, b, 0.0));
    ASSERT_EQ(at0, bhattacharyya_distance(a.hsv, b.hsv));
  }
}

TEST(KthHausdorff, ScalarExample) {
  const std::vector<double> x{0, 4, 10}, y{0, 1};
  auto metric = [](double a, double b) { return std::abs(a - b); };
  EXPECT_EQ(kth_hausdorff(std::span<const double>(x), std::span<const double>(y), 2, metric), 3.0);
  EXPECT_EQ(kth_hausdorff(std::span<const double>(x), std::span<const double>(y), 1, metric), 9.0);
  EXPECT_EQ(kth_hausdorff(std::span<const double>(y), std::span<const double>(x), 1, metric), 9.0);
  // k beyond the set size clamps to the smallest minimum.
  EXPECT_EQ(kth_hausdorff(std::span<const double>(x), std::span<const double>(y), 50, metric), 0.0);
}

TEST(KthHausdorff, EmptySet) {
  PartSet empty, one;
  one.patches.push_back(one_hot(3, 0.5));
  EXPECT_THROW(kth_hausdorff(empty, one, 0.6, 1), Error);
  EXPECT_THROW(kth_hausdorff(one, empty, 0.6, 1), Error);
  EXPECT_THROW(kth_hausdorff(PreparedPartSet(one), PreparedPartSet(empty), 0.6, 1), Error);
}

TEST(KthHausdorff, MatchesOracle) {
  std::mt19937_64 gen(2024);
  std::uniform_int_distribution<int> kd(1, 25);
  std::uniform_real_distribution<double> bd(0.0, 2.0);
  for (int i = 0; i < 1000; ++i) {
    const PartSet x = testing::random_set(gen, 1, 20);
    const PartSet y = testing::random_set(gen, 1, 20);
    const int k = kd(gen);
    const double beta = bd(gen);
    const double expected = hausdorff_oracle(x, y, beta, k);
    ASSERT_NEAR(kth_hausdorff(x, y, beta, k), expected, 1e-12);
    ASSERT_NEAR(kth_hausdorff(PreparedPartSet(x), PreparedPartSet(y), beta, k),
                expected, 1e-12);
    ASSERT_EQ(kth_hausdorff(x, y, beta, k), kth_hausdorff(y, x, beta, k));
  }
}

TEST(KthHausdorff, SelfDistanceAndMonotoneInK) {
  std::mt19937_64 gen(5);
  for (int i = 0; i < 1000; ++i) {
    const PartSet x = testing::random_set(gen, 1, 20);
    const PartSet y = testing::random_set(gen, 1, 20);
    const PreparedPartSet px(x), py(y);
    for (int k = 1; k <= static_cast<int>(x.size()); ++k) {
      ASSERT_EQ(kth_hausdorff(px, px, 0.6, k), 0.0);
    }
    double previous = kth_hausdorff(px, py, 0.6, 1);
    for (int k = 2; k <= 22; ++k) {
      const double current = kth_hausdorff(px, py, 0.6, k);
      ASSERT_LE(current, previous);
      previous = current;
    }
  }
}

TEST(SequenceDistance, WeightsCombineParts) {
  // Part sets chosen so the per-part distances are 0.2 and 0.4 under a
  // scalar stand-in metric on y_pos.
  PersonDescriptor t, q;
  t.parts = {PartSet{{one_hot(0, 0.0)}}, PartSet{{one_hot(0, 0.0)}}};
  q.parts = {PartSet{{one_hot(0, 0.2)}}, PartSet{{one_hot(0, 0.4)}}};
  auto metric = [](const PatchDescriptor& a, const PatchDescriptor& b) {
    return std::abs(a.y_pos - b.y_pos);
  };
  MatchConfig config;
  EXPECT_NEAR(sequence_distance(t, q, config, metric), 0.3, 1e-15);
  config.part_weights = {1.0, 0.0};
  EXPECT_NEAR(sequence_distance(t, q, config, metric), 0.2, 1e-15);
}

TEST(SequenceDistance, SelfAndErrors) {
  std::mt19937_64 gen(9);
  const PersonDescriptor t = testing::random_person(gen, "a", 10, 30);
  EXPECT_EQ(sequence_distance(t, t, MatchConfig{}), 0.0);
  PersonDescriptor three = t;
  three.parts.push_back(three.parts[0]);
  EXPECT_THROW(sequence_distance(t, three, MatchConfig{}), Error);
  MatchConfig bad;
  bad.part_weights = {0.7, 0.7};
  EXPECT_THROW(sequence_distance(t, t, bad), Error);
  bad = {};
  bad.k = 0;
  EXPECT_THROW(sequence_distance(t, t, bad), Error);
}

TEST(RankGallery, SingletonAndSelf) {
  std::mt19937_64 gen(10);
  const PersonDescriptor q = testing::random_person(gen, "q", 5, 10);
  std::vector<PersonDescriptor> gallery{testing::random_person(gen, "only", 5, 10)};
  auto ranked = rank_gallery(q, gallery, MatchConfig{});
  ASSERT_EQ(ranked.matches.size(), 1u);
  EXPECT_EQ(ranked.matches[0].template_id, "only");
  EXPECT_EQ(ranked.probe_id, "q");

  gallery.push_back(q);
  gallery.push_back(testing::random_person(gen, "other", 5, 10));
  ranked = rank_gallery(q, gallery, MatchConfig{});
  EXPECT_EQ(ranked.matches[0].template_id, "q");
  EXPECT_EQ(ranked.matches[0].distance, 0.0);
  EXPECT_EQ(ranked.rank_of("q"), 1u);
  EXPECT_EQ(ranked.rank_of("missing"), 0u);
  EXPECT_THROW(rank_gallery(q, std::span<const PersonDescriptor>(), MatchConfig{}), Error);
}

TEST(RankGallery, TiesBreakById) {
  PersonDescriptor q;
  q.person_id = "q";
  q.parts = {PartSet{{one_hot(0, 0.5)}}, PartSet{{one_hot(0, 0.5)}}};
  PersonDescriptor b = q, a = q, c = q;
  b.person_id = "b";
  a.person_id = "a";
  c.person_id = "c";
  const std::vector<PersonDescriptor> gallery{c, b, a};
  const auto ranked = rank_gallery(q, gallery, MatchConfig{});
  EXPECT_EQ(ranked.matches[0].template_id, "a");
  EXPECT_EQ(ranked.matches[1].template_id, "b");
  EXPECT_EQ(ranked.matches[2].template_id, "c");
}

TEST(RankGallery, AgreesWithBruteForce) {
  std::mt19937_64 gen(31);
  for (int round = 0; round < 50; ++round) {
    const PersonDescriptor q = testing::random_person(gen, "q", 1, 12);
    std::vector<PersonDescriptor> gallery;
    for (const char* id : {"t1", "t2", "t3"}) {
      gallery.push_back(testing::random_person(gen, id, 1, 12));
    }
    const MatchConfig config;
    std::vector<std::pair<double, std::string>> expected;
    for (const auto& t : gallery) {
      const double d = 0.5 * hausdorff_oracle(t.parts[0], q.parts[0], 0.6, 10) +
                       0.5 * hausdorff_oracle(t.parts[1], q.parts[1], 0.6, 10);
      expected.emplace_back(d, t.person_id);
    }
    std::sort(expected.begin(), expected.end());
    const auto ranked = rank_gallery(q, gallery, config, 2);
    ASSERT_EQ(ranked.matches.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
      ASSERT_EQ(ranked.matches[i].template_id, expected[i].second);
      ASSERT_NEAR(ranked.matches[i].distance, expected[i].first, 1e-12);
    }
  }
}

TEST(RankGallery, ScalingMetricKeepsOrder) {
  std::mt19937_64 gen(41);
  std::uniform_real_distribution<double> scale(0.01, 100.0);
  const MatchConfig config;
  for (int round = 0; round < 1000; ++round) {
    const PersonDescriptor q = testing::random_person(gen, "q", 1, 6);
    std::vector<PersonDescriptor> gallery;
    for (int t = 0; t < 4; ++t) {
      gallery.push_back(testing::random_person(gen, "t" + std::to_string(t), 1, 6));
    }
    const double c = scale(gen);
    auto base = [&](const PersonDescriptor& probe, const PersonDescriptor& t) {
      return sequence_distance(t, probe, config, [&](const PatchDescriptor& a, const PatchDescriptor& b) {
        return patch_distance(a, b, config.beta);
      });
    };
    auto scaled = [&](const PersonDescriptor& probe, const PersonDescriptor& t) {
      return sequence_distance(t, probe, config, [&](const PatchDescriptor& a, const PatchDescriptor& b) {
        return c * patch_distance(a, b, config.beta);
      });
    };
    const auto r1 = rank_gallery(q, std::span<const PersonDescriptor>(gallery), base);
    const auto r2 = rank_gallery(q, std::span<const PersonDescriptor>(gallery), scaled);
    for (std::size_t i = 0; i < gallery.size(); ++i) {
      ASSERT_EQ(r1.matches[i].template_id, r2.matches[i].template_id);
      ASSERT_NEAR(r2.matches[i].distance, c * r1.matches[i].distance,
                  1e-12 * std::max(1.0, c));
    }
  }
}

TEST(RankGallery, ParallelMatchesSerial) {
  std::mt19937_64 gen(51);
  const PersonDescriptor q = testing::random_person(gen, "q", 10, 20);
  std::vector<PersonDescriptor> gallery;
  for (int t = 0; t < 17; ++t) {
    gallery.push_back(testing::random_person(gen, "t" + std::to_string(t), 10, 20));
  }
  const auto serial = rank_gallery(q, gallery, MatchConfig{}, 1);
  const auto parallel = rank_gallery(q, gallery, MatchConfig{}, 4);
  EXPECT_EQ(serial.matches, parallel.matches);
  for (std::size_t i = 1; i < serial.matches.size(); ++i) {
    EXPECT_LE(serial.matches[i - 1].distance, serial.matches[i].distance);
  }
}

}  // namespace
}  // namespace mcm
