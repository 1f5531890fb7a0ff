#pragma once

// Single-vs-single evaluation: dataset manifests, random subset trials,
// cumulative matching characteristic (CMC) curves, the end-to-end benchmark
// with timing, and a synthetic dataset generator for illumination tests.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mcm/descriptor.hpp"
#include "mcm/error.hpp"
#include "mcm/image_io.hpp"
#include "mcm/imaging.hpp"
#include "mcm/matching.hpp"
#include "mcm/parallel.hpp"
#include "mcm/random.hpp"

namespace mcm {

// ---------------------------------------------------------------------------
// Manifests

struct ManifestEntry {
  std::string person_id;
  std::string camera_id;
  std::filesystem::path image;
  std::filesystem::path mask;

  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

struct DatasetManifest {
  std::vector<ManifestEntry> entries;
};

// JSON lines, one {person_id, camera_id, image, mask} object per line.
// Relative paths are resolved against the manifest's directory.
inline DatasetManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw_io("cannot open manifest: " + path.string());
  const auto base = path.parent_path();
  DatasetManifest manifest;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto doc = nlohmann::json::parse(line);
      ManifestEntry e;
      e.person_id = doc.at("person_id").get<std::string>();
      e.camera_id = doc.at("camera_id").get<std::string>();
      e.image = doc.at("image").get<std::string>();
      e.mask = doc.at("mask").get<std::string>();
      if (e.image.is_relative()) e.image = base / e.image;
      if (e.mask.is_relative()) e.mask = base / e.mask;
      manifest.entries.push_back(std::move(e));
    } catch (const nlohmann::json::exception& ex) {
      throw_data("manifest " + path.string() + " line " +
                 std::to_string(line_no) + ": " + ex.what());
    }
  }
  if (manifest.entries.empty()) throw_data("manifest is empty: " + path.string());
  return manifest;
}

// Paths are written relative to the manifest directory when possible.
inline void save_manifest(const DatasetManifest& manifest,
                          const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw_io("cannot write manifest: " + path.string());
  const auto base = path.parent_path();
  auto rel = [&base](const std::filesystem::path& p) {
    return base.empty() ? p.generic_string()
                        : p.lexically_relative(base).generic_string();
  };
  for (const ManifestEntry& e : manifest.entries) {
    nlohmann::json doc = {{"person_id", e.person_id},
                          {"camera_id", e.camera_id},
                          {"image", rel(e.image)},
                          {"mask", rel(e.mask)}};
    out << doc.dump() << '\n';
  }
  if (!out) throw_io("write failed: " + path.string());
}

// One person with a gallery view (first camera id in lexicographic order)
// and a probe view (second camera id). Indices refer to manifest entries.
struct PersonViews {
  std::string person_id;
  std::size_t gallery = 0;
  std::size_t probe = 0;
};

inline std::vector<PersonViews> svss_views(const DatasetManifest& manifest) {
  std::set<std::string> cameras;
  for (const auto& e : manifest.entries) cameras.insert(e.camera_id);
  if (cameras.size() < 2) {
    throw_data("manifest needs two camera views per person, found " +
               std::to_string(cameras.size()) + " camera id(s)");
  }
  const std::string gallery_cam = *cameras.begin();
  const std::string probe_cam = *std::next(cameras.begin());

  std::map<std::string, std::pair<std::optional<std::size_t>,
                                  std::optional<std::size_t>>> by_person;
  for (std::size_t i = 0; i < manifest.entries.size(); ++i) {
    const auto& e = manifest.entries[i];
    auto& slot = by_person[e.person_id];
    if (e.camera_id == gallery_cam && !slot.first) slot.first = i;
    if (e.camera_id == probe_cam && !slot.second) slot.second = i;
  }
  std::vector<PersonViews> out;
  for (const auto& [id, slot] : by_person) {
    if (!slot.first || !slot.second) {
      throw_data("person '" + id + "' lacks an image from camera '" +
                 (slot.first ? probe_cam : gallery_cam) + "'");
    }
    out.push_back({id, *slot.first, *slot.second});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Trials

struct TrialSpec {
  std::size_t subset_size = 316;
  std::size_t num_trials = 10;
  std::uint64_t seed = 1;
};

struct Trial {
  std::vector<PersonViews> persons;  // sorted by person id
};

// Each trial draws subset_size distinct persons with its own seeded stream.
inline std::vector<Trial> make_trials(const DatasetManifest& manifest,
                                      const TrialSpec& spec) {
  const auto views = svss_views(manifest);
  if (spec.subset_size == 0) throw_invalid("subset size must be positive");
  if (spec.num_trials == 0) throw_invalid("number of trials must be positive");
  if (spec.subset_size > views.size()) {
    throw_invalid("subset size " + std::to_string(spec.subset_size) +
                  " exceeds the " + std::to_string(views.size()) +
                  " persons in the manifest");
  }
  std::vector<Trial> trials;
  for (std::size_t t = 0; t < spec.num_trials; ++t) {
    Rng rng(derive_seed(spec.seed, static_cast<std::uint64_t>(t)));
    std::vector<std::size_t> order(views.size());
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = 0; i < spec.subset_size; ++i) {
      const auto j = static_cast<std::size_t>(
          rng.uniform_int(static_cast<std::int64_t>(i),
                          static_cast<std::int64_t>(order.size() - 1)));
      std::swap(order[i], order[j]);
    }
    order.resize(spec.subset_size);
    std::sort(order.begin(), order.end());
    Trial trial;
    for (std::size_t idx : order) trial.persons.push_back(views[idx]);
    trials.push_back(std::move(trial));
  }
  return trials;
}

// ---------------------------------------------------------------------------
// CMC

struct CmcCurve {
  std::vector<double> values;  // values[n-1] = P(correct match within top n)
  std::size_t trials = 1;
};

inline CmcCurve compute_cmc(std::span<const RankedMatchList> rankings,
                            std::span<const std::string> ground_truth) {
  if (rankings.empty()) throw_invalid("no rankings to evaluate");
  if (rankings.size() != ground_truth.size()) {
    throw_invalid("one ground-truth id is required per ranking");
  }
  std::size_t length = 0;
  for (const auto& r : rankings) length = std::max(length, r.matches.size());

  std::vector<std::size_t> hits(length, 0);
  for (std::size_t i = 0; i < rankings.size(); ++i) {
    const std::size_t rank = rankings[i].rank_of(ground_truth[i]);
    if (rank == 0) {
      throw_data("probe '" + rankings[i].probe_id + "' has no template '" +
                 ground_truth[i] + "' in its gallery");
    }
    ++hits[rank - 1];
  }
  CmcCurve curve;
  curve.values.resize(length);
  std::size_t cumulative = 0;
  for (std::size_t n = 0; n < length; ++n) {
    cumulative += hits[n];
    curve.values[n] =
        static_cast<double>(cumulative) / static_cast<double>(rankings.size());
  }
  return curve;
}

// Pointwise arithmetic mean over trials.
inline CmcCurve average_cmc(std::span<const CmcCurve> curves) {
  if (curves.empty()) throw_invalid("no curves to average");
  CmcCurve out;
  out.values.assign(curves.front().values.size(), 0.0);
  out.trials = 0;
  for (const CmcCurve& c : curves) {
    if (c.values.size() != out.values.size()) {
      throw_invalid("cannot average CMC curves of different lengths");
    }
    for (std::size_t n = 0; n < c.values.size(); ++n) out.values[n] += c.values[n];
    out.trials += c.trials;
  }
  for (double& v : out.values) v /= static_cast<double>(curves.size());
  return out;
}

// ---------------------------------------------------------------------------
// Benchmark

struct BenchmarkConfig {
  SamplingConfig sampling;
  PartitionMode partition = PartitionMode::kSearch;
  bool simulation = true;
  SimulationConfig simulation_params;
  MatchConfig match;
  TrialSpec trials;
  unsigned jobs = 1;
};

struct TimingReport {
  double template_ms = 0.0;  // mean per gallery frame
  double probe_ms = 0.0;     // mean per probe frame
  double match_ms = 0.0;     // mean per template/probe pair
  std::size_t templates = 0;
  std::size_t probes = 0;
  std::size_t pairs = 0;
  std::string cpu_model;
  unsigned hardware_threads = 0;
  unsigned jobs = 1;
};

struct BenchmarkResult {
  CmcCurve cmc;
  std::vector<CmcCurve> per_trial;
  TimingReport timing;
};

inline std::string cpu_model_name() {
  std::ifstream in("/proc/cpuinfo");
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("model name", 0) == 0) {
      const auto colon = line.find(':');
      if (colon != std::string::npos) {
        auto name = line.substr(colon + 1);
        name.erase(0, name.find_first_not_of(' '));
        return name;
      }
    }
  }
  return "unknown";
}

// Seed for one frame, derived from the run seed and the frame identity so
// results do not depend on extraction order or caching.
inline std::uint64_t frame_seed(std::uint64_t seed, const ManifestEntry& e) {
  return derive_seed(seed, e.person_id + "/" + e.camera_id);
}

namespace detail {

using Clock = std::chrono::steady_clock;

inline double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace detail

// Extracts gallery templates (with or without simulation) and probes
// (never simulated) for every frame used by any trial, ranks each probe
// against its trial's gallery and averages the per-trial CMC curves.
inline BenchmarkResult run_benchmark(const DatasetManifest& manifest,
                                     const BenchmarkConfig& config) {
  config.sampling.validate();
  config.match.validate(kNumParts);
  const auto trials = make_trials(manifest, config.trials);

  std::set<std::size_t> gallery_set, probe_set;
  std::set<std::pair<std::size_t, std::size_t>> pair_set;  // (probe, gallery)
  for (const Trial& trial : trials) {
    for (const auto& p : trial.persons) {
      gallery_set.insert(p.gallery);
      probe_set.insert(p.probe);
    }
    for (const auto& p : trial.persons) {
      for (const auto& g : trial.persons) pair_set.insert({p.probe, g.gallery});
    }
  }

  struct Job {
    std::size_t entry;
    bool is_template;
  };
  std::vector<Job> jobs;
  for (std::size_t e : gallery_set) jobs.push_back({e, true});
  for (std::size_t e : probe_set) jobs.push_back({e, false});

  std::vector<PreparedDescriptor> prepared(jobs.size());
  std::vector<double> extract_ms(jobs.size(), 0.0);
  parallel_for(jobs.size(), config.jobs, [&](std::size_t i) {
    const ManifestEntry& entry = manifest.entries[jobs[i].entry];
    const ImageRaster raster = load_image(entry.image);
    const BlobMask mask = load_mask(entry.mask);
    ExtractionConfig extraction;
    extraction.sampling = config.sampling;
    extraction.sampling.seed = frame_seed(config.sampling.seed, entry);
    extraction.partition = config.partition;
    if (jobs[i].is_template && config.simulation) {
      extraction.simulation = config.simulation_params;
    }
    const auto start = detail::Clock::now();
    const PersonDescriptor d =
        extract_descriptor(raster, mask, extraction, entry.person_id);
    prepared[i] = PreparedDescriptor(d);
    extract_ms[i] = detail::elapsed_ms(start);
  });

  std::unordered_map<std::size_t, std::size_t> template_slot, probe_slot;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    (jobs[i].is_template ? template_slot : probe_slot)[jobs[i].entry] = i;
  }

  const std::vector<std::pair<std::size_t, std::size_t>> pairs(pair_set.begin(),
                                                               pair_set.end());
  std::vector<double> distances(pairs.size());
  std::vector<double> match_ms(pairs.size());
  parallel_for(pairs.size(), config.jobs, [&](std::size_t i) {
    const auto& probe = prepared[probe_slot.at(pairs[i].first)];
    const auto& templ = prepared[template_slot.at(pairs[i].second)];
    const auto start = detail::Clock::now();
    distances[i] = sequence_distance(templ, probe, config.match);
    match_ms[i] = detail::elapsed_ms(start);
  });
  auto distance_of = [&](std::size_t probe, std::size_t gallery) {
    const auto it = std::lower_bound(pairs.begin(), pairs.end(),
                                     std::make_pair(probe, gallery));
    return distances[static_cast<std::size_t>(it - pairs.begin())];
  };

  BenchmarkResult result;
  for (const Trial& trial : trials) {
    std::vector<RankedMatchList> rankings;
    std::vector<std::string> truth;
    for (const auto& p : trial.persons) {
      std::vector<RankedMatch> matches;
      matches.reserve(trial.persons.size());
      for (const auto& g : trial.persons) {
        matches.push_back({g.person_id, distance_of(p.probe, g.gallery)});
      }
      rankings.push_back(make_ranking(p.person_id, std::move(matches)));
      truth.push_back(p.person_id);
    }
    result.per_trial.push_back(compute_cmc(rankings, truth));
  }
  result.cmc = average_cmc(result.per_trial);

  TimingReport& timing = result.timing;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (jobs[i].is_template) {
      timing.template_ms += extract_ms[i];
      ++timing.templates;
    } else {
      timing.probe_ms += extract_ms[i];
      ++timing.probes;
    }
  }
  if (timing.templates) timing.template_ms /= static_cast<double>(timing.templates);
  if (timing.probes) timing.probe_ms /= static_cast<double>(timing.probes);
  timing.pairs = pairs.size();
  timing.match_ms = pairs.empty()
                        ? 0.0
                        : std::accumulate(match_ms.begin(), match_ms.end(), 0.0) /
                              static_cast<double>(pairs.size());
  timing.cpu_model = cpu_model_name();
  timing.hardware_threads = std::thread::hardware_concurrency();
  timing.jobs = config.jobs;
  return result;
}

// ---------------------------------------------------------------------------
// Synthetic data

inline constexpr int kSyntheticWidth = 48;
inline constexpr int kSyntheticHeight = 128;

struct SyntheticPerson {
  ImageRaster image;
  BlobMask mask;
};

namespace detail {

inline Rgb random_color(Rng& rng, int lo, int hi) {
  auto channel = [&] { return static_cast<std::uint8_t>(rng.uniform_int(lo, hi)); };
  const std::uint8_t r = channel();
  const std::uint8_t g = channel();
  const std::uint8_t b = channel();
  return {r, g, b};
}

inline int color_gap(Rgb a, Rgb b) {
  return std::abs(a.r - b.r) + std::abs(a.g - b.g) + std::abs(a.b - b.b);
}

inline std::uint8_t jitter(std::uint8_t v, double factor, int noise) {
  const double out = std::round(v * factor) + noise;
  return static_cast<std::uint8_t>(std::clamp(out, 0.0, 255.0));
}

// Fills rows [top, bottom) with 8x8 blocks of `base`, some replaced by
// `accent`, each block shaded by a random factor plus per-pixel noise.
inline void paint_band(ImageRaster& image, Rng& rng, int top, int bottom,
                       Rgb base, Rgb accent, double accent_rate) {
  constexpr int kBlock = 8;
  for (int by = top; by < bottom; by += kBlock) {
    for (int bx = 0; bx < image.width(); bx += kBlock) {
      const Rgb color = rng.uniform() < accent_rate ? accent : base;
      const double shade = rng.uniform(0.85, 1.15);
      for (int y = by; y < std::min(bottom, by + kBlock); ++y) {
        for (int x = bx; x < std::min(image.width(), bx + kBlock); ++x) {
          const int n = static_cast<int>(rng.uniform_int(-6, 6));
          image.at(x, y) = {jitter(color.r, shade, n), jitter(color.g, shade, n),
                            jitter(color.b, shade, n)};
        }
      }
    }
  }
}

}  // namespace detail

// One synthetic pedestrian: a head band, a torso and legs of distinct
// seed-random colours made of shaded blocks, and an all-foreground mask.
inline SyntheticPerson synthesize_person(std::uint64_t seed, std::size_t index) {
  Rng rng(derive_seed(seed, static_cast<std::uint64_t>(index)));
  ImageRaster image(kSyntheticWidth, kSyntheticHeight);
  const int head_bottom = kSyntheticHeight * 15 / 100;
  const int torso_bottom = kSyntheticHeight * 55 / 100;

  const Rgb skin = {static_cast<std::uint8_t>(rng.uniform_int(170, 230)),
                    static_cast<std::uint8_t>(rng.uniform_int(130, 180)),
                    static_cast<std::uint8_t>(rng.uniform_int(100, 150))};
  const Rgb torso = detail::random_color(rng, 20, 235);
  Rgb legs = detail::random_color(rng, 20, 235);
  while (detail::color_gap(torso, legs) < 150) legs = detail::random_color(rng, 20, 235);
  const Rgb accent = detail::random_color(rng, 20, 235);

  detail::paint_band(image, rng, 0, head_bottom, skin, skin, 0.0);
  detail::paint_band(image, rng, head_bottom, torso_bottom, torso, accent, 0.2);
  detail::paint_band(image, rng, torso_bottom, kSyntheticHeight, legs, accent, 0.1);
  return {std::move(image), BlobMask(kSyntheticWidth, kSyntheticHeight, true)};
}

inline std::string synthetic_person_id(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "p%04zu", index);
  return buf;
}

// Writes, per person, a gallery image (camera "a"), a probe image (camera
// "b") equal to the gallery image scaled by `probe_coefficient`, a shared
// mask, and manifest.jsonl. Returns the manifest.
inline DatasetManifest generate_synthetic_dataset(std::size_t num_persons,
                                                  std::uint64_t seed,
                                                  double probe_coefficient,
                                                  const std::filesystem::path& dir) {
  if (num_persons < 2) throw_invalid("synthetic dataset needs at least 2 persons");
  if (!(probe_coefficient > 0.0)) throw_invalid("probe coefficient must be positive");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw_io("cannot create directory " + dir.string() + ": " + ec.message());

  DatasetManifest manifest;
  for (std::size_t i = 0; i < num_persons; ++i) {
    const SyntheticPerson person = synthesize_person(seed, i);
    const std::string id = synthetic_person_id(i);
    const auto gallery = dir / (id + "_a.png");
    const auto probe = dir / (id + "_b.png");
    const auto mask = dir / (id + "_mask.png");
    save_png(person.image, gallery);
    save_png(apply_brightness_contrast(person.image, person.mask, probe_coefficient),
             probe);
    save_mask_png(person.mask, mask);
    manifest.entries.push_back({id, "a", gallery, mask});
    manifest.entries.push_back({id, "b", probe, mask});
  }
  save_manifest(manifest, dir / "manifest.jsonl");
  return manifest;
}

// ---------------------------------------------------------------------------
// Reports

struct NamedCurve {
  std::string name;
  CmcCurve curve;
};

inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// "rank,<name>,..." with one row per rank; a leading "# config:" comment
// carries the configuration echo when given.
inline std::string cmc_to_csv(std::span<const NamedCurve> curves,
                              const nlohmann::json& config = {}) {
  std::ostringstream out;
  if (!config.is_null()) out << "# config: " << config.dump() << '\n';
  out << "rank";
  std::size_t length = 0;
  for (const auto& c : curves) {
    out << ',' << c.name;
    length = std::max(length, c.curve.values.size());
  }
  out << '\n';
  for (std::size_t n = 0; n < length; ++n) {
    out << n + 1;
    for (const auto& c : curves) {
      out << ',';
      if (n < c.curve.values.size()) out << format_number(c.curve.values[n]);
    }
    out << '\n';
  }
  return out.str();
}

// Standalone SVG line plot of recognition rate (%) against rank.
inline std::string cmc_to_svg(std::span<const NamedCurve> curves,
                              const nlohmann::json& config = {}) {
  constexpr double kW = 640, kH = 480, kLeft = 60, kRight = 20, kTop = 30,
                   kBottom = 50;
  constexpr const char* kColors[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd"};
  std::size_t length = 1;
  for (const auto& c : curves) length = std::max(length, c.curve.values.size());
  const double plot_w = kW - kLeft - kRight;
  const double plot_h = kH - kTop - kBottom;
  auto px = [&](double rank) {
    return kLeft + (length == 1 ? 0.0 : (rank - 1) / (length - 1.0) * plot_w);
  };
  auto py = [&](double value) { return kTop + (1.0 - value) * plot_h; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW
      << "\" height=\"" << kH << "\" viewBox=\"0 0 " << kW << ' ' << kH << "\">\n";
  if (!config.is_null()) {
    std::string text = config.dump();
    std::string escaped;
    for (char ch : text) {
      if (ch == '<') escaped += "&lt;";
      else if (ch == '>') escaped += "&gt;";
      else if (ch == '&') escaped += "&amp;";
      else escaped += ch;
    }
    svg << "<desc>" << escaped << "</desc>\n";
  }
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (int i = 0; i <= 10; ++i) {
    const double v = i / 10.0;
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << format_number(py(v))
        << "\" x2=\"" << kW - kRight << "\" y2=\"" << format_number(py(v))
        << "\" stroke=\"#e0e0e0\"/>\n";
    svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << format_number(py(v) + 4)
        << "\" text-anchor=\"end\">" << i * 10 << "</text>\n";
  }
  const std::size_t step = std::max<std::size_t>(1, length / 10);
  for (std::size_t r = 1; r <= length; r += step) {
    svg << "<text x=\"" << format_number(px(static_cast<double>(r))) << "\" y=\""
        << kH - kBottom + 18 << "\" text-anchor=\"middle\">" << r << "</text>\n";
  }
  svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w
      << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kH - 12
      << "\" text-anchor=\"middle\">Rank</text>\n";
  svg << "<text x=\"16\" y=\"" << kTop + plot_h / 2
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << kTop + plot_h / 2
      << ")\">Recognition rate (%)</text>\n";

  for (std::size_t c = 0; c < curves.size(); ++c) {
    const char* color = kColors[c % std::size(kColors)];
    svg << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"2\" points=\"";
    const auto& values = curves[c].curve.values;
    for (std::size_t n = 0; n < values.size(); ++n) {
      if (n) svg << ' ';
      svg << format_number(px(static_cast<double>(n + 1))) << ','
          << format_number(py(values[n]));
    }
    svg << "\"/>\n";
    const double ly = kTop + plot_h - 20.0 * (curves.size() - c);
    svg << "<line x1=\"" << kW - kRight - 190 << "\" y1=\"" << ly << "\" x2=\""
        << kW - kRight - 165 << "\" y2=\"" << ly << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << kW - kRight - 160 << "\" y=\"" << ly + 4 << "\">"
        << curves[c].name << "</text>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

inline nlohmann::json timing_to_json(const TimingReport& t) {
  return {{"template_creation_ms_per_frame", t.template_ms},
          {"probe_creation_ms_per_frame", t.probe_ms},
          {"matching_ms_per_pair", t.match_ms},
          {"templates", t.templates},
          {"probes", t.probes},
          {"pairs", t.pairs},
          {"cpu_model", t.cpu_model},
          {"hardware_threads", t.hardware_threads},
          {"jobs", t.jobs}};
}

}  // namespace mcm
