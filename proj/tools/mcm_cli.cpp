// mcm: command-line front end for descriptor extraction, matching, gallery
// ranking, CMC evaluation and synthetic data generation.
//
// Exit status: 0 success, 1 usage error, 2 data error, 3 internal error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mcm/mcm.hpp"

namespace fs = std::filesystem;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kDataError = 2, kInternal = 3 };

// Flags shared by every subcommand (also accepted after the subcommand name
// and from the --config file).
struct CommonOptions {
  int patches = 80;
  double beta = 0.6;
  int k = 10;
  std::vector<double> coeffs = {1.4, 1.2, 1.0, 0.8, 0.6};
  double sat_threshold = mcm::kDefaultSaturationThreshold;
  std::string partition = "search";
  std::uint64_t seed = 0;
  double area_min = 0.125;
  double area_max = 0.25;
  double aspect_min = 0.5;
  double aspect_max = 2.0;
  double coverage = 0.5;
  std::vector<double> part_weights = {0.5, 0.5};
  unsigned jobs = 1;

  mcm::RunConfig resolve(bool simulation) const {
    mcm::RunConfig c;
    c.sampling.patches = patches;
    c.sampling.area_min = area_min;
    c.sampling.area_max = area_max;
    c.sampling.aspect_min = aspect_min;
    c.sampling.aspect_max = aspect_max;
    c.sampling.min_mask_coverage = coverage;
    c.sampling.seed = seed;
    c.sampling.validate();
    c.match.beta = beta;
    c.match.k = k;
    c.match.part_weights = part_weights;
    c.match.validate(mcm::kNumParts);
    c.simulation = simulation;
    c.simulation_params.coefficients = mcm::CoefficientVector(coeffs);
    c.simulation_params.threshold = sat_threshold;
    if (!(sat_threshold > 0.0) || sat_threshold > mcm::kChannelMax) {
      mcm::throw_invalid("--sat-threshold must lie in (0, 255]");
    }
    c.partition = mcm::parse_partition_mode(partition);
    return c;
  }
};

void add_common_options(CLI::App& app, CommonOptions& o) {
  const char* group = "Pipeline";
  app.add_option("--patches", o.patches, "Patches sampled per body part")
      ->group(group)->capture_default_str();
  app.add_option("--beta", o.beta, "Weight of the vertical position term")
      ->group(group)->capture_default_str();
  app.add_option("--k", o.k, "Rank used by the k-th Hausdorff distance")
      ->group(group)->capture_default_str();
  app.add_option("--coeffs", o.coeffs, "Illumination coefficients for templates")
      ->delimiter(',')->group(group)->capture_default_str();
  app.add_option("--sat-threshold", o.sat_threshold,
                 "Ceiling for the brightest variant's mean channel value")
      ->group(group)->capture_default_str();
  app.add_option("--partition", o.partition, "Body axis placement")
      ->check(CLI::IsMember({"fixed", "search"}))
      ->group(group)->capture_default_str();
  app.add_option("--seed", o.seed, "Random seed")->group(group)->capture_default_str();
  app.add_option("--area-min", o.area_min, "Minimum patch area fraction")
      ->group(group)->capture_default_str();
  app.add_option("--area-max", o.area_max, "Maximum patch area fraction")
      ->group(group)->capture_default_str();
  app.add_option("--aspect-min", o.aspect_min, "Minimum patch width/height")
      ->group(group)->capture_default_str();
  app.add_option("--aspect-max", o.aspect_max, "Maximum patch width/height")
      ->group(group)->capture_default_str();
  app.add_option("--coverage", o.coverage, "Minimum foreground fraction per patch")
      ->group(group)->capture_default_str();
  app.add_option("--part-weights", o.part_weights, "Torso,legs weights (sum 1)")
      ->delimiter(',')->group(group)->capture_default_str();
  app.add_option("-j,--jobs", o.jobs, "Worker threads")
      ->check(CLI::PositiveNumber)->group(group)->capture_default_str();
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

mcm::DescriptorFormat format_for(const std::string& requested,
                                 const fs::path& output) {
  if (requested == "json") return mcm::DescriptorFormat::kJson;
  if (requested == "bin") return mcm::DescriptorFormat::kBinary;
  return ends_with(output.string(), ".bin") ? mcm::DescriptorFormat::kBinary
                                            : mcm::DescriptorFormat::kJson;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) mcm::throw_io("cannot write " + path.string());
  out << text;
  if (!out) mcm::throw_io("write failed: " + path.string());
}

// ---------------------------------------------------------------------------
// extract

struct ExtractArgs {
  bool as_template = false;
  bool as_probe = false;
  std::string image;
  std::string mask;
  std::string output;
  std::string person_id;
  std::string manifest;
  std::string out_dir;
  std::string format = "auto";
};

int run_extract(const CommonOptions& common, const ExtractArgs& args) {
  const mcm::RunConfig config = common.resolve(args.as_template);
  nlohmann::json echo = mcm::to_json(config);
  echo["command"] = "extract";

  auto extract_one = [&](const fs::path& image, const fs::path& mask,
                         const std::string& person_id, std::uint64_t seed,
                         const fs::path& output) {
    const mcm::ImageRaster raster = mcm::load_image(image);
    const mcm::BlobMask blob = mcm::load_mask(mask);
    mcm::ExtractionConfig extraction;
    extraction.sampling = config.sampling;
    extraction.sampling.seed = seed;
    extraction.partition = config.partition;
    if (config.simulation) extraction.simulation = config.simulation_params;
    const mcm::PersonDescriptor d =
        mcm::extract_descriptor(raster, blob, extraction, person_id);
    mcm::save_descriptor(d, output, format_for(args.format, output), echo);
  };

  if (!args.manifest.empty()) {
    if (args.out_dir.empty()) mcm::throw_invalid("--manifest requires --out-dir");
    const auto manifest = mcm::load_manifest(args.manifest);
    fs::create_directories(args.out_dir);
    const std::string ext =
        args.format == "bin" ? ".desc.bin" : ".desc.json";
    mcm::parallel_for(manifest.entries.size(), common.jobs, [&](std::size_t i) {
      const auto& e = manifest.entries[i];
      extract_one(e.image, e.mask, e.person_id,
                  mcm::frame_seed(config.sampling.seed, e),
                  fs::path(args.out_dir) / (e.person_id + "_" + e.camera_id + ext));
    });
    std::cout << "extracted " << manifest.entries.size() << " descriptors into "
              << args.out_dir << '\n';
    return kOk;
  }

  if (args.image.empty() || args.mask.empty() || args.output.empty()) {
    mcm::throw_invalid("extract needs --image, --mask and -o (or --manifest)");
  }
  const std::string id = args.person_id.empty()
                             ? fs::path(args.image).stem().string()
                             : args.person_id;
  extract_one(args.image, args.mask, id, config.sampling.seed, args.output);
  return kOk;
}

// ---------------------------------------------------------------------------
// match

struct MatchArgs {
  std::vector<std::string> pair;
  std::string probe;
  std::vector<std::string> gallery;
};

int run_match(const CommonOptions& common, const MatchArgs& args) {
  const mcm::RunConfig config = common.resolve(false);
  if (!args.probe.empty()) {
    if (args.gallery.empty()) mcm::throw_invalid("--probe requires --gallery");
    const auto probe = mcm::load_descriptor(args.probe).descriptor;
    std::vector<mcm::PersonDescriptor> gallery;
    for (const auto& path : args.gallery) {
      gallery.push_back(mcm::load_descriptor(path).descriptor);
    }
    const auto ranking =
        mcm::rank_gallery(probe, gallery, config.match, common.jobs);
    std::cout << "rank,template_id,distance\n";
    for (std::size_t i = 0; i < ranking.matches.size(); ++i) {
      std::cout << i + 1 << ',' << ranking.matches[i].template_id << ','
                << mcm::format_number(ranking.matches[i].distance) << '\n';
    }
    return kOk;
  }
  if (args.pair.size() != 2) {
    mcm::throw_invalid("match needs two descriptor files, or --probe and --gallery");
  }
  const auto a = mcm::load_descriptor(args.pair[0]).descriptor;
  const auto b = mcm::load_descriptor(args.pair[1]).descriptor;
  std::cout << mcm::format_number(mcm::sequence_distance(a, b, config.match))
            << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------
// evaluate

struct EvaluateArgs {
  std::string manifest;
  std::size_t synthetic = 0;
  double probe_coeff = 1.0;
  std::size_t trials = 10;
  std::optional<std::size_t> subset;
  bool no_simulation = false;
  bool both = false;
  std::string out_dir = ".";
  std::string work_dir;
};

int run_evaluate(const CommonOptions& common, const EvaluateArgs& args,
                 bool subset_given) {
  if (args.manifest.empty() == (args.synthetic == 0)) {
    mcm::throw_invalid("evaluate needs exactly one of --manifest or --synthetic");
  }
  const mcm::RunConfig config = common.resolve(!args.no_simulation);
  fs::create_directories(args.out_dir);

  nlohmann::json echo = mcm::to_json(config);
  echo["command"] = "evaluate";
  mcm::DatasetManifest manifest;
  if (args.synthetic > 0) {
    const fs::path work =
        args.work_dir.empty() ? fs::path(args.out_dir) / "synthetic" : fs::path(args.work_dir);
    manifest = mcm::generate_synthetic_dataset(args.synthetic, common.seed,
                                               args.probe_coeff, work);
    echo["dataset"] = {{"synthetic_persons", args.synthetic},
                       {"probe_coefficient", args.probe_coeff}};
  } else {
    manifest = mcm::load_manifest(args.manifest);
    echo["dataset"] = {{"manifest", args.manifest}};
  }

  mcm::TrialSpec spec;
  spec.num_trials = args.trials;
  spec.seed = common.seed;
  const std::size_t persons = mcm::svss_views(manifest).size();
  spec.subset_size = subset_given ? *args.subset : std::min<std::size_t>(316, persons);
  echo["trials"] = {{"num_trials", spec.num_trials},
                    {"subset_size", spec.subset_size},
                    {"seed", spec.seed}};

  std::vector<bool> modes;
  if (args.both) modes = {true, false};
  else modes = {!args.no_simulation};
  if (args.both) echo["simulation"]["enabled"] = "both";

  std::vector<mcm::NamedCurve> curves;
  nlohmann::json timing = nlohmann::json::object();
  for (bool simulate : modes) {
    mcm::BenchmarkConfig bench;
    bench.sampling = config.sampling;
    bench.partition = config.partition;
    bench.simulation = simulate;
    bench.simulation_params = config.simulation_params;
    bench.match = config.match;
    bench.trials = spec;
    bench.jobs = common.jobs;
    const auto result = mcm::run_benchmark(manifest, bench);
    const std::string name = simulate ? "with_simulation" : "without_simulation";
    curves.push_back({name, result.cmc});
    timing[name] = mcm::timing_to_json(result.timing);

    const auto& v = result.cmc.values;
    std::cout << name << ':';
    for (std::size_t r : {1, 5, 10, 20, 50}) {
      if (r <= v.size()) {
        std::printf(" rank-%zu=%.4f", r, v[r - 1]);
        std::fflush(stdout);
      }
    }
    std::cout << '\n';
  }
  timing["config"] = echo;

  const fs::path out(args.out_dir);
  write_text(out / "cmc.csv", mcm::cmc_to_csv(curves, echo));
  write_text(out / "cmc.svg", mcm::cmc_to_svg(curves, echo));
  write_text(out / "timing.json", timing.dump(2) + "\n");
  std::cout << "wrote " << (out / "cmc.csv").string() << ", "
            << (out / "cmc.svg").string() << ", "
            << (out / "timing.json").string() << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------
// synth

struct SynthArgs {
  std::size_t persons = 50;
  double probe_coeff = 1.0;
  std::string out_dir;
};

int run_synth(const CommonOptions& common, const SynthArgs& args) {
  const auto manifest = mcm::generate_synthetic_dataset(
      args.persons, common.seed, args.probe_coeff, args.out_dir);
  std::cout << "wrote " << manifest.entries.size() << " images and "
            << (fs::path(args.out_dir) / "manifest.jsonl").string() << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiple component matching for person re-identification"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Key-value configuration file (flags override it)");

  CommonOptions common;
  add_common_options(app, common);

  ExtractArgs extract_args;
  auto* extract = app.add_subcommand("extract", "Compute a descriptor file");
  auto* tmpl = extract->add_flag("--template", extract_args.as_template,
                                 "Gallery template: apply illumination simulation");
  auto* probe = extract->add_flag("--probe", extract_args.as_probe,
                                  "Probe: no simulation (default)");
  tmpl->excludes(probe);
  extract->add_option("--image", extract_args.image, "PNG or PPM image");
  extract->add_option("--mask", extract_args.mask, "PNG foreground mask");
  extract->add_option("-o,--output", extract_args.output, "Descriptor file");
  extract->add_option("--person-id", extract_args.person_id,
                      "Identifier stored in the descriptor (default: image stem)");
  extract->add_option("--manifest", extract_args.manifest,
                      "Extract every entry of a JSON-lines manifest");
  extract->add_option("--out-dir", extract_args.out_dir, "Output directory for --manifest");
  extract->add_option("--format", extract_args.format, "json, bin or auto (by extension)")
      ->check(CLI::IsMember({"auto", "json", "bin"}))
      ->capture_default_str();

  MatchArgs match_args;
  auto* match = app.add_subcommand("match", "Distance between descriptors or gallery ranking");
  match->add_option("descriptors", match_args.pair, "Two descriptor files");
  match->add_option("--probe", match_args.probe, "Probe descriptor for gallery mode");
  match->add_option("--gallery", match_args.gallery, "Template descriptors");

  EvaluateArgs eval_args;
  auto* evaluate = app.add_subcommand("evaluate", "Run the CMC benchmark");
  evaluate->add_option("--manifest", eval_args.manifest, "JSON-lines dataset manifest");
  evaluate->add_option("--synthetic", eval_args.synthetic,
                       "Generate and evaluate a synthetic dataset of N persons");
  evaluate->add_option("--probe-coeff", eval_args.probe_coeff,
                       "Brightness coefficient applied to synthetic probes")
      ->capture_default_str();
  evaluate->add_option("--trials", eval_args.trials, "Number of random trials")
      ->capture_default_str();
  auto* subset_opt = evaluate->add_option(
      "--subset", eval_args.subset, "Persons per trial (default: min(316, persons))");
  auto* no_sim = evaluate->add_flag("--no-simulation", eval_args.no_simulation,
                                    "Build templates without illumination simulation");
  evaluate->add_flag("--both", eval_args.both,
                     "Evaluate with and without simulation in one run")
      ->excludes(no_sim);
  evaluate->add_option("--out-dir", eval_args.out_dir, "Directory for cmc.csv, cmc.svg, timing.json")
      ->capture_default_str();
  evaluate->add_option("--work-dir", eval_args.work_dir,
                       "Directory for synthetic images (default: <out-dir>/synthetic)");

  SynthArgs synth_args;
  auto* synth = app.add_subcommand("synth", "Write a synthetic illumination dataset");
  synth->add_option("--persons", synth_args.persons, "Number of persons")
      ->capture_default_str();
  synth->add_option("--probe-coeff", synth_args.probe_coeff,
                    "Brightness coefficient applied to probe images")
      ->capture_default_str();
  synth->add_option("--out-dir", synth_args.out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*extract) return run_extract(common, extract_args);
    if (*match) return run_match(common, match_args);
    if (*evaluate) return run_evaluate(common, eval_args, subset_opt->count() > 0);
    if (*synth) return run_synth(common, synth_args);
  } catch (const mcm::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == mcm::ErrorKind::kInvalidArgument ? kUsage : kDataError;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}
