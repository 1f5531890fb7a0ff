#pragma once

// Resolved run configuration shared by the command-line tools. Every output
// artifact embeds `to_json(RunConfig)` so a run can be repeated exactly.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "mcm/descriptor.hpp"
#include "mcm/error.hpp"
#include "mcm/imaging.hpp"
#include "mcm/matching.hpp"
#include "mcm/partition.hpp"

namespace mcm {

struct RunConfig {
  SamplingConfig sampling;
  MatchConfig match;
  bool simulation = true;
  SimulationConfig simulation_params;
  PartitionMode partition = PartitionMode::kSearch;
};

inline nlohmann::json to_json(const SamplingConfig& s) {
  return {{"patches", s.patches},
          {"area_min", s.area_min},
          {"area_max", s.area_max},
          {"aspect_min", s.aspect_min},
          {"aspect_max", s.aspect_max},
          {"min_mask_coverage", s.min_mask_coverage},
          {"max_attempts", s.max_attempts},
          {"seed", s.seed}};
}

inline nlohmann::json to_json(const MatchConfig& m) {
  return {{"beta", m.beta}, {"k", m.k}, {"part_weights", m.part_weights}};
}

inline nlohmann::json to_json(const RunConfig& c) {
  const auto k = c.simulation_params.coefficients.values();
  return {{"sampling", to_json(c.sampling)},
          {"match", to_json(c.match)},
          {"simulation",
           {{"enabled", c.simulation},
            {"coefficients", std::vector<double>(k.begin(), k.end())},
            {"threshold", c.simulation_params.threshold}}},
          {"partition", std::string(to_string(c.partition))}};
}

}  // namespace mcm
