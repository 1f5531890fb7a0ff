// Builds a small synthetic gallery in memory, darkens the probes, and ranks
// each probe against the gallery with and without illumination simulation.

#include <cstdio>
#include <vector>

#include "mcm/mcm.hpp"

int main() {
  constexpr std::size_t kPersons = 10;
  constexpr std::uint64_t kSeed = 3;

  mcm::ExtractionConfig probe_config;
  mcm::ExtractionConfig template_config;
  template_config.simulation = mcm::SimulationConfig{};

  std::vector<mcm::PersonDescriptor> probes, plain, simulated;
  for (std::size_t i = 0; i < kPersons; ++i) {
    const auto person = mcm::synthesize_person(kSeed, i);
    const auto id = mcm::synthetic_person_id(i);
    const auto dark = mcm::apply_brightness_contrast(person.image, person.mask, 0.7);

    probe_config.sampling.seed = 1000 + i;
    template_config.sampling.seed = i;
    probes.push_back(mcm::extract_descriptor(dark, person.mask, probe_config, id));
    simulated.push_back(
        mcm::extract_descriptor(person.image, person.mask, template_config, id));
    mcm::ExtractionConfig nosim = template_config;
    nosim.simulation.reset();
    plain.push_back(mcm::extract_descriptor(person.image, person.mask, nosim, id));
  }

  const mcm::MatchConfig match;
  for (const auto* gallery : {&plain, &simulated}) {
    std::size_t hits = 0;
    for (const auto& probe : probes) {
      const auto ranking = mcm::rank_gallery(probe, *gallery, match);
      if (ranking.matches.front().template_id == probe.person_id) ++hits;
    }
    std::printf("%-18s rank-1 %zu/%zu\n",
                gallery == &plain ? "without simulation" : "with simulation",
                hits, kPersons);
  }
  return 0;
}
