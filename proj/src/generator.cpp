#include "stylescope/generator/generator.hpp"

namespace stylescope::generator {

GeneratorConfig GeneratorConfig::desk_synthesis(std::uint64_t seed) {
  GeneratorConfig c;
  c.kind = "synthesis";
  c.seed = seed;
  return c;
}

GeneratorConfig GeneratorConfig::desk_planted(std::uint64_t seed, double epsilon) {
  GeneratorConfig c;
  c.kind = "planted";
  c.seed = seed;
  c.epsilon = epsilon;
  return c;
}

GeneratorConfig GeneratorConfig::small_synthesis(std::uint64_t seed) {
  GeneratorConfig c;
  c.kind = "synthesis";
  c.seed = seed;
  c.resolutions = {4, 8, 16};
  c.widths = {8, 8, 8};
  c.latent_dim = 8;
  return c;
}

Generator build_generator(const GeneratorConfig& config) {
  StyleLayout layout = StyleLayout::build(config.resolutions, config.widths);
  if (config.kind == "synthesis")
    return SynthesisGenerator(std::move(layout), config.latent_dim, config.mapping_layers,
                              config.leaky_slope, config.seed);
  if (config.kind == "planted")
    return PlantedGenerator(std::move(layout), config.latent_dim, config.mapping_layers,
                            config.leaky_slope, config.tiles_side, config.epsilon, config.plan,
                            config.nuisance_fields, config.seed);
  throw ConfigError("unknown generator kind: " + config.kind);
}

}  // namespace stylescope::generator
