#pragma once

#include <memory>
#include <string>
#include <variant>

#include "stylescope/generator/planted.hpp"
#include "stylescope/generator/synthesis.hpp"

namespace stylescope::generator {

using Generator = std::variant<SynthesisGenerator, PlantedGenerator>;

struct GeneratorConfig {
  std::string kind = "synthesis";  // "synthesis" | "planted"
  std::uint64_t seed = 1;
  std::vector<int> resolutions = {4, 8, 16, 32};
  std::vector<int> widths = {16, 16, 16, 8};
  int latent_dim = 16;
  int mapping_layers = 2;
  double leaky_slope = 0.2;
  // planted only
  int tiles_side = 2;
  double epsilon = 0.1;
  std::vector<PlantedPlanEntry> plan;  // empty -> default plan
  int nuisance_fields = 8;

  static GeneratorConfig desk_synthesis(std::uint64_t seed = 1);
  static GeneratorConfig desk_planted(std::uint64_t seed = 1, double epsilon = 0.1);
  // Small configuration used where per-dimension forward sweeps dominate.
  static GeneratorConfig small_synthesis(std::uint64_t seed = 1);
};

Generator build_generator(const GeneratorConfig& config);

inline const StyleLayout& layout_of(const Generator& g) {
  return std::visit([](const auto& gg) -> const StyleLayout& { return gg.layout(); }, g);
}
inline const StyleMapper& mapper_of(const Generator& g) {
  return std::visit([](const auto& gg) -> const StyleMapper& { return gg.mapper(); }, g);
}
inline int resolution_of(const Generator& g) {
  return std::visit([](const auto& gg) { return gg.resolution(); }, g);
}
inline NoiseInputs make_noise(const Generator& g, std::uint64_t noise_seed) {
  return std::visit([&](const auto& gg) { return gg.make_noise(noise_seed); }, g);
}
inline const PlantedGroundTruth* planted_truth(const Generator& g) {
  const auto* p = std::get_if<PlantedGenerator>(&g);
  return p ? &p->truth() : nullptr;
}

template <class T>
Tensor<T> synthesize(const Generator& g, const VecX<T>& styles, const NoiseInputs& noise) {
  return std::visit([&](const auto& gg) { return gg.synthesize(styles, noise); }, g);
}

// z -> w -> broadcast -> styles, the standard sampling path.
template <class T>
VecX<T> styles_from_w(const Generator& g, const VecX<T>& w) {
  return mapper_of(g).affine().styles_from_w(layout_of(g), w);
}
template <class T>
VecX<T> styles_from_slots(const Generator& g, const std::vector<VecX<T>>& slots) {
  return mapper_of(g).affine().styles_from_slots(layout_of(g), slots);
}

}  // namespace stylescope::generator
