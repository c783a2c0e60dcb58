#pragma once

#include <optional>

#include "stylescope/generator/generator.hpp"
#include "stylescope/testbed/segment.hpp"

namespace stylescope::detect {

using generator::ChannelId;
using generator::Generator;
using numerics::Tensor;

enum class SaliencyMode { L2, AbsMean };

// r x r nonnegative saliency of the image with respect to one style channel.
struct GradientMap {
  ChannelId channel;
  Tensor<double> grid;
};

// Forward-mode gradient map: directional derivative along the channel's unit
// basis vector, collapsed over color (L2 by default) and average-pooled to r.
GradientMap gradient_map(const Generator& gen, const Eigen::VectorXd& styles,
                         const generator::NoiseInputs& noise, ChannelId channel, int r,
                         SaliencyMode mode = SaliencyMode::L2);

// All requested channels of one sample in batched tangent sweeps; equal to
// stacking gradient_map calls.
std::vector<GradientMap> gradient_maps_for_sample(const Generator& gen,
                                                  const Eigen::VectorXd& styles,
                                                  const generator::NoiseInputs& noise,
                                                  const std::vector<int>& flat_channels, int r,
                                                  SaliencyMode mode = SaliencyMode::L2);

// Size-matched overlap: the top-|M_c| saliency cells intersected with the
// category, divided by |M_c|^d. Returns nothing for absent categories.
std::optional<double> overlap_coefficient(const GradientMap& map,
                                          const testbed::SemanticMask& mask, int category,
                                          int d = 2);

// argmax_c OC, ties to the lower category id; nullopt when the map carries
// no saliency at all (no vote).
std::optional<int> best_category(const GradientMap& map, const testbed::SemanticMask& mask,
                                 int d = 2);

struct LocalChannelReport {
  ChannelId channel;
  int region = 0;
  double vote = 0.0;       // fraction of samples voting the region
  double runner_up = 0.0;  // fraction voting the second most common region
  double mean_oc = 0.0;    // mean OC of the winning region over its votes
};

struct DetectParams {
  int n_samples = 1000;
  int r = 32;
  int d = 2;
  std::uint64_t seed = 1;
  int tiles_side = 2;
  bool include_trgb = false;  // tRGB channels act globally; skipped by default
  SaliencyMode saliency = SaliencyMode::L2;
  double majority = 0.5;         // strict majority of all samples
  double runner_up_factor = 2.0; // winner must be this many times the runner-up
  int threads = 1;
};

struct ChannelVoteStats {
  ChannelId channel;
  std::vector<std::int64_t> votes;  // per category
  std::vector<double> oc_sum;       // per category, summed over its votes
  int samples = 0;
  bool accepted = false;
  LocalChannelReport report;  // valid when accepted
};

struct DetectionResult {
  std::vector<ChannelVoteStats> channels;   // every evaluated channel
  std::vector<LocalChannelReport> accepted;
};

// Consistency voting over freshly sampled style codes: per channel, the
// histogram of best categories must show a strict majority whose runner-up
// is at most half as common.
DetectionResult detect_local_channels(const Generator& gen, const DetectParams& params);

}  // namespace stylescope::detect
