#pragma once

#include <optional>
#include <utility>

#include "stylescope/testbed/bank.hpp"

namespace stylescope::detect {

using generator::ChannelId;

// Indices of the `count` entries whose logit for `attr` is most negative
// (strongest attribute presence), extremity order.
std::vector<int> most_positive_exemplars(const testbed::ImageBank& bank, int attr, int count);

// delta^e rows: per-exemplar styles normalized by the population mean and
// std. Channels with zero population std yield zero columns.
Eigen::MatrixXd exemplar_deltas(const testbed::ImageBank& bank, const std::vector<int>& indices);

// theta_u = |mean delta| / max(std delta, 1e-8) per channel, zero when the
// exemplar mean deviation is exactly zero. Needs at least two exemplars.
Eigen::VectorXd relevance(const Eigen::MatrixXd& deltas);

struct RelevanceRanking {
  int attribute = -1;
  int n_exemplars = 0;
  bool restricted = false;
  std::vector<std::pair<ChannelId, double>> entries;  // theta descending
};

// Descending theta over the allowed channel set; ties by (layer, channel).
// tRGB channels and constant channels are excluded by default; an explicit
// restriction list wins over the default set.
RelevanceRanking rank_channels(const testbed::ImageBank& bank,
                               const generator::StyleLayout& layout,
                               const Eigen::VectorXd& theta,
                               const std::optional<std::vector<int>>& restrict_flats,
                               bool exclude_trgb = true);

struct FewShotParams {
  int n_examples = 20;
  int trials = 200;
  int top_k = 5;
  double positive_quantile = 0.02;  // exemplar pool = most negative tail
  std::uint64_t seed = 1;
  std::optional<std::vector<int>> restrict_flats;
};

struct FewShotResult {
  double accuracy = 0.0;
  int successes = 0;
  int trials = 0;
};

// Per trial: sample n_examples positives uniformly from the pool, rank, and
// succeed when the top k intersect the verified channel set.
FewShotResult fewshot_experiment(const testbed::ImageBank& bank,
                                 const generator::StyleLayout& layout, int attr,
                                 const std::vector<int>& verified_flats,
                                 const FewShotParams& params);

}  // namespace stylescope::detect
