#include "stylescope/detect/relevance.hpp"

#include <algorithm>

#include "stylescope/numerics/stats.hpp"

namespace stylescope::detect {

using testbed::ImageBank;

std::vector<int> most_positive_exemplars(const ImageBank& bank, int attr, int count) {
  if (count < 1 || count > bank.n())
    throw ArgumentError("most_positive_exemplars: count out of range");
  std::vector<double> logits(static_cast<std::size_t>(bank.n()));
  for (int i = 0; i < bank.n(); ++i)
    logits[static_cast<std::size_t>(i)] = bank.entries[static_cast<std::size_t>(i)].logits[attr];
  const auto order = numerics::argsort_ascending(logits);
  return {order.begin(), order.begin() + count};
}

Eigen::MatrixXd exemplar_deltas(const ImageBank& bank, const std::vector<int>& indices) {
  if (indices.empty()) throw ArgumentError("exemplar_deltas: no exemplars");
  const int dim = bank.style_dim();
  Eigen::MatrixXd deltas(static_cast<Eigen::Index>(indices.size()), dim);
  for (std::size_t r = 0; r < indices.size(); ++r) {
    const auto& styles = bank.entries[static_cast<std::size_t>(indices[r])].styles;
    if (styles.size() != dim) throw DimensionError("exemplar_deltas: style layout mismatch");
    for (int c = 0; c < dim; ++c) {
      const double sd = bank.stats.style_std[c];
      deltas(static_cast<Eigen::Index>(r), c) =
          sd > 0.0 ? (styles[c] - bank.stats.style_mean[c]) / sd : 0.0;
    }
  }
  return deltas;
}

Eigen::VectorXd relevance(const Eigen::MatrixXd& deltas) {
  if (deltas.rows() < 2)
    throw ArgumentError("relevance: the exemplar deviation is undefined below two exemplars");
  constexpr double kSigmaFloor = 1e-8;
  Eigen::VectorXd theta(deltas.cols());
  for (Eigen::Index c = 0; c < deltas.cols(); ++c) {
    const double mean = deltas.col(c).mean();
    if (mean == 0.0) {
      theta[c] = 0.0;
      continue;
    }
    const double sd = std::sqrt((deltas.col(c).array() - mean).square().mean());
    theta[c] = std::abs(mean) / std::max(sd, kSigmaFloor);
  }
  return theta;
}

RelevanceRanking rank_channels(const ImageBank& bank, const generator::StyleLayout& layout,
                               const Eigen::VectorXd& theta,
                               const std::optional<std::vector<int>>& restrict_flats,
                               bool exclude_trgb) {
  std::vector<int> allowed;
  if (restrict_flats) {
    for (int f : *restrict_flats) {
      if (f < 0 || f >= layout.total_channels())
        throw ArgumentError("rank_channels: restriction outside the layout");
      allowed.push_back(f);
    }
  } else {
    for (int f = 0; f < layout.total_channels(); ++f) {
      if (exclude_trgb && layout.is_trgb(f)) continue;
      allowed.push_back(f);
    }
  }
  // Constant channels carry no population signal and are never ranked.
  std::vector<char> constant(static_cast<std::size_t>(layout.total_channels()), 0);
  for (int f : bank.constant_channels) constant[static_cast<std::size_t>(f)] = 1;

  RelevanceRanking ranking;
  ranking.restricted = restrict_flats.has_value();
  for (int f : allowed) {
    if (constant[static_cast<std::size_t>(f)]) continue;
    ranking.entries.emplace_back(layout.channel_at(f), theta[f]);
  }
  std::stable_sort(ranking.entries.begin(), ranking.entries.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return ranking;
}

FewShotResult fewshot_experiment(const ImageBank& bank, const generator::StyleLayout& layout,
                                 int attr, const std::vector<int>& verified_flats,
                                 const FewShotParams& params) {
  const int pool_size =
      static_cast<int>(std::floor(bank.n() * params.positive_quantile + 1e-12));
  if (pool_size < params.n_examples)
    throw ArgumentError("fewshot: not enough positive examples in the bank");
  const auto pool = most_positive_exemplars(bank, attr, pool_size);

  FewShotResult result;
  result.trials = params.trials;
  for (int trial = 0; trial < params.trials; ++trial) {
    numerics::Rng rng(params.seed, 0xfe57ULL + static_cast<std::uint64_t>(trial));
    // Partial Fisher-Yates draw of n_examples distinct pool members.
    std::vector<int> draw(pool.begin(), pool.end());
    std::vector<int> chosen;
    for (int k = 0; k < params.n_examples; ++k) {
      const auto j = k + static_cast<int>(rng.below(static_cast<std::uint64_t>(draw.size() - k)));
      std::swap(draw[static_cast<std::size_t>(k)], draw[static_cast<std::size_t>(j)]);
      chosen.push_back(draw[static_cast<std::size_t>(k)]);
    }
    const Eigen::VectorXd theta = relevance(exemplar_deltas(bank, chosen));
    const auto ranking = rank_channels(bank, layout, theta, params.restrict_flats);
    const int k_top = std::min<int>(params.top_k, static_cast<int>(ranking.entries.size()));
    bool hit = false;
    for (int k = 0; k < k_top && !hit; ++k) {
      const int flat = layout.flat_index(ranking.entries[static_cast<std::size_t>(k)].first);
      hit = std::find(verified_flats.begin(), verified_flats.end(), flat) != verified_flats.end();
    }
    if (hit) ++result.successes;
  }
  result.accuracy = static_cast<double>(result.successes) / params.trials;
  return result;
}

}  // namespace stylescope::detect
