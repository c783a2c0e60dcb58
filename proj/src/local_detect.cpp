#include "stylescope/detect/local.hpp"

#include "stylescope/numerics/parallel.hpp"
#include "stylescope/numerics/stats.hpp"
#include "stylescope/testbed/bank.hpp"

namespace stylescope::detect {

namespace {

constexpr int kLanes = 8;

Tensor<double> pool_saliency(const Tensor<double>& saliency, int r) {
  if (saliency.dim(0) == r) return saliency;
  return numerics::average_pool_to(saliency, r);
}

template <class T>
Tensor<double> collapse_color(const Tensor<T>& tangent_image, SaliencyMode mode, int lane) {
  const int h = tangent_image.dim(1), w = tangent_image.dim(2);
  Tensor<double> out({h, w});
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int c = 0; c < 3; ++c) {
        double t;
        if constexpr (std::is_same_v<T, numerics::Dual>) {
          t = tangent_image(c, y, x).d;
          (void)lane;
        } else {
          t = tangent_image(c, y, x).d[lane];
        }
        acc += mode == SaliencyMode::L2 ? t * t : t;
      }
      out(y, x) = mode == SaliencyMode::L2 ? std::sqrt(acc) : std::abs(acc / 3.0);
    }
  return out;
}

}  // namespace

GradientMap gradient_map(const Generator& gen, const Eigen::VectorXd& styles,
                         const generator::NoiseInputs& noise, ChannelId channel, int r,
                         SaliencyMode mode) {
  const auto& layout = generator::layout_of(gen);
  const int flat = layout.flat_index(channel);
  numerics::VecX<numerics::Dual> s(styles.size());
  for (Eigen::Index i = 0; i < styles.size(); ++i) s[i] = numerics::Dual{styles[i], 0.0};
  s[flat].d = 1.0;
  const auto image = generator::synthesize(gen, s, noise);
  GradientMap map{channel, pool_saliency(collapse_color(image, mode, 0), r)};
  return map;
}

std::vector<GradientMap> gradient_maps_for_sample(const Generator& gen,
                                                  const Eigen::VectorXd& styles,
                                                  const generator::NoiseInputs& noise,
                                                  const std::vector<int>& flat_channels, int r,
                                                  SaliencyMode mode) {
  const auto& layout = generator::layout_of(gen);
  std::vector<GradientMap> maps;
  maps.reserve(flat_channels.size());
  using Pack = numerics::DualPack<kLanes>;
  for (std::size_t base = 0; base < flat_channels.size(); base += kLanes) {
    const int lanes = static_cast<int>(std::min<std::size_t>(kLanes, flat_channels.size() - base));
    numerics::VecX<Pack> s(styles.size());
    for (Eigen::Index i = 0; i < styles.size(); ++i) s[i] = Pack(styles[i]);
    for (int l = 0; l < lanes; ++l) s[flat_channels[base + l]].d[l] = 1.0;
    const auto image = generator::synthesize(gen, s, noise);
    for (int l = 0; l < lanes; ++l)
      maps.push_back(GradientMap{layout.channel_at(flat_channels[base + l]),
                                 pool_saliency(collapse_color(image, mode, l), r)});
  }
  return maps;
}

std::optional<double> overlap_coefficient(const GradientMap& map,
                                          const testbed::SemanticMask& mask, int category,
                                          int d) {
  if (map.grid.dim(0) != mask.r)
    throw DimensionError("overlap_coefficient: mask and gradient grids disagree");
  std::int64_t size = 0;
  for (std::int32_t c : mask.cells)
    if (c == category) ++size;
  if (size == 0) return std::nullopt;  // category absent in this image
  const auto thresh = numerics::quantile_threshold(map.grid.values(), size);
  std::int64_t inter = 0;
  for (std::int32_t idx : thresh.indices)
    if (mask.cells[static_cast<std::size_t>(idx)] == category) ++inter;
  return static_cast<double>(inter) / std::pow(static_cast<double>(size), d);
}

std::optional<int> best_category(const GradientMap& map, const testbed::SemanticMask& mask,
                                 int d) {
  double max_saliency = 0.0;
  for (std::int64_t i = 0; i < map.grid.size(); ++i)
    max_saliency = std::max(max_saliency, map.grid[i]);
  if (max_saliency <= 0.0) return std::nullopt;

  std::optional<int> best;
  double best_oc = -1.0;
  for (int c = 0; c < mask.categories; ++c) {
    const auto oc = overlap_coefficient(map, mask, c, d);
    if (!oc) continue;
    if (*oc > best_oc) {  // ties keep the earlier (lower) category id
      best_oc = *oc;
      best = c;
    }
  }
  return best;
}

DetectionResult detect_local_channels(const Generator& gen, const DetectParams& params) {
  if (params.n_samples < 2) throw ArgumentError("detect: need at least two samples");
  const auto& layout = generator::layout_of(gen);
  const auto& mapper = generator::mapper_of(gen);
  const testbed::SemanticMask mask =
      testbed::segment(params.tiles_side, generator::resolution_of(gen), params.r);

  std::vector<int> flats;
  for (int f = 0; f < layout.total_channels(); ++f)
    if (params.include_trgb || !layout.is_trgb(f)) flats.push_back(f);
  const auto n_channels = flats.size();

  // Per-sample votes, merged in sample order afterwards.
  struct SampleVotes {
    std::vector<std::int16_t> category;  // -1 = no vote
    std::vector<double> oc;
  };
  std::vector<SampleVotes> all(static_cast<std::size_t>(params.n_samples));

  numerics::parallel_for(params.n_samples, params.threads, [&](std::int64_t i) {
    numerics::Rng rng(params.seed, static_cast<std::uint64_t>(i));
    const Eigen::VectorXd z = mapper.sample_z(rng);
    const Eigen::VectorXd styles =
        generator::styles_from_w(gen, Eigen::VectorXd(mapper.map_z_to_w<double>(z)));
    const auto noise = generator::make_noise(
        gen, testbed::entry_noise_seed(params.seed, static_cast<int>(i)));

    SampleVotes votes;
    votes.category.assign(n_channels, -1);
    votes.oc.assign(n_channels, 0.0);
    const auto maps =
        gradient_maps_for_sample(gen, styles, noise, flats, params.r, params.saliency);
    for (std::size_t c = 0; c < n_channels; ++c) {
      const auto best = best_category(maps[c], mask, params.d);
      if (!best) continue;
      votes.category[c] = static_cast<std::int16_t>(*best);
      votes.oc[c] = *overlap_coefficient(maps[c], mask, *best, params.d);
    }
    all[static_cast<std::size_t>(i)] = std::move(votes);
  });

  DetectionResult result;
  for (std::size_t c = 0; c < n_channels; ++c) {
    ChannelVoteStats stats;
    stats.channel = layout.channel_at(flats[c]);
    stats.votes.assign(static_cast<std::size_t>(mask.categories), 0);
    stats.oc_sum.assign(static_cast<std::size_t>(mask.categories), 0.0);
    stats.samples = params.n_samples;
    for (const auto& votes : all) {
      const int cat = votes.category[c];
      if (cat < 0) continue;
      ++stats.votes[static_cast<std::size_t>(cat)];
      stats.oc_sum[static_cast<std::size_t>(cat)] += votes.oc[c];
    }
    int top = 0;
    for (int k = 1; k < mask.categories; ++k)
      if (stats.votes[static_cast<std::size_t>(k)] > stats.votes[static_cast<std::size_t>(top)])
        top = k;
    std::int64_t runner_votes = 0;
    for (int k = 0; k < mask.categories; ++k)
      if (k != top) runner_votes = std::max(runner_votes, stats.votes[static_cast<std::size_t>(k)]);

    const double vote = static_cast<double>(stats.votes[static_cast<std::size_t>(top)]) /
                        params.n_samples;
    const double runner_up = static_cast<double>(runner_votes) / params.n_samples;
    if (vote > params.majority && vote >= params.runner_up_factor * runner_up) {
      stats.accepted = true;
      stats.report.channel = stats.channel;
      stats.report.region = top;
      stats.report.vote = vote;
      stats.report.runner_up = runner_up;
      stats.report.mean_oc = stats.oc_sum[static_cast<std::size_t>(top)] /
                             static_cast<double>(stats.votes[static_cast<std::size_t>(top)]);
      result.accepted.push_back(stats.report);
    }
    result.channels.push_back(std::move(stats));
  }
  return result;
}

}  // namespace stylescope::detect
