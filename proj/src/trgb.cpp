#include "stylescope/manip/trgb.hpp"

#include "stylescope/numerics/parallel.hpp"
#include "stylescope/testbed/bank.hpp"

namespace stylescope::manip {

const char* trgb_group_name(TrgbGroup g) {
  switch (g) {
    case TrgbGroup::Early: return "early";
    case TrgbGroup::Mid: return "mid";
    case TrgbGroup::Late: return "late";
    default: return "all";
  }
}

TrgbGroup trgb_group_from(const std::string& name) {
  if (name == "early") return TrgbGroup::Early;
  if (name == "mid") return TrgbGroup::Mid;
  if (name == "late") return TrgbGroup::Late;
  if (name == "all") return TrgbGroup::All;
  throw ArgumentError("unknown tRGB group: " + name);
}

TrgbGroup resolution_group(int resolution_index, int resolution_count) {
  const int third = (3 * resolution_index) / resolution_count;
  return third == 0 ? TrgbGroup::Early : (third == 1 ? TrgbGroup::Mid : TrgbGroup::Late);
}

Eigen::VectorXd perturb_trgb(const Eigen::VectorXd& styles, const generator::StyleLayout& layout,
                             const Eigen::VectorXd& style_std, TrgbGroup group, double sigma_n,
                             numerics::Rng& rng) {
  Eigen::VectorXd out = styles;
  const auto& resolutions = layout.resolutions();
  for (const auto& layer : layout.layers()) {
    if (layer.kind != generator::LayerKind::TRgb) continue;
    const auto res_idx = static_cast<int>(
        std::find(resolutions.begin(), resolutions.end(), layer.resolution) -
        resolutions.begin());
    const TrgbGroup layer_group = resolution_group(res_idx, layout.resolution_count());
    const bool selected = group == TrgbGroup::All || layer_group == group;
    for (int c = 0; c < layer.channels; ++c) {
      // Draw for every channel so the consumed stream is group-independent.
      const double n = sigma_n * rng.normal();
      if (selected) {
        const int flat = layer.flat_offset + c;
        out[flat] += n * style_std[flat];
      }
    }
  }
  return out;
}

std::vector<TrgbRow> trgb_experiment(const Generator& gen, const Eigen::VectorXd& style_std,
                                     const TrgbParams& params) {
  const auto& layout = generator::layout_of(gen);
  const auto& mapper = generator::mapper_of(gen);
  const TrgbGroup groups[] = {TrgbGroup::Early, TrgbGroup::Mid, TrgbGroup::Late, TrgbGroup::All};
  std::vector<TrgbRow> rows(static_cast<std::size_t>(params.n_samples) * 4);

  numerics::parallel_for(params.n_samples, params.threads, [&](std::int64_t i) {
    numerics::Rng rng(params.seed, static_cast<std::uint64_t>(i));
    const Eigen::VectorXd styles =
        generator::styles_from_w(gen, Eigen::VectorXd(mapper.map_z_to_w<double>(
                                          mapper.sample_z(rng))));
    const auto noise =
        generator::make_noise(gen, testbed::entry_noise_seed(params.seed, static_cast<int>(i)));
    const auto base = generator::synthesize<double>(gen, styles, noise);
    for (int gi = 0; gi < 4; ++gi) {
      // One perturbation stream per (sample, group): the same Gaussian draw
      // is applied to each group's channels.
      numerics::Rng perturb_rng(params.seed, 0x747247ULL + static_cast<std::uint64_t>(i));
      const Eigen::VectorXd perturbed =
          perturb_trgb(styles, layout, style_std, groups[gi], params.sigma_n, perturb_rng);
      const auto image = generator::synthesize<double>(gen, perturbed, noise);
      double sq = 0.0;
      Eigen::Vector3d shift = Eigen::Vector3d::Zero();
      const int r = image.dim(1);
      for (int c = 0; c < 3; ++c)
        for (int y = 0; y < r; ++y)
          for (int x = 0; x < r; ++x) {
            const double d = image(c, y, x) - base(c, y, x);
            sq += d * d;
            shift[c] += d;
          }
      TrgbRow row;
      row.sample = static_cast<int>(i);
      row.group = groups[gi];
      row.rms_change = std::sqrt(sq / static_cast<double>(image.size()));
      row.mean_color_shift = (shift / static_cast<double>(r * r)).norm();
      rows[static_cast<std::size_t>(i) * 4 + static_cast<std::size_t>(gi)] = row;
    }
  });
  return rows;
}

}  // namespace stylescope::manip
