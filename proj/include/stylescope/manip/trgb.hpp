#pragma once

#include "stylescope/manip/direction.hpp"
#include "stylescope/numerics/rng.hpp"

namespace stylescope::manip {

enum class TrgbGroup { Early, Mid, Late, All };

const char* trgb_group_name(TrgbGroup g);
TrgbGroup trgb_group_from(const std::string& name);

// Resolution index -> coarse/middle/fine thirds, scaled to the layout depth.
TrgbGroup resolution_group(int resolution_index, int resolution_count);

// s_new = s + n * sigma(s) on the tRGB channels of the selected resolution
// group, n ~ N(0, sigma_n^2) per channel.
Eigen::VectorXd perturb_trgb(const Eigen::VectorXd& styles, const generator::StyleLayout& layout,
                             const Eigen::VectorXd& style_std, TrgbGroup group, double sigma_n,
                             numerics::Rng& rng);

struct TrgbRow {
  int sample = 0;
  TrgbGroup group = TrgbGroup::All;
  double rms_change = 0.0;         // per-pixel RMS of the image delta
  double mean_color_shift = 0.0;   // norm of the mean per-channel shift
};

struct TrgbParams {
  double sigma_n = 15.0;
  int n_samples = 100;
  std::uint64_t seed = 1;
  int threads = 1;
};

// Perturbation sweep over fresh samples, one row per (sample, group).
std::vector<TrgbRow> trgb_experiment(const Generator& gen, const Eigen::VectorXd& style_std,
                                     const TrgbParams& params);

}  // namespace stylescope::manip
