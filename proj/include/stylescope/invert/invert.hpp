#pragma once

#include <optional>

#include "stylescope/manip/direction.hpp"
#include "stylescope/space.hpp"

namespace stylescope::invert {

using generator::Generator;
using numerics::Tensor;

struct InvertParams {
  Space space = Space::S;
  int steps = 300;
  double step_size = 0.5;
  std::optional<Eigen::VectorXd> init;  // default: the space's population-mean latent
  std::uint64_t noise_seed = 0;
  bool use_fd = false;  // finite-difference gradients instead of forward mode
  double fd_h = 1e-4;
};

struct InversionResult {
  Space space = Space::S;
  Eigen::VectorXd latent;
  double final_error = 0.0;          // mean squared pixel error, recomputed
  std::vector<double> trace;         // accepted losses, nonincreasing
  int steps_taken = 0;
};

int latent_dim_for_space(const Generator& gen, Space space);

// The shared initializer: W anchors at the Monte-Carlo mean, Z at the origin,
// W+ and S at their lifts of the W anchor.
Eigen::VectorXd mean_latent(const Generator& gen, Space space);

// Decode a flat latent of the given space into styles.
template <class T>
numerics::VecX<T> decode_latent(const Generator& gen, Space space, const numerics::VecX<T>& x) {
  const auto& mapper = generator::mapper_of(gen);
  const auto& layout = generator::layout_of(gen);
  switch (space) {
    case Space::Z:
      return generator::styles_from_w(gen, numerics::VecX<T>(mapper.map_z_to_w(x)));
    case Space::W:
      return generator::styles_from_w(gen, x);
    case Space::WPlus: {
      const int d = mapper.latent_dim();
      if (x.size() != layout.slot_count() * d)
        throw DimensionError("decode_latent: W+ latent length mismatch");
      std::vector<numerics::VecX<T>> slots;
      for (int s = 0; s < layout.slot_count(); ++s) slots.push_back(x.segment(s * d, d));
      return generator::styles_from_slots(gen, slots);
    }
    case Space::S:
      if (x.size() != layout.total_channels())
        throw DimensionError("decode_latent: style latent length mismatch");
      return x;
  }
  throw ArgumentError("decode_latent: unknown space");
}

// Minimize mean squared pixel error by gradient descent with backtracking
// (halve the step on a loss increase, otherwise accept); gradients come from
// forward-mode sweeps over the latent dimensions, or central differences
// under the use_fd flag.
InversionResult invert(const Generator& gen, const Tensor<double>& target,
                       const InvertParams& params);

// The same descent restricted to a few iterations from a provided style
// vector; the refinement stage for externally produced latents.
InversionResult warm_start_invert(const Generator& gen, const Tensor<double>& target,
                                  const Eigen::VectorXd& init_styles, int steps = 50,
                                  std::uint64_t noise_seed = 0, double step_size = 0.5);

// Mahalanobis realism score on per-tile mean/deviation luminance features,
// fit on a bank's generated distribution. Lower is more typical.
class RealismModel {
 public:
  RealismModel() = default;
  static RealismModel fit(const Generator& gen, const testbed::ImageBank& bank,
                          int tiles_side, int max_entries = 2000, int threads = 1);
  double score(const Tensor<double>& image) const;
  Eigen::VectorXd features(const Tensor<double>& image) const;

 private:
  testbed::TileBasis basis_;
  Eigen::VectorXd mean_;
  Eigen::MatrixXd cov_inverse_;
};

// Realism score of the reconstruction after manipulating the recovered
// latent; deterministic per (result, direction, strength).
double manipulability_probe(const Generator& gen, const InversionResult& result,
                            const manip::Direction& dir, double m,
                            const Eigen::VectorXd& style_std, const RealismModel& realism,
                            std::uint64_t noise_seed);

}  // namespace stylescope::invert
