#include "stylescope/generator/synthesis.hpp"

namespace stylescope::generator {

SynthesisGenerator::SynthesisGenerator(StyleLayout layout, int latent_dim, int mapping_layers,
                                       double leaky_slope, std::uint64_t seed)
    : layout_(std::move(layout)),
      mapper_(layout_, latent_dim, mapping_layers, leaky_slope, 2.0, 0.0, seed),
      seed_(seed) {
  numerics::Rng rng(seed, 0x73796e7468ULL);

  const int base_res = layout_.resolutions().front();
  const int base_width = layout_.widths().front();
  const_input_ = Tensor<double>({base_width, base_res, base_res});
  for (std::int64_t i = 0; i < const_input_.size(); ++i) const_input_[i] = rng.normal();

  for (const LayerInfo& layer : layout_.layers()) {
    if (layer.kind == LayerKind::TRgb) {
      Tensor<double> w({3, layer.channels, 1, 1});
      const double std = 1.0 / std::sqrt(static_cast<double>(layer.channels));
      for (std::int64_t i = 0; i < w.size(); ++i) w[i] = std * rng.normal();
      trgb_weights_.push_back(std::move(w));
      Eigen::Vector3d b;
      for (int c = 0; c < 3; ++c) b[c] = 0.2 * rng.normal();
      trgb_bias_.push_back(b);
    } else {
      const int c_in = layer.channels;
      const int res_idx =
          static_cast<int>(std::find(layout_.resolutions().begin(), layout_.resolutions().end(),
                                     layer.resolution) -
                           layout_.resolutions().begin());
      const int c_out = layout_.widths()[static_cast<std::size_t>(res_idx)];
      const int k = 3;
      Tensor<double> w({c_out, c_in, k, k});
      const double std = std::sqrt(2.0 / static_cast<double>(c_in * k * k));
      for (std::int64_t i = 0; i < w.size(); ++i) w[i] = std * rng.normal();
      conv_weights_.push_back(std::move(w));
      Eigen::VectorXd b(c_out);
      for (int c = 0; c < c_out; ++c) b[c] = 0.05 * rng.normal();
      conv_bias_.push_back(std::move(b));
    }
  }
}

NoiseInputs SynthesisGenerator::make_noise(std::uint64_t noise_seed) const {
  NoiseInputs noise;
  noise.seed = noise_seed;
  int conv_idx = 0;
  for (const LayerInfo& layer : layout_.layers()) {
    if (layer.kind == LayerKind::TRgb) continue;
    numerics::Rng rng(noise_seed, 0x6e6f6973ULL + static_cast<std::uint64_t>(conv_idx));
    Tensor<double> plane({layer.resolution, layer.resolution});
    for (std::int64_t i = 0; i < plane.size(); ++i) plane[i] = rng.normal();
    noise.planes.push_back(std::move(plane));
    ++conv_idx;
  }
  return noise;
}

}  // namespace stylescope::generator
