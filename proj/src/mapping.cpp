#include "stylescope/generator/mapping.hpp"

namespace stylescope::generator {

MappingNetwork::MappingNetwork(int dim, int layers, double slope, double bias_scale,
                               numerics::Rng& rng)
    : dim_(dim), slope_(slope) {
  if (dim <= 0 || layers <= 0) throw ConfigError("mapping: dim and layers must be positive");
  // Gain keeps activations near unit variance through the leaky stack.
  const double gain = std::sqrt(2.0 / (1.0 + slope * slope));
  const double wstd = gain / std::sqrt(static_cast<double>(dim));
  for (int l = 0; l < layers; ++l) {
    Eigen::MatrixXd m(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) m(i, j) = wstd * rng.normal();
    Eigen::VectorXd b(dim);
    for (int i = 0; i < dim; ++i) b[i] = bias_scale * rng.normal();
    weights_.push_back(std::move(m));
    biases_.push_back(std::move(b));
  }
}

StyleAffine::StyleAffine(const StyleLayout& layout, int w_dim, double scale, double alignment_mix,
                         double bias_value, numerics::Rng& rng)
    : w_dim_(w_dim) {
  if (alignment_mix < 0.0 || alignment_mix > 1.0)
    throw ConfigError("affine: alignment_mix must lie in [0,1]");
  const double dense_std = scale / std::sqrt(static_cast<double>(w_dim));
  int next_aligned = 0;
  for (const LayerInfo& layer : layout.layers()) {
    Eigen::MatrixXd a(layer.channels, w_dim);
    for (int c = 0; c < layer.channels; ++c) {
      for (int j = 0; j < w_dim; ++j) a(c, j) = (1.0 - alignment_mix) * dense_std * rng.normal();
      if (alignment_mix > 0.0) {
        const int j = next_aligned++ % w_dim;
        a(c, j) += alignment_mix * scale * (rng.uniform() < 0.5 ? -1.0 : 1.0);
      }
    }
    rows_.push_back(std::move(a));
    bias_.push_back(Eigen::VectorXd::Constant(layer.channels, bias_value));
  }
}

StyleMapper::StyleMapper(const StyleLayout& layout, int latent_dim, int mapping_layers,
                         double slope, double affine_scale, double alignment_mix,
                         std::uint64_t seed) {
  numerics::Rng map_rng(seed, 0x6d617070ULL);
  mapping_ = MappingNetwork(latent_dim, mapping_layers, slope, 0.2, map_rng);
  numerics::Rng aff_rng(seed, 0x61666669ULL);
  affine_ = StyleAffine(layout, latent_dim, affine_scale, alignment_mix, 1.0, aff_rng);

  // Seeded Monte-Carlo estimate of E[w]; used as the W-space anchor for
  // inversion initialization and direction probes.
  numerics::Rng mean_rng(seed, 0x6d65616eULL);
  const int n = 4096;
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(latent_dim);
  for (int i = 0; i < n; ++i)
    acc += mapping_.apply<double>(mean_rng.normal_vector(latent_dim));
  mean_w_ = acc / static_cast<double>(n);
}

std::vector<Eigen::VectorXd> StyleMapper::sample_wplus(numerics::Rng& rng, int n_rows) const {
  std::vector<Eigen::VectorXd> rows;
  rows.reserve(static_cast<std::size_t>(n_rows));
  for (int i = 0; i < n_rows; ++i)
    rows.push_back(mapping_.apply<double>(rng.normal_vector(latent_dim())));
  return rows;
}

}  // namespace stylescope::generator
