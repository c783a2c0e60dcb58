#pragma once

#include <cmath>
#include <vector>

#include "stylescope/generator/mapping.hpp"
#include "stylescope/numerics/conv.hpp"

namespace stylescope::generator {

using numerics::Tensor;

// Per-synthesis-layer noise planes plus the master seed they derive from.
struct NoiseInputs {
  std::uint64_t seed = 0;
  std::vector<Tensor<double>> planes;
};

template <class T>
T silu(const T& x) {
  using std::exp;
  return x / (1.0 + exp(-x));
}

// Weight modulation: w'_oik = style_i * w_oik, optionally demodulated per
// output channel by 1/sqrt(sum_ik w'^2 + 1e-8), then shape-preserving conv.
template <class T>
Tensor<T> modulated_conv(const Tensor<T>& features, const Tensor<double>& weights,
                         const VecX<T>& style, bool demodulate) {
  constexpr double kDemodEps = 1e-8;
  const int c_out = weights.dim(0), c_in = weights.dim(1), k = weights.dim(3);
  if (style.size() != c_in)
    throw DimensionError("modulated_conv: style length " + std::to_string(style.size()) +
                         " does not match input channel axis " + std::to_string(c_in));
  Tensor<T> mod({c_out, c_in, k, k});
  for (int o = 0; o < c_out; ++o)
    for (int i = 0; i < c_in; ++i)
      for (int ky = 0; ky < k; ++ky)
        for (int kx = 0; kx < k; ++kx) mod(o, i, ky, kx) = style[i] * weights(o, i, ky, kx);
  if (demodulate) {
    using std::sqrt;
    for (int o = 0; o < c_out; ++o) {
      T norm(kDemodEps);
      for (int i = 0; i < c_in; ++i)
        for (int ky = 0; ky < k; ++ky)
          for (int kx = 0; kx < k; ++kx) {
            const T& w = mod(o, i, ky, kx);
            norm += w * w;
          }
      const T inv = 1.0 / sqrt(norm);
      for (int i = 0; i < c_in; ++i)
        for (int ky = 0; ky < k; ++ky)
          for (int kx = 0; kx < k; ++kx) mod(o, i, ky, kx) *= inv;
    }
  }
  return numerics::conv2d(features, mod, (k - 1) / 2);
}

// Miniature of the reference style-modulated synthesis network: a learned
// constant input, per resolution a pair of demodulated 3x3 convs (single
// conv at the base), and an undemodulated 1x1 tRGB conv feeding a bilinearly
// upsampled RGB skip accumulator.
class SynthesisGenerator {
 public:
  SynthesisGenerator() = default;
  SynthesisGenerator(StyleLayout layout, int latent_dim, int mapping_layers, double leaky_slope,
                     std::uint64_t seed);

  const StyleLayout& layout() const { return layout_; }
  const StyleMapper& mapper() const { return mapper_; }
  int resolution() const { return layout_.output_resolution(); }
  std::uint64_t seed() const { return seed_; }

  NoiseInputs make_noise(std::uint64_t noise_seed) const;

  template <class T>
  Tensor<T> synthesize(const VecX<T>& styles, const NoiseInputs& noise) const {
    if (styles.size() != layout_.total_channels())
      throw DimensionError("synthesize: style vector length " + std::to_string(styles.size()) +
                           " does not match layout total " +
                           std::to_string(layout_.total_channels()));
    Tensor<T> x({const_input_.dim(0), const_input_.dim(1), const_input_.dim(2)});
    for (std::int64_t i = 0; i < x.size(); ++i) x[i] = T(const_input_[i]);

    Tensor<T> rgb;
    int conv_idx = 0;
    for (const LayerInfo& layer : layout_.layers()) {
      VecX<T> seg = styles.segment(layer.flat_offset, layer.channels);
      if (layer.kind == LayerKind::TRgb) {
        Tensor<T> contrib = modulated_conv(x, trgb_weights_[trgb_index(layer)], seg, false);
        const Eigen::Vector3d& b = trgb_bias_[trgb_index(layer)];
        for (int c = 0; c < 3; ++c)
          for (int y = 0; y < layer.resolution; ++y)
            for (int xx = 0; xx < layer.resolution; ++xx) contrib(c, y, xx) += b[c];
        rgb = (rgb.size() == 0) ? std::move(contrib)
                                : add(numerics::upsample_bilinear(rgb, 2), contrib);
      } else {
        if (layer.kind == LayerKind::S1 && layer.resolution > x.dim(1))
          x = numerics::upsample_bilinear(x, 2);
        x = modulated_conv(x, conv_weights_[conv_idx], seg, true);
        const Tensor<double>& plane = noise.planes[static_cast<std::size_t>(conv_idx)];
        if (plane.dim(0) != x.dim(1))
          throw DimensionError("synthesize: noise plane axis 0 mismatch at conv " +
                               std::to_string(conv_idx));
        const Eigen::VectorXd& b = conv_bias_[conv_idx];
        const double ns = noise_strength_;
        for (int c = 0; c < x.dim(0); ++c)
          for (int y = 0; y < x.dim(1); ++y)
            for (int xx = 0; xx < x.dim(2); ++xx)
              x(c, y, xx) = silu(T(x(c, y, xx) + ns * plane(y, xx) + b[c]));
        ++conv_idx;
      }
    }
    return rgb;
  }

  const Tensor<double>& const_input() const { return const_input_; }
  const Tensor<double>& conv_weights(int i) const { return conv_weights_[i]; }
  const Eigen::VectorXd& conv_bias(int i) const { return conv_bias_[i]; }
  const Tensor<double>& trgb_weights(int i) const { return trgb_weights_[i]; }
  const Eigen::Vector3d& trgb_bias(int i) const { return trgb_bias_[i]; }
  double noise_strength() const { return noise_strength_; }

 private:
  template <class T>
  static Tensor<T> add(Tensor<T> a, const Tensor<T>& b) {
    for (std::int64_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
  }
  int trgb_index(const LayerInfo& layer) const {
    int idx = 0;
    for (const LayerInfo& l : layout_.layers()) {
      if (l.index == layer.index) break;
      if (l.kind == LayerKind::TRgb) ++idx;
    }
    return idx;
  }

  StyleLayout layout_;
  StyleMapper mapper_;
  std::uint64_t seed_ = 0;
  Tensor<double> const_input_;
  std::vector<Tensor<double>> conv_weights_;  // one per s1/s2 layer, in layout order
  std::vector<Eigen::VectorXd> conv_bias_;
  std::vector<Tensor<double>> trgb_weights_;  // [3, width, 1, 1]
  std::vector<Eigen::Vector3d> trgb_bias_;
  double noise_strength_ = 0.1;
};

}  // namespace stylescope::generator
