#pragma once

#include <vector>

#include <Eigen/Core>

#include "stylescope/generator/layout.hpp"
#include "stylescope/numerics/autodiff.hpp"
#include "stylescope/numerics/rng.hpp"

namespace stylescope::generator {

using numerics::VecX;

template <class T>
T leaky_relu(const T& x, double slope) {
  return numerics::value_of(x) >= 0.0 ? x : T(x * slope);
}

// Z -> W: fully connected stack, leaky-ReLU after every layer.
class MappingNetwork {
 public:
  MappingNetwork() = default;
  MappingNetwork(int dim, int layers, double slope, double bias_scale, numerics::Rng& rng);

  int dim() const { return dim_; }
  double slope() const { return slope_; }

  template <class T>
  VecX<T> apply(const VecX<T>& z) const {
    if (z.size() != dim_) throw DimensionError("mapping: z dimension mismatch");
    VecX<T> x = z;
    VecX<T> y(dim_);
    for (std::size_t l = 0; l < weights_.size(); ++l) {
      const Eigen::MatrixXd& m = weights_[l];
      const Eigen::VectorXd& b = biases_[l];
      for (int i = 0; i < dim_; ++i) {
        T acc(b[i]);
        for (int j = 0; j < dim_; ++j) acc += m(i, j) * x[j];
        y[i] = leaky_relu(acc, slope_);
      }
      x = y;
    }
    return x;
  }

  const std::vector<Eigen::MatrixXd>& weights() const { return weights_; }
  const std::vector<Eigen::VectorXd>& biases() const { return biases_; }

 private:
  int dim_ = 0;
  double slope_ = 0.2;
  std::vector<Eigen::MatrixXd> weights_;
  std::vector<Eigen::VectorXd> biases_;
};

// W -> S: one learned affine map per layout layer. s2 and tRGB of a
// resolution read the same W+ slot, per the layout's slot assignment.
class StyleAffine {
 public:
  StyleAffine() = default;

  // `alignment_mix` in [0, 1]: 0 gives fully dense rows, 1 gives rows that
  // read a single W dimension (round-robin). `scale` sets the style std
  // around `bias_value`.
  StyleAffine(const StyleLayout& layout, int w_dim, double scale, double alignment_mix,
              double bias_value, numerics::Rng& rng);

  int w_dim() const { return w_dim_; }

  template <class T>
  VecX<T> styles_from_slots(const StyleLayout& layout, const std::vector<VecX<T>>& slots) const {
    if (static_cast<int>(slots.size()) != layout.slot_count())
      throw DimensionError("styles_from_slots: expected " + std::to_string(layout.slot_count()) +
                           " W+ rows, got " + std::to_string(slots.size()));
    VecX<T> s(layout.total_channels());
    for (const LayerInfo& layer : layout.layers()) {
      const Eigen::MatrixXd& a = rows_[static_cast<std::size_t>(layer.index)];
      const Eigen::VectorXd& b = bias_[static_cast<std::size_t>(layer.index)];
      const VecX<T>& w = slots[static_cast<std::size_t>(layer.wplus_slot)];
      if (w.size() != w_dim_) throw DimensionError("styles_from_slots: W row dimension mismatch");
      for (int c = 0; c < layer.channels; ++c) {
        T acc(b[c]);
        for (int j = 0; j < w_dim_; ++j) acc += a(c, j) * w[j];
        s[layer.flat_offset + c] = acc;
      }
    }
    return s;
  }

  template <class T>
  VecX<T> styles_from_w(const StyleLayout& layout, const VecX<T>& w) const {
    return styles_from_slots(layout, std::vector<VecX<T>>(
                                         static_cast<std::size_t>(layout.slot_count()), w));
  }

  const Eigen::MatrixXd& rows(int layer) const { return rows_[static_cast<std::size_t>(layer)]; }
  const Eigen::VectorXd& bias(int layer) const { return bias_[static_cast<std::size_t>(layer)]; }

 private:
  int w_dim_ = 0;
  std::vector<Eigen::MatrixXd> rows_;  // per layer: [channels x w_dim]
  std::vector<Eigen::VectorXd> bias_;
};

// Shared Z -> W -> S plumbing owned by every generator.
class StyleMapper {
 public:
  StyleMapper() = default;
  StyleMapper(const StyleLayout& layout, int latent_dim, int mapping_layers, double slope,
              double affine_scale, double alignment_mix, std::uint64_t seed);

  int latent_dim() const { return mapping_.dim(); }

  Eigen::VectorXd sample_z(numerics::Rng& rng) const { return rng.normal_vector(latent_dim()); }

  template <class T>
  VecX<T> map_z_to_w(const VecX<T>& z) const {
    return mapping_.apply(z);
  }

  // Each W+ row is an independently mapped z sample.
  std::vector<Eigen::VectorXd> sample_wplus(numerics::Rng& rng, int n_rows) const;

  const MappingNetwork& mapping() const { return mapping_; }
  const StyleAffine& affine() const { return affine_; }
  const Eigen::VectorXd& mean_w() const { return mean_w_; }

 private:
  MappingNetwork mapping_;
  StyleAffine affine_;
  Eigen::VectorXd mean_w_;
};

}  // namespace stylescope::generator
