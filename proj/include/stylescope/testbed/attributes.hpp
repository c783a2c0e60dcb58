#pragma once

#include <string>
#include <vector>

#include "stylescope/generator/planted.hpp"
#include "stylescope/testbed/tiles.hpp"

namespace stylescope::testbed {

using numerics::VecX;

enum class StatKind { TileLuminance, TileStripe, TileBalance, TileFrequency, GlobalBalance };

const char* stat_kind_name(StatKind k);
StatKind stat_kind_from(const std::string& name);

struct AttributeSpec {
  std::string name;
  StatKind kind = StatKind::TileLuminance;
  int tile = -1;  // -1 for global statistics
};

// Analytic attribute classifiers. Each attribute is a differentiable image
// statistic wrapped as a logit l = alpha * (tau - stat); negative logit means
// the attribute is present (the statistic is above its calibration point).
class AttributeModel {
 public:
  AttributeModel() = default;
  AttributeModel(TileBasis basis, std::vector<AttributeSpec> specs);

  // Attribute set matching a planted plan, in plan order.
  static AttributeModel for_plan(const TileBasis& basis,
                                 const std::vector<generator::PlantedPlanEntry>& plan);
  // Default set for the synthesis generator: per-tile luminance and stripe
  // statistics plus one global color balance.
  static AttributeModel synthesis_default(const TileBasis& basis);

  int count() const { return static_cast<int>(specs_.size()); }
  const std::vector<AttributeSpec>& specs() const { return specs_; }
  const AttributeSpec& spec(int a) const { return specs_[static_cast<std::size_t>(a)]; }
  const TileBasis& basis() const { return basis_; }
  const Eigen::VectorXd& tau() const { return tau_; }
  const Eigen::VectorXd& alpha() const { return alpha_; }
  bool calibrated() const { return calibrated_; }

  void set_calibration(Eigen::VectorXd tau, Eigen::VectorXd alpha);

  template <class T>
  T raw_stat(int a, const numerics::Tensor<T>& image) const {
    if (a < 0 || a >= count())
      throw ArgumentError("unknown attribute id " + std::to_string(a));
    const AttributeSpec& s = spec(a);
    if (image.dim(1) != basis_.resolution())
      throw ArgumentError("attribute statistic: image resolution does not match the testbed");
    switch (s.kind) {
      case StatKind::TileLuminance: {
        const TileRect& rect = basis_.rect(s.tile);
        T acc(0.0);
        for (int y = 0; y < rect.h; ++y)
          for (int x = 0; x < rect.w; ++x)
            acc += luminance(image, rect.y0 + y, rect.x0 + x);
        return acc * (1.0 / rect.pixels());
      }
      case StatKind::TileStripe:
        return carrier_projection(image, s.tile, basis_.carrier(s.tile));
      case StatKind::TileBalance: {
        const TileRect& rect = basis_.rect(s.tile);
        T acc(0.0);
        for (int y = 0; y < rect.h; ++y)
          for (int x = 0; x < rect.w; ++x)
            acc += image(0, rect.y0 + y, rect.x0 + x) - image(2, rect.y0 + y, rect.x0 + x);
        return acc * (1.0 / rect.pixels());
      }
      case StatKind::TileFrequency:
        return carrier_projection(image, s.tile, basis_.carrier_hi(s.tile)) -
               carrier_projection(image, s.tile, basis_.carrier_lo(s.tile));
      case StatKind::GlobalBalance: {
        const int r = image.dim(1);
        T acc(0.0);
        for (int y = 0; y < r; ++y)
          for (int x = 0; x < r; ++x) acc += image(0, y, x) - image(2, y, x);
        return acc * (1.0 / (r * r));
      }
    }
    throw ArgumentError("unknown attribute statistic kind");
  }

  template <class T>
  VecX<T> logits(const numerics::Tensor<T>& image) const {
    VecX<T> out(count());
    for (int a = 0; a < count(); ++a) out[a] = alpha_[a] * (tau_[a] - raw_stat(a, image));
    return out;
  }

 private:
  template <class T>
  T luminance(const numerics::Tensor<T>& image, int y, int x) const {
    return (image(0, y, x) + image(1, y, x) + image(2, y, x)) * (1.0 / 3.0);
  }
  template <class T>
  T carrier_projection(const numerics::Tensor<T>& image, int tile,
                       const numerics::Tensor<double>& carrier) const {
    const TileRect& rect = basis_.rect(tile);
    T acc(0.0);
    for (int y = 0; y < rect.h; ++y)
      for (int x = 0; x < rect.w; ++x)
        acc += luminance(image, rect.y0 + y, rect.x0 + x) * carrier(y, x);
    return acc * (2.0 / rect.pixels());
  }

  TileBasis basis_;
  std::vector<AttributeSpec> specs_;
  Eigen::VectorXd tau_;
  Eigen::VectorXd alpha_;
  bool calibrated_ = false;
};

}  // namespace stylescope::testbed
