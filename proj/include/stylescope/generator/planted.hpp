#pragma once

#include <optional>
#include <vector>

#include "stylescope/generator/synthesis.hpp"
#include "stylescope/testbed/tiles.hpp"

namespace stylescope::generator {

enum class PlantedKind { TileColor, TileStripe, TileBalance, TileFrequency };

const char* planted_kind_name(PlantedKind k);
PlantedKind planted_kind_from(const std::string& name);

struct PlantedPlanEntry {
  int tile = 0;
  PlantedKind kind = PlantedKind::TileColor;
};

// One designated style channel and the attribute it controls.
struct PlantedChannel {
  int attribute = 0;  // index into the plan / attribute order
  int tile = 0;
  PlantedKind kind = PlantedKind::TileColor;
  ChannelId channel;
  int flat = 0;
  double center = 0.0;      // neutral raw style value
  double amplitude = 0.0;   // pattern amplitude per normalized style unit
  double scale = 1.0;       // population scale used for normalization
  double stat_slope = 0.0;  // d(attribute statistic)/d(raw style)
};

struct PlantedGroundTruth {
  double epsilon = 0.0;
  int tiles_side = 0;
  std::vector<PlantedChannel> channels;

  int region_of_flat(int flat) const {
    for (const auto& c : channels)
      if (c.flat == flat) return c.tile;
    return -1;
  }
  std::optional<int> attribute_of_flat(int flat) const {
    for (const auto& c : channels)
      if (c.flat == flat) return c.attribute;
    return std::nullopt;
  }
  const PlantedChannel& for_attribute(int a) const {
    return channels[static_cast<std::size_t>(a)];
  }
};

// Tile generator with constructed channel -> region / attribute ground truth.
// Designated channels drive one tile attribute each; every other non-tRGB
// channel acts as an epsilon-scaled smooth global nuisance whose spatial
// pattern is remixed by the rest of the style vector, so its gradient maps
// wander across tiles from sample to sample. tRGB channels act as
// epsilon-scaled global color shifts and stay affine. Per-tile noise planes
// are projected off the constant and carrier directions, which makes every
// tile statistic exactly noise-invariant.
class PlantedGenerator {
 public:
  PlantedGenerator() = default;
  PlantedGenerator(StyleLayout layout, int latent_dim, int mapping_layers, double leaky_slope,
                   int tiles_side, double epsilon, std::vector<PlantedPlanEntry> plan,
                   int nuisance_fields, std::uint64_t seed);

  static std::vector<PlantedPlanEntry> default_plan(int tiles_side);

  const StyleLayout& layout() const { return layout_; }
  const StyleMapper& mapper() const { return mapper_; }
  const PlantedGroundTruth& truth() const { return truth_; }
  const testbed::TileBasis& basis() const { return basis_; }
  int resolution() const { return layout_.output_resolution(); }
  std::uint64_t seed() const { return seed_; }
  double epsilon() const { return truth_.epsilon; }
  const Eigen::VectorXd& style_center() const { return style_center_; }
  const Eigen::VectorXd& style_scale() const { return style_scale_; }

  NoiseInputs make_noise(std::uint64_t noise_seed) const;

  template <class T>
  Tensor<T> synthesize(const VecX<T>& styles, const NoiseInputs& noise) const {
    if (styles.size() != layout_.total_channels())
      throw DimensionError("planted synthesize: style vector length mismatch");
    const int r = resolution();
    Tensor<T> img({3, r, r});
    for (std::int64_t i = 0; i < img.size(); ++i) img[i] = T(base_[i]);

    const double eps = truth_.epsilon;
    for (std::size_t pi = 0; pi < truth_.channels.size(); ++pi) {
      const PlantedChannel& pc = truth_.channels[pi];
      const T nrm = (styles[pc.flat] - pc.center) * (1.0 / pc.scale);
      add_designated(img, pc, nrm);
      if (eps != 0.0) {
        const T leak_amp = eps * pc.amplitude * nrm;
        const Tensor<double>& leak = leak_fields_[pi];
        for (int c = 0; c < 3; ++c)
          for (int y = 0; y < r; ++y)
            for (int x = 0; x < r; ++x) img(c, y, x) += leak_amp * leak(y, x);
      }
    }

    if (eps != 0.0 && !nuisance_flats_.empty()) {
      const auto n_nuis = static_cast<int>(nuisance_flats_.size());
      const auto n_fields = static_cast<int>(fields_.size());
      std::vector<T> shat(static_cast<std::size_t>(n_nuis));
      for (int v = 0; v < n_nuis; ++v) {
        const int f = nuisance_flats_[static_cast<std::size_t>(v)];
        shat[static_cast<std::size_t>(v)] = (styles[f] - style_center_[f]) / style_scale_[f];
      }
      for (int j = 0; j < n_fields; ++j) {
        T dot(0.0), lin(0.0);
        for (int v = 0; v < n_nuis; ++v) {
          dot += mix_dirs_(v, j) * shat[static_cast<std::size_t>(v)];
          lin += field_gains_(v, j) * shat[static_cast<std::size_t>(v)];
        }
        using std::tanh;
        const T coeff = (eps * kNuisanceAmplitude) * tanh(0.8 * dot) * lin;
        const Tensor<double>& field = fields_[static_cast<std::size_t>(j)];
        for (int c = 0; c < 3; ++c)
          for (int y = 0; y < r; ++y)
            for (int x = 0; x < r; ++x) img(c, y, x) += coeff * field(y, x);
      }
    }

    if (eps != 0.0 && !trgb_flats_.empty()) {
      T shift[3] = {T(0.0), T(0.0), T(0.0)};
      for (std::size_t v = 0; v < trgb_flats_.size(); ++v) {
        const int f = trgb_flats_[v];
        const T nrm = (styles[f] - style_center_[f]) / style_scale_[f];
        for (int c = 0; c < 3; ++c) shift[c] += (eps * trgb_gains_(v, c)) * nrm;
      }
      for (int c = 0; c < 3; ++c)
        for (int y = 0; y < r; ++y)
          for (int x = 0; x < r; ++x) img(c, y, x) += shift[c];
    }

    const Tensor<double>& plane = noise.planes.front();
    if (plane.dim(0) != r) throw DimensionError("planted synthesize: noise plane mismatch");
    for (int c = 0; c < 3; ++c)
      for (int y = 0; y < r; ++y)
        for (int x = 0; x < r; ++x) img(c, y, x) += kNoiseAmplitude * plane(y, x);
    return img;
  }

  static constexpr double kNuisanceAmplitude = 0.5;
  static constexpr double kNoiseAmplitude = 0.04;

 private:
  template <class T>
  void add_designated(Tensor<T>& img, const PlantedChannel& pc, const T& nrm) const {
    const testbed::TileRect& rect = basis_.rect(pc.tile);
    switch (pc.kind) {
      case PlantedKind::TileColor: {
        const T delta = pc.amplitude * nrm;
        for (int c = 0; c < 3; ++c)
          for (int y = 0; y < rect.h; ++y)
            for (int x = 0; x < rect.w; ++x) img(c, rect.y0 + y, rect.x0 + x) += delta;
        break;
      }
      case PlantedKind::TileStripe: {
        const T amp = pc.amplitude * nrm;
        const Tensor<double>& carrier = basis_.carrier(pc.tile);
        for (int c = 0; c < 3; ++c)
          for (int y = 0; y < rect.h; ++y)
            for (int x = 0; x < rect.w; ++x)
              img(c, rect.y0 + y, rect.x0 + x) += amp * carrier(y, x);
        break;
      }
      case PlantedKind::TileBalance: {
        const T half = 0.5 * pc.amplitude * nrm;
        for (int y = 0; y < rect.h; ++y)
          for (int x = 0; x < rect.w; ++x) {
            img(0, rect.y0 + y, rect.x0 + x) += half;
            img(2, rect.y0 + y, rect.x0 + x) -= half;
          }
        break;
      }
      case PlantedKind::TileFrequency: {
        using std::cos;
        const double tau = 6.283185307179586476925286766559;
        const bool horizontal = (pc.tile % 2) == 0;
        const T freq = testbed::TileBasis::kBaseFrequency + kFrequencyGain * nrm;
        for (int y = 0; y < rect.h; ++y)
          for (int x = 0; x < rect.w; ++x) {
            const double p = horizontal ? (y + 0.5) / rect.h : (x + 0.5) / rect.w;
            const T value = pc.amplitude * cos(freq * (tau * p));
            for (int c = 0; c < 3; ++c) img(c, rect.y0 + y, rect.x0 + x) += value;
          }
        break;
      }
    }
  }

  static constexpr double kFrequencyGain = 0.7;

  StyleLayout layout_;
  StyleMapper mapper_;
  testbed::TileBasis basis_;
  PlantedGroundTruth truth_;
  std::uint64_t seed_ = 0;

  Eigen::VectorXd style_center_;
  Eigen::VectorXd style_scale_;
  Tensor<double> base_;                      // [3, r, r]
  std::vector<Tensor<double>> leak_fields_;  // per designated channel, [r, r]
  std::vector<int> nuisance_flats_;          // non-designated, non-tRGB
  std::vector<int> trgb_flats_;
  std::vector<Tensor<double>> fields_;  // shared nuisance fields, [r, r]
  Eigen::MatrixXd mix_dirs_;            // [n_nuisance x n_fields]
  Eigen::MatrixXd field_gains_;         // [n_nuisance x n_fields]
  Eigen::MatrixXd trgb_gains_;          // [n_trgb x 3]
  std::vector<Eigen::MatrixXd> noise_guard_;  // per tile, orthonormal forbidden directions
};

}  // namespace stylescope::generator
