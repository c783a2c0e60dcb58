#include "stylescope/generator/planted.hpp"

#include <algorithm>
#include <cmath>

namespace stylescope::generator {

const char* planted_kind_name(PlantedKind k) {
  switch (k) {
    case PlantedKind::TileColor: return "color";
    case PlantedKind::TileStripe: return "stripe";
    case PlantedKind::TileBalance: return "balance";
    default: return "frequency";
  }
}

PlantedKind planted_kind_from(const std::string& name) {
  if (name == "color") return PlantedKind::TileColor;
  if (name == "stripe") return PlantedKind::TileStripe;
  if (name == "balance") return PlantedKind::TileBalance;
  if (name == "frequency") return PlantedKind::TileFrequency;
  throw ConfigError("unknown planted kind: " + name);
}

std::vector<PlantedPlanEntry> PlantedGenerator::default_plan(int tiles_side) {
  std::vector<PlantedPlanEntry> plan;
  const int tiles = tiles_side * tiles_side;
  for (int t = 0; t < tiles; ++t) {
    plan.push_back({t, PlantedKind::TileColor});
    plan.push_back({t, PlantedKind::TileStripe});
    plan.push_back({t, PlantedKind::TileBalance});
  }
  return plan;
}

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

// Sum of low-frequency cosine modes, normalized to unit RMS.
Tensor<double> smooth_field(int r, numerics::Rng& rng) {
  Tensor<double> field({r, r});
  for (int kx = 0; kx <= 2; ++kx)
    for (int ky = 0; ky <= 2; ++ky) {
      if (kx == 0 && ky == 0) continue;
      const double c = rng.normal() / (1.0 + kx + ky);
      const double phase = kTau * rng.uniform();
      for (int y = 0; y < r; ++y)
        for (int x = 0; x < r; ++x)
          field(y, x) += c * std::cos(kTau * (kx * x + ky * y) / r + phase);
    }
  double sq = 0.0;
  for (std::int64_t i = 0; i < field.size(); ++i) sq += field[i] * field[i];
  const double rms = std::sqrt(sq / static_cast<double>(field.size()));
  for (std::int64_t i = 0; i < field.size(); ++i) field[i] /= rms;
  return field;
}

void add_gaussian_bump(Tensor<double>& field, double cx, double cy, double sigma, double amp) {
  const int r = field.dim(0);
  for (int y = 0; y < r; ++y)
    for (int x = 0; x < r; ++x) {
      const double dx = x - cx, dy = y - cy;
      field(y, x) += amp * std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
    }
}

void normalize_rms(Tensor<double>& field, double target) {
  double sq = 0.0;
  for (std::int64_t i = 0; i < field.size(); ++i) sq += field[i] * field[i];
  const double rms = std::sqrt(sq / static_cast<double>(field.size()));
  for (std::int64_t i = 0; i < field.size(); ++i) field[i] *= target / rms;
}

double kind_amplitude(PlantedKind k) {
  switch (k) {
    case PlantedKind::TileColor: return 0.35;
    case PlantedKind::TileStripe: return 0.35;
    case PlantedKind::TileBalance: return 0.5;
    default: return 0.3;
  }
}

}  // namespace

PlantedGenerator::PlantedGenerator(StyleLayout layout, int latent_dim, int mapping_layers,
                                   double leaky_slope, int tiles_side, double epsilon,
                                   std::vector<PlantedPlanEntry> plan, int nuisance_fields,
                                   std::uint64_t seed)
    : layout_(std::move(layout)),
      mapper_(layout_, latent_dim, mapping_layers, leaky_slope, 2.0, 0.5, seed),
      basis_(layout_.output_resolution(), tiles_side),
      seed_(seed) {
  if (epsilon < 0.0 || epsilon >= 1.0) throw ConfigError("planted: epsilon must lie in [0,1)");
  if (plan.empty()) plan = default_plan(tiles_side);
  for (const auto& entry : plan)
    if (entry.tile < 0 || entry.tile >= basis_.tiles())
      throw ConfigError("planted: plan references tile outside the grid");

  // Seeded probe of the style distribution; gives the centers and scales the
  // planted effects are expressed in.
  {
    numerics::Rng rng(seed, 0x70726f62ULL);
    const int n = 512;
    Eigen::MatrixXd probe(n, layout_.total_channels());
    for (int i = 0; i < n; ++i) {
      const Eigen::VectorXd w = mapper_.map_z_to_w<double>(rng.normal_vector(latent_dim));
      probe.row(i) = mapper_.affine().styles_from_w(layout_, w).transpose();
    }
    style_center_ = probe.colwise().mean();
    style_scale_.resize(layout_.total_channels());
    for (int c = 0; c < layout_.total_channels(); ++c) {
      const double var = (probe.col(c).array() - style_center_[c]).square().mean();
      style_scale_[c] = std::max(std::sqrt(var), 1e-9);
    }
  }

  // Designated channels: a seeded draw of distinct non-tRGB slots.
  std::vector<int> candidates;
  for (int f = 0; f < layout_.total_channels(); ++f)
    if (!layout_.is_trgb(f)) candidates.push_back(f);
  if (plan.size() > candidates.size())
    throw ConfigError("planted: more attributes than designatable channels");
  {
    numerics::Rng rng(seed, 0x73687566ULL);
    for (std::size_t i = candidates.size() - 1; i > 0; --i)
      std::swap(candidates[i], candidates[rng.below(i + 1)]);
  }

  truth_.epsilon = epsilon;
  truth_.tiles_side = tiles_side;
  for (std::size_t a = 0; a < plan.size(); ++a) {
    PlantedChannel pc;
    pc.attribute = static_cast<int>(a);
    pc.tile = plan[a].tile;
    pc.kind = plan[a].kind;
    pc.flat = candidates[a];
    pc.channel = layout_.channel_at(pc.flat);
    pc.center = style_center_[pc.flat];
    pc.scale = style_scale_[pc.flat];
    pc.amplitude = kind_amplitude(pc.kind);
    pc.stat_slope = pc.amplitude / pc.scale;  // exact for color/stripe/balance
    truth_.channels.push_back(pc);
  }

  std::vector<char> designated(static_cast<std::size_t>(layout_.total_channels()), 0);
  for (const auto& pc : truth_.channels) designated[static_cast<std::size_t>(pc.flat)] = 1;
  for (int f = 0; f < layout_.total_channels(); ++f) {
    if (layout_.is_trgb(f))
      trgb_flats_.push_back(f);
    else if (!designated[static_cast<std::size_t>(f)])
      nuisance_flats_.push_back(f);
  }

  const int r = resolution();
  {
    numerics::Rng rng(seed, 0x62617365ULL);
    base_ = Tensor<double>({3, r, r});
    Tensor<double> background = smooth_field(r, rng);
    for (int t = 0; t < basis_.tiles(); ++t) {
      const double lum = rng.uniform(-0.4, 0.4);
      const testbed::TileRect& rect = basis_.rect(t);
      for (int c = 0; c < 3; ++c)
        for (int y = 0; y < rect.h; ++y)
          for (int x = 0; x < rect.w; ++x) base_(c, rect.y0 + y, rect.x0 + x) += lum;
    }
    for (int c = 0; c < 3; ++c)
      for (int y = 0; y < r; ++y)
        for (int x = 0; x < r; ++x) base_(c, y, x) += 0.1 * background(y, x);
  }

  for (std::size_t a = 0; a < truth_.channels.size(); ++a) {
    numerics::Rng rng(seed, 0x6c65616bULL + a);
    Tensor<double> leak = smooth_field(r, rng);
    // Leak RMS matches the in-tile pattern RMS over the whole image, so the
    // out-of-tile energy fraction of a designated perturbation is epsilon^2.
    const double tile_fraction = 1.0 / basis_.tiles();
    normalize_rms(leak, std::sqrt(tile_fraction));
    leak_fields_.push_back(std::move(leak));
  }

  // Fold the leak's own-tile projection into the exact statistic slopes.
  for (std::size_t a = 0; a < truth_.channels.size(); ++a) {
    PlantedChannel& pc = truth_.channels[a];
    const Tensor<double>& leak = leak_fields_[a];
    const testbed::TileRect& rect = basis_.rect(pc.tile);
    double leak_proj = 0.0;
    double pattern_proj = 1.0;
    switch (pc.kind) {
      case PlantedKind::TileColor:
        for (int y = 0; y < rect.h; ++y)
          for (int x = 0; x < rect.w; ++x) leak_proj += leak(rect.y0 + y, rect.x0 + x);
        leak_proj /= rect.pixels();
        break;
      case PlantedKind::TileStripe:
        for (int y = 0; y < rect.h; ++y)
          for (int x = 0; x < rect.w; ++x)
            leak_proj += leak(rect.y0 + y, rect.x0 + x) * basis_.carrier(pc.tile)(y, x);
        leak_proj *= 2.0 / rect.pixels();
        break;
      case PlantedKind::TileBalance:
        leak_proj = 0.0;  // gray leak cancels in the balance statistic
        break;
      case PlantedKind::TileFrequency: {
        for (int y = 0; y < rect.h; ++y)
          for (int x = 0; x < rect.w; ++x)
            leak_proj += leak(rect.y0 + y, rect.x0 + x) *
                         (basis_.carrier_hi(pc.tile)(y, x) - basis_.carrier_lo(pc.tile)(y, x));
        leak_proj *= 2.0 / rect.pixels();
        // Local slope of the frequency discriminator at the neutral point.
        const bool horizontal = (pc.tile % 2) == 0;
        const double h = 1e-5;
        double hi = 0.0, lo = 0.0;
        for (int y = 0; y < rect.h; ++y)
          for (int x = 0; x < rect.w; ++x) {
            const double p = horizontal ? (y + 0.5) / rect.h : (x + 0.5) / rect.w;
            const double d = basis_.carrier_hi(pc.tile)(y, x) - basis_.carrier_lo(pc.tile)(y, x);
            hi += std::cos((testbed::TileBasis::kBaseFrequency + h) * kTau * p) * d;
            lo += std::cos((testbed::TileBasis::kBaseFrequency - h) * kTau * p) * d;
          }
        pattern_proj = kFrequencyGain * (hi - lo) * (2.0 / rect.pixels()) / (2.0 * h);
        break;
      }
    }
    pc.stat_slope = pc.amplitude * (pattern_proj + epsilon * leak_proj) / pc.scale;
  }

  {
    numerics::Rng rng(seed, 0x6669656cULL);
    for (int j = 0; j < nuisance_fields; ++j) {
      Tensor<double> field = smooth_field(r, rng);
      for (std::int64_t i = 0; i < field.size(); ++i) field[i] *= 0.3;
      const testbed::TileRect& rect = basis_.rect(j % basis_.tiles());
      const double jitter = 0.25 * rect.w;
      add_gaussian_bump(field, rect.x0 + 0.5 * rect.w + rng.uniform(-jitter, jitter),
                        rect.y0 + 0.5 * rect.h + rng.uniform(-jitter, jitter), 0.45 * rect.w,
                        1.0);
      normalize_rms(field, 1.0);
      fields_.push_back(std::move(field));
    }
  }

  {
    numerics::Rng rng(seed, 0x6d697864ULL);
    const auto n_nuis = static_cast<int>(nuisance_flats_.size());
    mix_dirs_.resize(n_nuis, nuisance_fields);
    field_gains_.resize(n_nuis, nuisance_fields);
    for (int j = 0; j < nuisance_fields; ++j) {
      for (int v = 0; v < n_nuis; ++v) mix_dirs_(v, j) = rng.normal();
      if (n_nuis > 0) mix_dirs_.col(j).normalize();
      // Equal gain magnitudes: which field dominates a channel's gradient is
      // then decided by the sample-dependent mixture weights alone, so the
      // winning tile keeps changing from sample to sample.
      const double gain = n_nuis > 0 ? 1.0 / std::sqrt(static_cast<double>(n_nuis)) : 0.0;
      for (int v = 0; v < n_nuis; ++v)
        field_gains_(v, j) = (rng.uniform() < 0.5 ? -1.0 : 1.0) * gain;
    }
  }

  {
    numerics::Rng rng(seed, 0x74726762ULL);
    trgb_gains_.resize(static_cast<Eigen::Index>(trgb_flats_.size()), 3);
    for (Eigen::Index v = 0; v < trgb_gains_.rows(); ++v)
      for (int c = 0; c < 3; ++c) trgb_gains_(v, c) = 0.05 * rng.normal();
  }

  // Per-tile orthonormal bases of the directions noise must not excite:
  // the constant and the three carriers.
  for (int t = 0; t < basis_.tiles(); ++t) {
    const testbed::TileRect& rect = basis_.rect(t);
    const int n = rect.pixels();
    Eigen::MatrixXd dirs(n, 4);
    for (int y = 0; y < rect.h; ++y)
      for (int x = 0; x < rect.w; ++x) {
        const int i = y * rect.w + x;
        dirs(i, 0) = 1.0;
        dirs(i, 1) = basis_.carrier(t)(y, x);
        dirs(i, 2) = basis_.carrier_lo(t)(y, x);
        dirs(i, 3) = basis_.carrier_hi(t)(y, x);
      }
    Eigen::MatrixXd q(n, 4);
    int cols = 0;
    for (int c = 0; c < 4; ++c) {
      Eigen::VectorXd v = dirs.col(c);
      for (int k = 0; k < cols; ++k) v -= q.col(k).dot(v) * q.col(k);
      const double norm = v.norm();
      if (norm > 1e-9) q.col(cols++) = v / norm;
    }
    noise_guard_.push_back(q.leftCols(cols));
  }
}

NoiseInputs PlantedGenerator::make_noise(std::uint64_t noise_seed) const {
  NoiseInputs noise;
  noise.seed = noise_seed;
  numerics::Rng rng(noise_seed, 0x6e6f6973ULL);
  const int r = resolution();
  Tensor<double> plane({r, r});
  for (std::int64_t i = 0; i < plane.size(); ++i) plane[i] = rng.normal();
  for (int t = 0; t < basis_.tiles(); ++t) {
    const testbed::TileRect& rect = basis_.rect(t);
    Eigen::VectorXd v(rect.pixels());
    for (int y = 0; y < rect.h; ++y)
      for (int x = 0; x < rect.w; ++x) v[y * rect.w + x] = plane(rect.y0 + y, rect.x0 + x);
    const Eigen::MatrixXd& q = noise_guard_[static_cast<std::size_t>(t)];
    v -= q * (q.transpose() * v);
    for (int y = 0; y < rect.h; ++y)
      for (int x = 0; x < rect.w; ++x) plane(rect.y0 + y, rect.x0 + x) = v[y * rect.w + x];
  }
  noise.planes.push_back(std::move(plane));
  return noise;
}

}  // namespace stylescope::generator
