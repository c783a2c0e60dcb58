#include "stylescope/invert/invert.hpp"

#include "stylescope/numerics/parallel.hpp"

#include <Eigen/Cholesky>

namespace stylescope::invert {

int latent_dim_for_space(const Generator& gen, Space space) {
  const auto& mapper = generator::mapper_of(gen);
  const auto& layout = generator::layout_of(gen);
  switch (space) {
    case Space::Z:
    case Space::W: return mapper.latent_dim();
    case Space::WPlus: return layout.slot_count() * mapper.latent_dim();
    case Space::S: return layout.total_channels();
  }
  throw ArgumentError("unknown space");
}

Eigen::VectorXd mean_latent(const Generator& gen, Space space) {
  const auto& mapper = generator::mapper_of(gen);
  const auto& layout = generator::layout_of(gen);
  switch (space) {
    case Space::Z: return Eigen::VectorXd::Zero(mapper.latent_dim());
    case Space::W: return mapper.mean_w();
    case Space::WPlus: {
      Eigen::VectorXd x(layout.slot_count() * mapper.latent_dim());
      for (int s = 0; s < layout.slot_count(); ++s)
        x.segment(s * mapper.latent_dim(), mapper.latent_dim()) = mapper.mean_w();
      return x;
    }
    case Space::S: return generator::styles_from_w(gen, mapper.mean_w());
  }
  throw ArgumentError("unknown space");
}

namespace {

template <class T>
T mse_loss(const numerics::Tensor<T>& image, const numerics::Tensor<double>& target) {
  T acc(0.0);
  for (std::int64_t i = 0; i < image.size(); ++i) {
    const T d = image[i] - target[i];
    acc += d * d;
  }
  return acc * (1.0 / static_cast<double>(image.size()));
}

struct Descent {
  Eigen::VectorXd x;
  double loss = 0.0;
  std::vector<double> trace;
  int steps = 0;
};

template <class LossFn, class GradFn>
Descent run_descent(Eigen::VectorXd x0, int steps, double step_size, const LossFn& loss_of,
                    const GradFn& grad_of) {
  Descent d;
  d.x = std::move(x0);
  d.loss = loss_of(d.x);
  d.trace.push_back(d.loss);
  double step = step_size;
  const double step_cap = step_size * 16.0;
  for (int it = 0; it < steps; ++it) {
    const Eigen::VectorXd grad = grad_of(d.x);
    bool accepted = false;
    while (step > 1e-14) {
      const Eigen::VectorXd candidate = d.x - step * grad;
      const double candidate_loss = loss_of(candidate);
      if (candidate_loss <= d.loss) {
        d.x = candidate;
        d.loss = candidate_loss;
        step = std::min(step * 1.2, step_cap);
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // no descent direction at any step length
    d.trace.push_back(d.loss);
    ++d.steps;
    if (d.loss < 1e-16) break;
  }
  return d;
}

}  // namespace

InversionResult invert(const Generator& gen, const Tensor<double>& target,
                       const InvertParams& params) {
  if (target.dim(1) != generator::resolution_of(gen))
    throw DimensionError("invert: target resolution does not match the generator");
  if (params.steps < 1) throw ArgumentError("invert: steps must be >= 1");
  const auto noise = generator::make_noise(gen, params.noise_seed);
  const int dim = latent_dim_for_space(gen, params.space);
  Eigen::VectorXd x0 = params.init ? *params.init : mean_latent(gen, params.space);
  if (x0.size() != dim) throw DimensionError("invert: init latent length mismatch");

  auto loss_of = [&](const Eigen::VectorXd& x) {
    return mse_loss(generator::synthesize<double>(
                        gen, decode_latent<double>(gen, params.space, x), noise),
                    target);
  };
  auto dual_loss = [&](const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    return mse_loss(generator::synthesize(gen, decode_latent<T>(gen, params.space, x), noise),
                    target);
  };
  auto grad_of = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    if (params.use_fd) {
      Eigen::VectorXd g(x.size());
      for (Eigen::Index j = 0; j < x.size(); ++j) {
        Eigen::VectorXd hi = x, lo = x;
        hi[j] += params.fd_h;
        lo[j] -= params.fd_h;
        g[j] = (loss_of(hi) - loss_of(lo)) / (2.0 * params.fd_h);
      }
      return g;
    }
    return numerics::value_and_gradient<16>(dual_loss, x).second;
  };

  const Descent d = run_descent(std::move(x0), params.steps, params.step_size, loss_of, grad_of);
  InversionResult result;
  result.space = params.space;
  result.latent = d.x;
  result.trace = d.trace;
  result.steps_taken = d.steps;
  result.final_error = loss_of(result.latent);
  return result;
}

InversionResult warm_start_invert(const Generator& gen, const Tensor<double>& target,
                                  const Eigen::VectorXd& init_styles, int steps,
                                  std::uint64_t noise_seed, double step_size) {
  InvertParams params;
  params.space = Space::S;
  params.steps = steps;
  params.step_size = step_size;
  params.init = init_styles;
  params.noise_seed = noise_seed;
  return invert(gen, target, params);
}

RealismModel RealismModel::fit(const Generator& gen, const testbed::ImageBank& bank,
                               int tiles_side, int max_entries, int threads) {
  RealismModel model;
  model.basis_ = testbed::TileBasis(generator::resolution_of(gen), tiles_side);
  const int n = std::min(max_entries, bank.n());
  const int dim = 2 * model.basis_.tiles();
  Eigen::MatrixXd feats(n, dim);
  numerics::parallel_for(n, threads, [&](std::int64_t i) {
    feats.row(static_cast<Eigen::Index>(i)) =
        model.features(testbed::bank_image(gen, bank, static_cast<int>(i)));
  });
  model.mean_ = feats.colwise().mean();
  Eigen::MatrixXd centered = feats.rowwise() - model.mean_.transpose();
  Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(n);
  cov.diagonal().array() += 1e-9 * (cov.trace() / dim + 1.0);
  model.cov_inverse_ = cov.ldlt().solve(Eigen::MatrixXd::Identity(dim, dim));
  return model;
}

Eigen::VectorXd RealismModel::features(const Tensor<double>& image) const {
  Eigen::VectorXd f(2 * basis_.tiles());
  for (int t = 0; t < basis_.tiles(); ++t) {
    const auto& rect = basis_.rect(t);
    double mean = 0.0;
    for (int y = 0; y < rect.h; ++y)
      for (int x = 0; x < rect.w; ++x)
        mean += (image(0, rect.y0 + y, rect.x0 + x) + image(1, rect.y0 + y, rect.x0 + x) +
                 image(2, rect.y0 + y, rect.x0 + x)) /
                3.0;
    mean /= rect.pixels();
    double var = 0.0;
    for (int y = 0; y < rect.h; ++y)
      for (int x = 0; x < rect.w; ++x) {
        const double lum =
            (image(0, rect.y0 + y, rect.x0 + x) + image(1, rect.y0 + y, rect.x0 + x) +
             image(2, rect.y0 + y, rect.x0 + x)) /
            3.0;
        var += (lum - mean) * (lum - mean);
      }
    f[2 * t] = mean;
    f[2 * t + 1] = std::sqrt(var / rect.pixels());
  }
  return f;
}

double RealismModel::score(const Tensor<double>& image) const {
  const Eigen::VectorXd d = features(image) - mean_;
  return d.dot(cov_inverse_ * d);
}

double manipulability_probe(const Generator& gen, const InversionResult& result,
                            const manip::Direction& dir, double m,
                            const Eigen::VectorXd& style_std, const RealismModel& realism,
                            std::uint64_t noise_seed) {
  const Eigen::VectorXd styles = decode_latent<double>(gen, result.space, result.latent);
  manip::ManipPoint point{styles, std::nullopt};
  if (result.space == Space::W) point.w = result.latent;
  const auto moved = manip::manipulate(gen, style_std, point, dir, m);
  const auto image =
      generator::synthesize<double>(gen, moved.styles, generator::make_noise(gen, noise_seed));
  return realism.score(image);
}

}  // namespace stylescope::invert
