#include "stylescope/dci/lasso.hpp"

#include <cmath>

#include "stylescope/errors.hpp"

namespace stylescope::dci {

namespace {
double soft_threshold(double z, double t) {
  if (z > t) return z - t;
  if (z < -t) return z + t;
  return 0.0;
}
}  // namespace

LassoFit lasso_cd(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double lambda, double tol,
                  int max_sweeps) {
  const auto n = x.rows();
  const auto p = x.cols();
  if (n != y.size() || n < 2)
    throw ArgumentError("lasso: need matching rows(latents) == length(targets) >= 2");
  if (!x.allFinite() || !y.allFinite()) throw DataError("lasso: non-finite inputs");

  LassoFit fit;
  fit.intercept = y.mean();
  fit.weights = Eigen::VectorXd::Zero(p);

  const double inv_n = 1.0 / static_cast<double>(n);
  Eigen::VectorXd col_sq(p);
  for (Eigen::Index j = 0; j < p; ++j) col_sq[j] = x.col(j).squaredNorm() * inv_n;

  Eigen::VectorXd residual = y.array() - fit.intercept;
  for (fit.sweeps = 1; fit.sweeps <= max_sweeps; ++fit.sweeps) {
    double max_update = 0.0;
    for (Eigen::Index j = 0; j < p; ++j) {
      if (col_sq[j] == 0.0) continue;
      const double old = fit.weights[j];
      const double z = x.col(j).dot(residual) * inv_n + col_sq[j] * old;
      const double next = soft_threshold(z, lambda) / col_sq[j];
      if (next != old) {
        residual -= (next - old) * x.col(j);
        fit.weights[j] = next;
        max_update = std::max(max_update, std::abs(next - old));
      }
    }
    if (max_update < tol) {
      fit.converged = true;
      break;
    }
  }
  return fit;
}

}  // namespace stylescope::dci
