#pragma once

#include <Eigen/Core>

namespace stylescope::dci {

struct LassoFit {
  Eigen::VectorXd weights;
  double intercept = 0.0;
  int sweeps = 0;
  bool converged = false;
};

// L1-regularized least squares, objective (1/2n)|y - b0 - Xw|^2 + lambda |w|_1,
// solved by cyclic coordinate descent with soft thresholding. Columns are
// expected standardized; constant columns receive zero weight. Converges when
// the largest coefficient update falls below `tol`, capped at `max_sweeps`.
LassoFit lasso_cd(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double lambda,
                  double tol = 1e-7, int max_sweeps = 10000);

}  // namespace stylescope::dci
