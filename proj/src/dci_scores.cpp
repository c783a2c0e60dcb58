#include "stylescope/dci/scores.hpp"

#include <cmath>
#include <limits>

#include "stylescope/errors.hpp"

namespace stylescope::dci {

namespace {

// Entropy of a nonnegative weight vector, normalized to the given log base;
// zero weights contribute nothing.
double entropy(const Eigen::VectorXd& weights, double base) {
  const double total = weights.sum();
  if (total <= 0.0 || base <= 1.0) return 0.0;
  double h = 0.0;
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    const double p = weights[i] / total;
    h -= p * std::log(p);
  }
  return h / std::log(base);
}

}  // namespace

Eigen::MatrixXd importance_matrix(const std::vector<Eigen::VectorXd>& attribute_weights) {
  if (attribute_weights.empty()) throw ArgumentError("importance_matrix: no attributes");
  const Eigen::Index dims = attribute_weights.front().size();
  Eigen::MatrixXd r(dims, static_cast<Eigen::Index>(attribute_weights.size()));
  for (std::size_t a = 0; a < attribute_weights.size(); ++a) {
    if (attribute_weights[a].size() != dims)
      throw DimensionError("importance_matrix: weight vectors disagree on latent dimension");
    r.col(static_cast<Eigen::Index>(a)) = attribute_weights[a].cwiseAbs();
  }
  return r;
}

DisentanglementResult disentanglement(const Eigen::MatrixXd& importance) {
  if ((importance.array() < 0.0).any())
    throw ArgumentError("disentanglement: importance must be nonnegative");
  const Eigen::Index dims = importance.rows();
  const auto attributes = static_cast<double>(importance.cols());
  DisentanglementResult out;
  out.per_dim.resize(dims);
  out.rho.resize(dims);
  const double grand_total = importance.sum();
  for (Eigen::Index i = 0; i < dims; ++i) {
    const Eigen::VectorXd row = importance.row(i);
    const double mass = row.sum();
    if (mass == 0.0) {
      out.per_dim[i] = std::numeric_limits<double>::quiet_NaN();
      out.rho[i] = 0.0;
      continue;
    }
    out.per_dim[i] = importance.cols() <= 1 ? 1.0 : 1.0 - entropy(row, attributes);
    out.rho[i] = grand_total > 0.0 ? mass / grand_total : 0.0;
  }
  out.total = 0.0;
  for (Eigen::Index i = 0; i < dims; ++i)
    if (out.rho[i] > 0.0) out.total += out.rho[i] * out.per_dim[i];
  return out;
}

CompletenessResult completeness(const Eigen::MatrixXd& importance) {
  if ((importance.array() < 0.0).any())
    throw ArgumentError("completeness: importance must be nonnegative");
  const auto dims = static_cast<double>(importance.rows());
  CompletenessResult out;
  out.per_attribute.resize(importance.cols());
  double sum = 0.0;
  int counted = 0;
  for (Eigen::Index j = 0; j < importance.cols(); ++j) {
    const Eigen::VectorXd col = importance.col(j);
    if (col.sum() == 0.0) {
      out.per_attribute[j] = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    out.per_attribute[j] = importance.rows() <= 1 ? 1.0 : 1.0 - entropy(col, dims);
    sum += out.per_attribute[j];
    ++counted;
  }
  out.mean = counted > 0 ? sum / counted : 0.0;
  return out;
}

}  // namespace stylescope::dci
