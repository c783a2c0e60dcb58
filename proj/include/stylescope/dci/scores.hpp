#pragma once

#include <vector>

#include <Eigen/Core>

namespace stylescope::dci {

// R_ij = |weight of latent dimension i for attribute j| on standardized
// features; rows are latent dimensions, columns attributes.
Eigen::MatrixXd importance_matrix(const std::vector<Eigen::VectorXd>& attribute_weights);

struct DisentanglementResult {
  Eigen::VectorXd per_dim;  // d_i in [0,1]; NaN for all-zero rows
  Eigen::VectorXd rho;      // relative row mass, zero for all-zero rows
  double total = 0.0;       // sum_i rho_i d_i
};

// Per-dimension one-minus-entropy of the row distribution over attributes,
// entropy base = attribute count; weighted by relative row mass.
DisentanglementResult disentanglement(const Eigen::MatrixXd& importance);

struct CompletenessResult {
  Eigen::VectorXd per_attribute;  // c_j in [0,1]; NaN for all-zero columns
  double mean = 0.0;              // over finite entries
};

// Per-attribute one-minus-entropy of the column distribution over
// dimensions, entropy base = latent dimension count.
CompletenessResult completeness(const Eigen::MatrixXd& importance);

}  // namespace stylescope::dci
