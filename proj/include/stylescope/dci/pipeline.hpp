#pragma once

#include <string>

#include "stylescope/dci/scores.hpp"
#include "stylescope/space.hpp"
#include "stylescope/testbed/bank.hpp"

namespace stylescope::dci {

struct DciParams {
  double lambda = 0.01;          // on standardized features and targets
  double tail_q = 0.02;          // extreme-selection quantile
  double active_threshold = 0.05;
  bool standardize_targets = true;
  double min_accuracy = 0.55;    // below this an attribute is uninformative
  int threads = 1;
};

struct DciReport {
  Space space = Space::S;
  std::string bank_label = "zw";
  int latent_dim = 0;
  double disentanglement = 0.0;
  double completeness = 0.0;
  double informativeness = 0.0;
  Eigen::VectorXd per_dim_d;          // NaN for idle dimensions
  Eigen::VectorXd rho;
  Eigen::VectorXd per_attr_c;         // indexed like active_attributes
  Eigen::VectorXd per_attr_accuracy;  // indexed like active_attributes
  Eigen::MatrixXd importance;         // dims x active attributes
  std::vector<int> active_attributes;
  std::vector<int> excluded_attributes;  // uninformative among the active set
};

// Latent matrix of a bank for one space; throws DataError when the bank's
// provenance does not record that space.
Eigen::MatrixXd latents_for_space(const testbed::ImageBank& bank, Space space);

// The full regression protocol on one bank and one space.
DciReport dci_run(const testbed::ImageBank& bank, Space space, const DciParams& params);

// Scores per requested space on identical images; a W+ request builds a
// separate bank from independently sampled W+ rows (seeded from the base
// bank's seed) and reports both W+ and S on it.
std::vector<DciReport> dci_compare(const generator::Generator& gen,
                                   const testbed::ImageBank& bank,
                                   const std::vector<Space>& spaces, const DciParams& params);

}  // namespace stylescope::dci
