#pragma once

#include <functional>

#include "stylescope/manip/direction.hpp"

namespace stylescope::manip {

struct BisectionResult {
  bool converged = false;
  double m = 0.0;
  int iterations = 0;
  double residual = 0.0;  // |l_final - (l_initial - delta_l)|
};

// Bisection on [0, m_max] for the strength whose manipulated logit drops by
// delta_l, accepted when the residual is below `tol`. No bracket (the logit
// cannot drop far enough) or running past max_iter midpoints means
// nonconverged; such entries are excluded downstream.
BisectionResult find_strength(const std::function<double(double)>& logit_of_m, double l_initial,
                              double delta_l, double tol, int max_iter, double m_max);

struct AdCurvePoint {
  double r = 0.0;
  double mean_ad = 0.0;  // NaN when no candidate converged
  double max_ad = 0.0;
  int converged = 0;
  int nonconverged = 0;
};

struct BisectionAudit {
  double r = 0.0;
  int entry = 0;
  bool converged = false;
  double m = 0.0;
  int iterations = 0;
  double residual = 0.0;
  double tol = 0.0;
};

struct AdParams {
  std::vector<double> r_values = {0.0, 0.25, 0.5, 0.75, 1.0};
  double tolerance = 0.05;  // in units of sigma(l_target)
  int max_iterations = 20;
  double m_max = 0.0;        // <= 0: calibrate per direction
  double logit_cap = 8.0;    // calibration: statistic leaves its plausible range
  int max_candidates = 0;    // 0: the full quantile band
  std::uint64_t seed = 1;    // r = 0 noise-resampled control copies
  int threads = 1;
};

// Candidates: the closed [50%, 75%] quantile band of the target logit,
// ranked from negative to positive. Rows of the returned audit trail record
// every bisection run when a sink is supplied.
std::vector<int> ad_candidates(const testbed::ImageBank& bank, int target_attr,
                               int max_candidates = 0);

// Smallest probed strength at which any attribute logit leaves the plausible
// range, halved.
double calibrate_m_max(const Generator& gen, const testbed::ImageBank& bank, int target_attr,
                       const Direction& dir, const AdParams& params);

std::vector<AdCurvePoint> ad_curve(const Generator& gen, const testbed::ImageBank& bank,
                                   int target_attr, const Direction& dir, const AdParams& params,
                                   std::vector<BisectionAudit>* audit = nullptr);

}  // namespace stylescope::manip
