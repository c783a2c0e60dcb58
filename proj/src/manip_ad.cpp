#include "stylescope/manip/ad.hpp"

#include <cmath>
#include <limits>

#include "stylescope/numerics/parallel.hpp"
#include "stylescope/numerics/stats.hpp"

namespace stylescope::manip {

using testbed::ImageBank;

BisectionResult find_strength(const std::function<double(double)>& logit_of_m, double l_initial,
                              double delta_l, double tol, int max_iter, double m_max) {
  if (m_max <= 0.0) throw ArgumentError("find_strength: m_max must be positive");
  if (delta_l < 0.0) throw ArgumentError("find_strength: delta_l must be nonnegative");
  const double target = l_initial - delta_l;

  BisectionResult res;
  if (delta_l == 0.0) {  // the unmanipulated point already satisfies the target
    res.converged = true;
    res.m = 0.0;
    res.residual = 0.0;
    return res;
  }
  const double g_hi = logit_of_m(m_max) - target;
  if (std::abs(g_hi) < tol) {
    res.converged = true;
    res.m = m_max;
    res.residual = std::abs(g_hi);
    return res;
  }
  if (g_hi > 0.0) return res;  // no bracket: the direction cannot reach the target

  double lo = 0.0, hi = m_max;
  for (res.iterations = 1; res.iterations <= max_iter; ++res.iterations) {
    const double mid = 0.5 * (lo + hi);
    const double g = logit_of_m(mid) - target;
    if (std::abs(g) < tol) {
      res.converged = true;
      res.m = mid;
      res.residual = std::abs(g);
      return res;
    }
    if (g > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  res.iterations = max_iter;
  return res;
}

std::vector<int> ad_candidates(const ImageBank& bank, int target_attr, int max_candidates) {
  std::vector<double> logits(static_cast<std::size_t>(bank.n()));
  for (int i = 0; i < bank.n(); ++i)
    logits[static_cast<std::size_t>(i)] =
        bank.entries[static_cast<std::size_t>(i)].logits[target_attr];
  const auto order = numerics::argsort_ascending(logits);
  const auto lo = static_cast<std::size_t>(std::floor(0.50 * bank.n()));
  const auto hi = static_cast<std::size_t>(std::floor(0.75 * bank.n()));
  std::vector<int> band;
  for (std::size_t r = lo; r <= hi && r < order.size(); ++r)
    band.push_back(order[r]);
  if (max_candidates > 0 && static_cast<int>(band.size()) > max_candidates) {
    std::vector<int> subset;
    const double stride = static_cast<double>(band.size()) / max_candidates;
    for (int k = 0; k < max_candidates; ++k)
      subset.push_back(band[static_cast<std::size_t>(k * stride)]);
    band = std::move(subset);
  }
  if (band.empty()) throw ArgumentError("ad_candidates: empty candidate band");
  return band;
}

double calibrate_m_max(const Generator& gen, const ImageBank& bank, int target_attr,
                       const Direction& dir, const AdParams& params) {
  const auto candidates = ad_candidates(bank, target_attr, 32);
  for (double m = 0.25; m <= 4096.0; m *= 2.0) {
    for (int idx : candidates) {
      const auto& entry = bank.entries[static_cast<std::size_t>(idx)];
      const ManipPoint point{entry.styles, entry.w.size() > 0
                                               ? std::optional<Eigen::VectorXd>(entry.w)
                                               : std::nullopt};
      const auto moved = manipulate(gen, bank.stats.style_std, point, dir, m);
      const auto image =
          generator::synthesize<double>(gen, moved.styles, generator::make_noise(gen, entry.noise_seed));
      const Eigen::VectorXd logits = bank.attrs.logits(image);
      if (!logits.allFinite() || logits.cwiseAbs().maxCoeff() > params.logit_cap)
        return std::max(m / 2.0, 0.25);
    }
  }
  return 2048.0;
}

std::vector<AdCurvePoint> ad_curve(const Generator& gen, const ImageBank& bank, int target_attr,
                                   const Direction& dir, const AdParams& params,
                                   std::vector<BisectionAudit>* audit) {
  const auto candidates = ad_candidates(bank, target_attr, params.max_candidates);
  const double sigma_t = bank.stats.logit_std[target_attr];
  const double tol = params.tolerance * sigma_t;
  const double m_max =
      params.m_max > 0.0 ? params.m_max : calibrate_m_max(gen, bank, target_attr, dir, params);
  const int k_others = bank.attribute_count() - 1;
  if (k_others < 1) throw ArgumentError("ad_curve: need at least two attributes");

  struct CandidateRow {
    bool converged = false;
    double mean_ad = 0.0, max_ad = 0.0;
    BisectionAudit audit;
  };

  std::vector<AdCurvePoint> curve;
  for (double r : params.r_values) {
    std::vector<CandidateRow> rows(candidates.size());
    numerics::parallel_for(static_cast<std::int64_t>(candidates.size()), params.threads,
                           [&](std::int64_t ci) {
      const int idx = candidates[static_cast<std::size_t>(ci)];
      const auto& entry = bank.entries[static_cast<std::size_t>(idx)];
      const auto noise = generator::make_noise(gen, entry.noise_seed);
      CandidateRow& row = rows[static_cast<std::size_t>(ci)];

      Eigen::VectorXd moved_logits;
      if (r == 0.0) {
        // Control group: same code, fresh noise inputs.
        const auto resampled = generator::make_noise(
            gen, numerics::splitmix64(params.seed ^ testbed::entry_noise_seed(0xad0, idx)));
        moved_logits =
            bank.attrs.logits(generator::synthesize<double>(gen, entry.styles, resampled));
        row.converged = true;
        row.audit = BisectionAudit{r, idx, true, 0.0, 0, 0.0, tol};
      } else {
        const ManipPoint point{entry.styles, entry.w.size() > 0
                                                 ? std::optional<Eigen::VectorXd>(entry.w)
                                                 : std::nullopt};
        auto logit_of_m = [&](double m) {
          const auto moved = manipulate(gen, bank.stats.style_std, point, dir, m);
          return bank.attrs.logits(generator::synthesize<double>(gen, moved.styles, noise))
              [target_attr];
        };
        const double delta_l = r * sigma_t;
        const auto bisect = find_strength(logit_of_m, entry.logits[target_attr], delta_l, tol,
                                          params.max_iterations, m_max);
        row.audit = BisectionAudit{r,      idx, bisect.converged, bisect.m,
                                   bisect.iterations, bisect.residual, tol};
        row.converged = bisect.converged;
        if (bisect.converged) {
          const auto moved = manipulate(gen, bank.stats.style_std, point, dir, bisect.m);
          moved_logits =
              bank.attrs.logits(generator::synthesize<double>(gen, moved.styles, noise));
        }
      }
      if (row.converged) {
        double sum = 0.0, max_v = 0.0;
        for (int a = 0; a < bank.attribute_count(); ++a) {
          if (a == target_attr) continue;
          const double change =
              std::abs(moved_logits[a] - entry.logits[a]) / bank.stats.logit_std[a];
          sum += change;
          max_v = std::max(max_v, change);
        }
        row.mean_ad = sum / k_others;
        row.max_ad = max_v;
      }
    });

    AdCurvePoint point;
    point.r = r;
    double mean_sum = 0.0, max_sum = 0.0;
    for (const auto& row : rows) {
      if (audit) audit->push_back(row.audit);
      if (!row.converged) {
        ++point.nonconverged;
        continue;
      }
      ++point.converged;
      mean_sum += row.mean_ad;
      max_sum += row.max_ad;
    }
    if (point.converged > 0) {
      point.mean_ad = mean_sum / point.converged;
      point.max_ad = max_sum / point.converged;
    } else {  // flagged empty, never fabricated
      point.mean_ad = std::numeric_limits<double>::quiet_NaN();
      point.max_ad = std::numeric_limits<double>::quiet_NaN();
    }
    curve.push_back(point);
  }
  return curve;
}

}  // namespace stylescope::manip
