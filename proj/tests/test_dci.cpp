#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <Eigen/QR>

#include "stylescope/dci/lasso.hpp"
#include "stylescope/dci/pipeline.hpp"
#include "stylescope/numerics/rng.hpp"

using namespace stylescope;
using namespace stylescope::numerics;
using namespace stylescope::dci;

namespace {

Eigen::MatrixXd standardized_random(int n, int p, Rng& rng) {
  Eigen::MatrixXd x(n, p);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < p; ++j) x(i, j) = rng.normal();
  for (int j = 0; j < p; ++j) {
    const double mu = x.col(j).mean();
    const double sd = std::sqrt((x.col(j).array() - mu).square().mean());
    x.col(j) = (x.col(j).array() - mu) / sd;
  }
  return x;
}

}  // namespace

TEST_CASE("lasso recovers a single-feature target as lambda vanishes") {
  Rng rng(1);
  const auto x = standardized_random(200, 12, rng);
  const Eigen::VectorXd y = 3.0 * x.col(5);
  const auto fit = lasso_cd(x, y, 1e-6);
  CHECK(fit.converged);
  CHECK(fit.weights[5] == doctest::Approx(3.0).epsilon(1e-3));
  for (int j = 0; j < 12; ++j)
    if (j != 5) CHECK(std::abs(fit.weights[j]) < 1e-3);
}

TEST_CASE("huge lambda shrinks everything to the intercept") {
  Rng rng(2);
  const auto x = standardized_random(100, 6, rng);
  Eigen::VectorXd y(100);
  for (int i = 0; i < 100; ++i) y[i] = 2.0 + rng.normal();
  const auto fit = lasso_cd(x, y, 1e6);
  CHECK(fit.weights.cwiseAbs().maxCoeff() == 0.0);
  CHECK(fit.intercept == doctest::Approx(y.mean()).epsilon(1e-12));
}

TEST_CASE("orthonormal design reduces to soft-thresholded least squares") {
  // Columns with (1/n) X^T X = I: scaled orthogonal basis.
  const int n = 64, p = 8;
  Eigen::MatrixXd base = Eigen::MatrixXd::Zero(n, p);
  // Deterministic orthogonal columns from a Householder QR of a fixed matrix.
  Rng rng(3);
  Eigen::MatrixXd seed(n, p);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < p; ++j) seed(i, j) = rng.normal();
  // Center before orthogonalizing so the basis stays mean-zero and the
  // fixed-intercept coordinate descent matches the no-intercept closed form.
  for (int j = 0; j < p; ++j) seed.col(j).array() -= seed.col(j).mean();
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(seed);
  base = Eigen::MatrixXd(qr.householderQ()).leftCols(p) * std::sqrt(static_cast<double>(n));

  Eigen::VectorXd truth(p);
  for (int j = 0; j < p; ++j) truth[j] = (j % 2 == 0 ? 1.0 : -1.0) * (0.05 + 0.1 * j);
  const Eigen::VectorXd y = base * truth;
  const double lambda = 0.12;
  const auto fit = lasso_cd(base, y, lambda, 1e-12, 20000);

  const Eigen::VectorXd ols = base.transpose() * y / n;
  for (int j = 0; j < p; ++j) {
    const double expect =
        std::abs(ols[j]) <= lambda ? 0.0 : (ols[j] > 0 ? ols[j] - lambda : ols[j] + lambda);
    CHECK(fit.weights[j] == doctest::Approx(expect).epsilon(1e-8));
  }
}

TEST_CASE("lasso rejects non-finite inputs") {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(4, 2);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(4);
  x(1, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(lasso_cd(x, y, 0.1), DataError);
}

TEST_CASE("importance matrix basics") {
  std::vector<Eigen::VectorXd> weights;
  Eigen::VectorXd w1(3), w2(3);
  w1 << -1.0, 0.0, 0.5;
  w2 << 0.0, 0.0, 0.0;
  weights.push_back(w1);
  weights.push_back(w2);
  const auto r = importance_matrix(weights);
  CHECK(r(0, 0) == 1.0);
  CHECK(r(2, 0) == 0.5);
  CHECK(r.col(1).sum() == 0.0);  // all-zero column flagged by score layer
}

TEST_CASE("disentanglement hand values") {
  // One-hot row: zero entropy -> 1.
  Eigen::MatrixXd r1(1, 4);
  r1 << 1.0, 0.0, 0.0, 0.0;
  CHECK(disentanglement(r1).per_dim[0] == doctest::Approx(1.0).epsilon(1e-15));

  // Uniform row over K attributes -> 0.
  Eigen::MatrixXd r2 = Eigen::MatrixXd::Constant(1, 5, 0.2);
  CHECK(disentanglement(r2).per_dim[0] == doctest::Approx(0.0).epsilon(1e-15));

  // Half/half over K=2 -> 0; same mass among K=4 -> 1 - 1/log2(4) = 0.5.
  Eigen::MatrixXd r3(1, 2);
  r3 << 0.5, 0.5;
  CHECK(disentanglement(r3).per_dim[0] == doctest::Approx(0.0).epsilon(1e-12));
  Eigen::MatrixXd r4(1, 4);
  r4 << 0.5, 0.5, 0.0, 0.0;
  CHECK(disentanglement(r4).per_dim[0] == doctest::Approx(0.5).epsilon(1e-12));

  // All-zero rows are undefined with zero weight.
  Eigen::MatrixXd r5 = Eigen::MatrixXd::Zero(2, 3);
  r5(0, 1) = 2.0;
  const auto res = disentanglement(r5);
  CHECK(std::isnan(res.per_dim[1]));
  CHECK(res.rho[1] == 0.0);
  CHECK(res.total == doctest::Approx(1.0));
}

TEST_CASE("completeness hand values") {
  Eigen::MatrixXd one_hot = Eigen::MatrixXd::Zero(6, 1);
  one_hot(3, 0) = 0.7;
  CHECK(completeness(one_hot).per_attribute[0] == doctest::Approx(1.0).epsilon(1e-15));

  Eigen::MatrixXd uniform = Eigen::MatrixXd::Constant(8, 1, 0.125);
  CHECK(completeness(uniform).per_attribute[0] == doctest::Approx(0.0).epsilon(1e-12));

  // Two equal nonzeros among D=16 dims: 1 - 1/log2(16) = 0.75.
  Eigen::MatrixXd two_hot = Eigen::MatrixXd::Zero(16, 1);
  two_hot(2, 0) = 1.0;
  two_hot(9, 0) = 1.0;
  CHECK(completeness(two_hot).per_attribute[0] == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("scores are scale invariant and permutation equivariant") {
  Rng rng(9);
  Eigen::MatrixXd r(6, 4);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 4; ++j) r(i, j) = std::abs(rng.normal());

  const auto d1 = disentanglement(r);
  const auto d2 = disentanglement(3.7 * r);
  CHECK(d1.total == doctest::Approx(d2.total).epsilon(1e-15));
  const auto c1 = completeness(r);
  const auto c2 = completeness(3.7 * r);
  CHECK(c1.mean == doctest::Approx(c2.mean).epsilon(1e-15));

  // Permute attribute columns: per-attribute scores permute, totals fixed.
  Eigen::MatrixXd p = r;
  p.col(0).swap(p.col(3));
  const auto dp = disentanglement(p);
  const auto cp = completeness(p);
  CHECK(dp.total == doctest::Approx(d1.total).epsilon(1e-15));
  CHECK(cp.mean == doctest::Approx(c1.mean).epsilon(1e-15));
  CHECK(cp.per_attribute[0] == doctest::Approx(c1.per_attribute[3]).epsilon(1e-15));
}

TEST_CASE("diagonal-support importance is perfectly disentangled and complete") {
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(5, 5);
  for (int i = 0; i < 5; ++i) r(i, (i + 2) % 5) = 0.3 + 0.1 * i;  // permutation support
  CHECK(disentanglement(r).total == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(completeness(r).mean == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("planted DCI at epsilon 0 is near perfect in S") {
  const auto cfg = generator::GeneratorConfig::desk_planted(40, 0.0);
  const auto gen = generator::build_generator(cfg);
  const auto bank =
      testbed::build_bank(gen, cfg, testbed::default_attributes(gen, cfg.tiles_side), 3000, 11,
                          testbed::Provenance::ZW, 2);
  DciParams params;
  params.threads = 2;
  const auto s = dci_run(bank, Space::S, params);
  CHECK(s.disentanglement >= 0.95);
  CHECK(s.completeness >= 0.95);
  CHECK(s.informativeness >= 0.99);
  CHECK(s.excluded_attributes.empty());

  // Importance concentrates on the designated pairing by a wide margin.
  const auto* truth = generator::planted_truth(gen);
  REQUIRE(truth != nullptr);
  for (int ai = 0; ai < static_cast<int>(s.active_attributes.size()); ++ai) {
    const int attr = s.active_attributes[static_cast<std::size_t>(ai)];
    const int designated = truth->for_attribute(attr).flat;
    const double own = s.importance(designated, ai);
    double best_other = 0.0;
    for (int d = 0; d < s.importance.rows(); ++d)
      if (d != designated) best_other = std::max(best_other, s.importance(d, ai));
    CHECK(own >= 10.0 * std::max(best_other, 1e-12));
  }

  const auto w = dci_run(bank, Space::W, params);
  const auto z = dci_run(bank, Space::Z, params);
  CHECK(s.disentanglement > w.disentanglement);
  CHECK(w.disentanglement > z.disentanglement);
}

TEST_CASE("dci_compare covers the W+ protocol and is deterministic") {
  const auto cfg = generator::GeneratorConfig::desk_planted(41, 0.0);
  const auto gen = generator::build_generator(cfg);
  const auto bank =
      testbed::build_bank(gen, cfg, testbed::default_attributes(gen, cfg.tiles_side), 600, 13,
                          testbed::Provenance::ZW, 2);
  DciParams params;
  params.threads = 2;
  const auto reports =
      dci_compare(gen, bank, {Space::S, Space::WPlus}, params);
  REQUIRE(reports.size() == 3);
  CHECK(reports[0].space == Space::S);
  CHECK(reports[0].bank_label == "zw");
  CHECK(reports[1].space == Space::WPlus);
  CHECK(reports[1].bank_label == "wplus");
  CHECK(reports[2].space == Space::S);
  CHECK(reports[2].bank_label == "wplus");
  CHECK(reports[2].disentanglement > reports[1].disentanglement);

  const auto again = dci_compare(gen, bank, {Space::S, Space::WPlus}, params);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    CHECK(reports[i].disentanglement == again[i].disentanglement);
    CHECK(reports[i].completeness == again[i].completeness);
    CHECK(reports[i].informativeness == again[i].informativeness);
  }

  CHECK_THROWS_AS(dci_run(bank, Space::WPlus, params), DataError);
}
