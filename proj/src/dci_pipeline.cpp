#include "stylescope/dci/pipeline.hpp"

#include "stylescope/dci/lasso.hpp"
#include "stylescope/numerics/parallel.hpp"
#include "stylescope/numerics/rng.hpp"

namespace stylescope::dci {

using testbed::ImageBank;

Eigen::MatrixXd latents_for_space(const ImageBank& bank, Space space) {
  const int n = bank.n();
  auto require_zw = [&] {
    if (bank.provenance != testbed::Provenance::ZW)
      throw DataError(std::string("bank does not record ") + space_name(space) +
                      " provenance");
  };
  switch (space) {
    case Space::Z: {
      require_zw();
      Eigen::MatrixXd m(n, bank.entries.front().z.size());
      for (int i = 0; i < n; ++i) m.row(i) = bank.entries[static_cast<std::size_t>(i)].z;
      return m;
    }
    case Space::W: {
      require_zw();
      Eigen::MatrixXd m(n, bank.entries.front().w.size());
      for (int i = 0; i < n; ++i) m.row(i) = bank.entries[static_cast<std::size_t>(i)].w;
      return m;
    }
    case Space::WPlus: {
      if (bank.provenance != testbed::Provenance::WPlus)
        throw DataError("bank does not record W+ provenance");
      const auto& w0 = bank.entries.front().wplus;
      Eigen::MatrixXd m(n, w0.rows() * w0.cols());
      for (int i = 0; i < n; ++i) {
        const auto& wp = bank.entries[static_cast<std::size_t>(i)].wplus;
        m.row(i) = Eigen::Map<const Eigen::VectorXd>(wp.data(), wp.size());
      }
      return m;
    }
    case Space::S: {
      Eigen::MatrixXd m(n, bank.style_dim());
      for (int i = 0; i < n; ++i) m.row(i) = bank.entries[static_cast<std::size_t>(i)].styles;
      return m;
    }
  }
  throw ArgumentError("unknown space");
}

DciReport dci_run(const ImageBank& bank, Space space, const DciParams& params) {
  const Eigen::MatrixXd latents = latents_for_space(bank, space);
  const auto dims = latents.cols();

  DciReport report;
  report.space = space;
  report.bank_label = bank.provenance == testbed::Provenance::ZW ? "zw" : "wplus";
  report.latent_dim = static_cast<int>(dims);
  report.active_attributes = filter_active_attributes(bank, params.active_threshold);
  const auto n_active = static_cast<int>(report.active_attributes.size());
  if (n_active == 0) throw DataError("dci: no active attributes in the bank");

  std::vector<Eigen::VectorXd> weights(static_cast<std::size_t>(n_active));
  report.per_attr_accuracy.resize(n_active);

  numerics::parallel_for(n_active, params.threads, [&](std::int64_t ai) {
    const int attr = report.active_attributes[static_cast<std::size_t>(ai)];
    const auto split = testbed::select_extremes(bank, attr, params.tail_q);
    const auto n_train = static_cast<Eigen::Index>(split.train.size());
    const auto n_test = static_cast<Eigen::Index>(split.test.size());
    if (n_test == 0) throw ArgumentError("dci: empty test set");

    Eigen::MatrixXd x(n_train, dims);
    Eigen::VectorXd y(n_train);
    for (Eigen::Index r = 0; r < n_train; ++r) {
      x.row(r) = latents.row(split.train[static_cast<std::size_t>(r)]);
      y[r] = bank.entries[static_cast<std::size_t>(split.train[static_cast<std::size_t>(r)])]
                 .logits[attr];
    }
    // Standardize features on the training split (population convention).
    Eigen::VectorXd mu(dims), sigma(dims);
    for (Eigen::Index j = 0; j < dims; ++j) {
      mu[j] = x.col(j).mean();
      const double var = (x.col(j).array() - mu[j]).square().mean();
      sigma[j] = std::sqrt(var);
      if (sigma[j] > 0.0)
        x.col(j) = (x.col(j).array() - mu[j]) / sigma[j];
      else
        x.col(j).setZero();
    }
    const double y_mean = y.mean();
    const double y_std = std::sqrt((y.array() - y_mean).square().mean());
    Eigen::VectorXd target = y;
    if (params.standardize_targets && y_std > 0.0)
      target = (y.array() - y_mean) / y_std;

    const LassoFit fit = lasso_cd(x, target, params.lambda);
    weights[static_cast<std::size_t>(ai)] = fit.weights;

    // Classify the held-out tails by predicted logit sign.
    int correct = 0;
    for (Eigen::Index t = 0; t < n_test; ++t) {
      const int row = split.test[static_cast<std::size_t>(t)];
      Eigen::VectorXd z(dims);
      for (Eigen::Index j = 0; j < dims; ++j)
        z[j] = sigma[j] > 0.0 ? (latents(row, j) - mu[j]) / sigma[j] : 0.0;
      double pred = fit.intercept + fit.weights.dot(z);
      if (params.standardize_targets && y_std > 0.0) pred = y_mean + y_std * pred;
      const int predicted_label = pred < 0.0 ? +1 : -1;
      if (predicted_label == split.test_label[static_cast<std::size_t>(t)]) ++correct;
    }
    report.per_attr_accuracy[static_cast<Eigen::Index>(ai)] =
        static_cast<double>(correct) / static_cast<double>(n_test);
  });

  report.importance = importance_matrix(weights);
  const auto dis = disentanglement(report.importance);
  report.per_dim_d = dis.per_dim;
  report.rho = dis.rho;
  report.disentanglement = dis.total;

  const auto comp = completeness(report.importance);
  report.per_attr_c = comp.per_attribute;

  double c_sum = 0.0, i_sum = 0.0;
  int counted = 0;
  for (int ai = 0; ai < n_active; ++ai) {
    const bool zero_column = report.importance.col(ai).sum() == 0.0;
    const bool uninformative = report.per_attr_accuracy[ai] < params.min_accuracy;
    if (zero_column || uninformative) {
      report.excluded_attributes.push_back(report.active_attributes[static_cast<std::size_t>(ai)]);
      continue;
    }
    c_sum += report.per_attr_c[ai];
    i_sum += report.per_attr_accuracy[ai];
    ++counted;
  }
  report.completeness = counted > 0 ? c_sum / counted : 0.0;
  report.informativeness = counted > 0 ? i_sum / counted : 0.0;
  return report;
}

std::vector<DciReport> dci_compare(const generator::Generator& gen, const ImageBank& bank,
                                   const std::vector<Space>& spaces, const DciParams& params) {
  std::vector<DciReport> reports;
  bool wplus_requested = false;
  for (Space s : spaces) {
    if (s == Space::WPlus) {
      wplus_requested = true;
      continue;
    }
    reports.push_back(dci_run(bank, s, params));
  }
  if (wplus_requested) {
    // Separate experiment on its own image set, mirroring the two-table
    // protocol: W+ codes are concatenations of independent W samples.
    const std::uint64_t wplus_seed = numerics::splitmix64(bank.seed ^ 0x77706c7573ULL);
    const ImageBank wplus_bank =
        build_bank(gen, bank.config, testbed::AttributeModel(bank.attrs.basis(),
                                                             bank.attrs.specs()),
                   bank.n(), wplus_seed, testbed::Provenance::WPlus, params.threads);
    reports.push_back(dci_run(wplus_bank, Space::WPlus, params));
    reports.push_back(dci_run(wplus_bank, Space::S, params));
  }
  return reports;
}

}  // namespace stylescope::dci
