#include "stylescope/testbed/bank.hpp"

#include "stylescope/numerics/parallel.hpp"
#include "stylescope/numerics/stats.hpp"

namespace stylescope::testbed {

using generator::Generator;
using generator::GeneratorConfig;

std::uint64_t entry_noise_seed(std::uint64_t bank_seed, int index) {
  return numerics::splitmix64(bank_seed ^
                              numerics::splitmix64(0x6e6f697365ULL + static_cast<std::uint64_t>(index)));
}

namespace {

// Deterministic two-pass mean/std over entry vectors, population convention.
void two_pass_stats(const std::vector<BankEntry>& entries,
                    const Eigen::VectorXd BankEntry::*field, Eigen::VectorXd& mean,
                    Eigen::VectorXd& std) {
  const auto n = static_cast<double>(entries.size());
  const Eigen::Index dim = (entries.front().*field).size();
  mean = Eigen::VectorXd::Zero(dim);
  for (const auto& e : entries) mean += e.*field;
  mean /= n;
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(dim);
  for (const auto& e : entries) {
    const Eigen::VectorXd d = e.*field - mean;
    acc += d.cwiseProduct(d);
  }
  std = (acc / n).cwiseSqrt();
}

}  // namespace

ImageBank build_bank(const Generator& gen, const GeneratorConfig& config,
                     const AttributeModel& attrs, int n, std::uint64_t seed,
                     Provenance provenance, int threads) {
  if (n < 2) throw ArgumentError("build_bank: need at least two samples");
  const auto& layout = generator::layout_of(gen);
  const auto& mapper = generator::mapper_of(gen);

  ImageBank bank;
  bank.provenance = provenance;
  bank.seed = seed;
  bank.config = config;
  bank.layout_hash = layout.hash();
  bank.attrs = attrs;
  bank.entries.resize(static_cast<std::size_t>(n));

  // Raw statistics per entry, calibrated into logits after the sweep.
  Eigen::MatrixXd raw(n, attrs.count());
  numerics::parallel_for(n, threads, [&](std::int64_t i) {
    BankEntry& e = bank.entries[static_cast<std::size_t>(i)];
    numerics::Rng rng(seed, static_cast<std::uint64_t>(i));
    if (provenance == Provenance::ZW) {
      e.z = mapper.sample_z(rng);
      e.w = mapper.map_z_to_w<double>(e.z);
      e.styles = generator::styles_from_w(gen, e.w);
    } else {
      const auto rows = mapper.sample_wplus(rng, layout.slot_count());
      e.wplus.resize(layout.slot_count(), mapper.latent_dim());
      std::vector<numerics::VecX<double>> slots;
      for (int s = 0; s < layout.slot_count(); ++s) {
        e.wplus.row(s) = rows[static_cast<std::size_t>(s)].transpose();
        slots.push_back(rows[static_cast<std::size_t>(s)]);
      }
      e.styles = generator::styles_from_slots(gen, slots);
    }
    e.noise_seed = entry_noise_seed(seed, static_cast<int>(i));
    const auto image = generator::synthesize<double>(gen, e.styles,
                                                     generator::make_noise(gen, e.noise_seed));
    if (!numerics::is_finite(image)) throw DataError("bank: non-finite image");
    for (int a = 0; a < attrs.count(); ++a)
      raw(static_cast<Eigen::Index>(i), a) = bank.attrs.raw_stat(a, image);
  });

  // Calibrate: tau at the corpus mean, alpha = 1/std, so logits have mean 0
  // and unit scale on this bank.
  Eigen::VectorXd tau(attrs.count()), alpha(attrs.count());
  for (int a = 0; a < attrs.count(); ++a) {
    const double m = raw.col(a).mean();
    const double sd = std::sqrt((raw.col(a).array() - m).square().mean());
    tau[a] = m;
    alpha[a] = 1.0 / std::max(sd, 1e-9);
  }
  bank.attrs.set_calibration(tau, alpha);
  for (int i = 0; i < n; ++i) {
    BankEntry& e = bank.entries[static_cast<std::size_t>(i)];
    e.logits = alpha.cwiseProduct(tau - raw.row(i).transpose());
    if (!e.logits.allFinite()) throw DataError("bank: non-finite logits");
  }

  bank.stats = recompute_stats(bank);
  for (int c = 0; c < bank.style_dim(); ++c)
    if (bank.stats.style_std[c] == 0.0) bank.constant_channels.push_back(c);
  return bank;
}

BankStats recompute_stats(const ImageBank& bank) {
  BankStats stats;
  two_pass_stats(bank.entries, &BankEntry::styles, stats.style_mean, stats.style_std);
  two_pass_stats(bank.entries, &BankEntry::logits, stats.logit_mean, stats.logit_std);
  return stats;
}

std::vector<int> filter_active_attributes(const ImageBank& bank, double threshold) {
  if (bank.entries.empty()) throw ArgumentError("filter_active_attributes: empty bank");
  std::vector<int> active;
  const auto n = static_cast<double>(bank.n());
  for (int a = 0; a < bank.attribute_count(); ++a) {
    int neg = 0, pos = 0;
    for (const auto& e : bank.entries) {
      if (e.logits[a] < 0.0) ++neg;
      if (e.logits[a] > 0.0) ++pos;
    }
    if (neg / n > threshold && pos / n > threshold) active.push_back(a);
  }
  return active;
}

ExtremeSplit select_extremes(const ImageBank& bank, int a, double q) {
  const int n = bank.n();
  const auto count = static_cast<int>(std::floor(n * q + 1e-12));
  if (count < 1)
    throw ArgumentError("select_extremes: bank too small for the requested quantile");
  std::vector<double> logits(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) logits[static_cast<std::size_t>(i)] = bank.entries[i].logits[a];
  const auto order = numerics::argsort_ascending(logits);

  ExtremeSplit split;
  auto emit = [&](int rank, int index, int label) {
    if (rank % 2 == 0) {
      split.train.push_back(index);
      split.train_label.push_back(label);
    } else {
      split.test.push_back(index);
      split.test_label.push_back(label);
    }
  };
  for (int r = 0; r < count; ++r) emit(r, order[static_cast<std::size_t>(r)], +1);
  for (int r = 0; r < count; ++r)
    emit(r, order[static_cast<std::size_t>(n - 1 - r)], -1);
  return split;
}

AttributeModel default_attributes(const Generator& gen, int tiles_side) {
  const TileBasis basis(generator::resolution_of(gen), tiles_side);
  if (const auto* planted = std::get_if<generator::PlantedGenerator>(&gen)) {
    std::vector<generator::PlantedPlanEntry> plan;
    for (const auto& pc : planted->truth().channels) plan.push_back({pc.tile, pc.kind});
    return AttributeModel::for_plan(planted->basis(), plan);
  }
  return AttributeModel::synthesis_default(basis);
}

numerics::Tensor<double> bank_image(const Generator& gen, const ImageBank& bank, int index) {
  const BankEntry& e = bank.entries[static_cast<std::size_t>(index)];
  return generator::synthesize<double>(gen, e.styles, generator::make_noise(gen, e.noise_seed));
}

}  // namespace stylescope::testbed
