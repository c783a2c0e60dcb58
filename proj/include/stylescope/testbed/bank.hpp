#pragma once

#include <optional>

#include "stylescope/generator/generator.hpp"
#include "stylescope/testbed/attributes.hpp"

namespace stylescope::testbed {

enum class Provenance { ZW, WPlus };

struct BankEntry {
  Eigen::VectorXd z;      // ZW banks
  Eigen::VectorXd w;      // ZW banks
  Eigen::MatrixXd wplus;  // WPlus banks, one row per W+ slot
  std::uint64_t noise_seed = 0;
  Eigen::VectorXd styles;
  Eigen::VectorXd logits;
};

struct BankStats {
  Eigen::VectorXd style_mean, style_std;  // population convention (divide by n)
  Eigen::VectorXd logit_mean, logit_std;
};

// Seeded corpus of generated samples with recorded latents, logits and
// population statistics. Images are not stored; they are exactly
// reproducible from (styles, noise_seed).
struct ImageBank {
  Provenance provenance = Provenance::ZW;
  std::uint64_t seed = 0;
  generator::GeneratorConfig config;
  std::uint64_t layout_hash = 0;
  AttributeModel attrs;
  std::vector<BankEntry> entries;
  BankStats stats;
  std::vector<int> constant_channels;  // flat channels with zero population std

  int n() const { return static_cast<int>(entries.size()); }
  int style_dim() const { return static_cast<int>(stats.style_mean.size()); }
  int attribute_count() const { return attrs.count(); }
};

std::uint64_t entry_noise_seed(std::uint64_t bank_seed, int index);

// Builds n entries, calibrates the attribute model on the corpus
// (tau = mean raw statistic, alpha = 1/std), and freezes population stats.
ImageBank build_bank(const generator::Generator& gen, const generator::GeneratorConfig& config,
                     const AttributeModel& attrs, int n, std::uint64_t seed,
                     Provenance provenance = Provenance::ZW, int threads = 1);

// Recompute the frozen statistics from the stored entries with the same
// deterministic two-pass procedure; must reproduce them bit-identically.
BankStats recompute_stats(const ImageBank& bank);

// Attributes with more than `threshold` positive and negative outcomes.
std::vector<int> filter_active_attributes(const ImageBank& bank, double threshold = 0.05);

struct ExtremeSplit {
  std::vector<int> train, test;          // bank entry indices
  std::vector<int> train_label, test_label;  // +1 attribute present (negative logit), -1 absent
};

// The most negative and most positive q-tails of attribute `a`, each split
// train/test by alternating extremity rank.
ExtremeSplit select_extremes(const ImageBank& bank, int a, double q = 0.02);

// Default attribute model for a generator (plan-aligned for planted).
AttributeModel default_attributes(const generator::Generator& gen, int tiles_side);

// Regenerate the image of one bank entry.
numerics::Tensor<double> bank_image(const generator::Generator& gen, const ImageBank& bank,
                                    int index);

}  // namespace stylescope::testbed
