#include "stylescope/testbed/attributes.hpp"

namespace stylescope::testbed {

const char* stat_kind_name(StatKind k) {
  switch (k) {
    case StatKind::TileLuminance: return "tile_luminance";
    case StatKind::TileStripe: return "tile_stripe";
    case StatKind::TileBalance: return "tile_balance";
    case StatKind::TileFrequency: return "tile_frequency";
    default: return "global_balance";
  }
}

StatKind stat_kind_from(const std::string& name) {
  if (name == "tile_luminance") return StatKind::TileLuminance;
  if (name == "tile_stripe") return StatKind::TileStripe;
  if (name == "tile_balance") return StatKind::TileBalance;
  if (name == "tile_frequency") return StatKind::TileFrequency;
  if (name == "global_balance") return StatKind::GlobalBalance;
  throw ConfigError("unknown attribute statistic kind: " + name);
}

AttributeModel::AttributeModel(TileBasis basis, std::vector<AttributeSpec> specs)
    : basis_(std::move(basis)), specs_(std::move(specs)) {
  for (const auto& s : specs_)
    if (s.kind != StatKind::GlobalBalance && (s.tile < 0 || s.tile >= basis_.tiles()))
      throw ConfigError("attribute spec references tile outside the grid");
  tau_ = Eigen::VectorXd::Zero(count());
  alpha_ = Eigen::VectorXd::Ones(count());
}

AttributeModel AttributeModel::for_plan(const TileBasis& basis,
                                        const std::vector<generator::PlantedPlanEntry>& plan) {
  std::vector<AttributeSpec> specs;
  for (const auto& entry : plan) {
    AttributeSpec s;
    s.tile = entry.tile;
    switch (entry.kind) {
      case generator::PlantedKind::TileColor: s.kind = StatKind::TileLuminance; break;
      case generator::PlantedKind::TileStripe: s.kind = StatKind::TileStripe; break;
      case generator::PlantedKind::TileBalance: s.kind = StatKind::TileBalance; break;
      case generator::PlantedKind::TileFrequency: s.kind = StatKind::TileFrequency; break;
    }
    s.name = std::string(stat_kind_name(s.kind)) + "_t" + std::to_string(s.tile);
    specs.push_back(std::move(s));
  }
  return AttributeModel(basis, std::move(specs));
}

AttributeModel AttributeModel::synthesis_default(const TileBasis& basis) {
  std::vector<AttributeSpec> specs;
  for (int t = 0; t < basis.tiles(); ++t)
    specs.push_back({"tile_luminance_t" + std::to_string(t), StatKind::TileLuminance, t});
  for (int t = 0; t < basis.tiles(); ++t)
    specs.push_back({"tile_stripe_t" + std::to_string(t), StatKind::TileStripe, t});
  specs.push_back({"global_balance", StatKind::GlobalBalance, -1});
  return AttributeModel(basis, std::move(specs));
}

void AttributeModel::set_calibration(Eigen::VectorXd tau, Eigen::VectorXd alpha) {
  if (tau.size() != count() || alpha.size() != count())
    throw DimensionError("attribute calibration length mismatch");
  tau_ = std::move(tau);
  alpha_ = std::move(alpha);
  calibrated_ = true;
}

}  // namespace stylescope::testbed
