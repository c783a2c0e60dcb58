#pragma once

#include <optional>
#include <string>

#include "stylescope/testbed/bank.hpp"

namespace stylescope::manip {

using generator::ChannelId;
using generator::Generator;

// A manipulation axis: one style channel with a sign, a dense unit vector in
// StyleSpace, or a unit vector in W lifted through the affine maps.
struct Direction {
  enum class Kind { Channel, Style, W };
  Kind kind = Kind::Channel;
  ChannelId channel;
  double sign = 1.0;
  Eigen::VectorXd dense;
  std::string label;
};

Direction channel_direction(ChannelId channel, double sign, std::string label = "");
Direction style_direction(Eigen::VectorXd dense, std::string label = "");  // L2-normalized
Direction w_direction(Eigen::VectorXd dense, std::string label = "");      // L2-normalized

// A style point plus the W provenance needed for W-space directions.
struct ManipPoint {
  Eigen::VectorXd styles;
  std::optional<Eigen::VectorXd> w;
};

// StyleSpace directions move s by m * sigma-scaled direction (per-channel
// population std); W directions move w and re-derive s. Noise is untouched.
ManipPoint manipulate(const Generator& gen, const Eigen::VectorXd& style_std,
                      const ManipPoint& point, const Direction& dir, double m);

// Channel direction oriented so +m pushes the attribute's logit negative
// (toward presence), probed at the bank mean.
Direction oriented_channel_direction(const Generator& gen, const testbed::ImageBank& bank,
                                     int attr, ChannelId channel);

// W direction matched to an attribute: the normalized mean negative logit
// gradient in W over a probe subset of the bank.
Direction w_direction_for_attribute(const Generator& gen, const testbed::ImageBank& bank,
                                    int attr, int n_probes = 32);

}  // namespace stylescope::manip
