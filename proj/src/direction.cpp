#include "stylescope/manip/direction.hpp"

#include "stylescope/numerics/autodiff.hpp"

namespace stylescope::manip {

Direction channel_direction(ChannelId channel, double sign, std::string label) {
  Direction d;
  d.kind = Direction::Kind::Channel;
  d.channel = channel;
  d.sign = sign >= 0.0 ? 1.0 : -1.0;
  d.label = label.empty() ? "channel_" + std::to_string(channel.layer) + "_" +
                                std::to_string(channel.channel)
                          : std::move(label);
  return d;
}

Direction style_direction(Eigen::VectorXd dense, std::string label) {
  const double norm = dense.norm();
  if (norm == 0.0) throw ArgumentError("style_direction: zero vector");
  Direction d;
  d.kind = Direction::Kind::Style;
  d.dense = dense / norm;
  d.label = label.empty() ? "style_dense" : std::move(label);
  return d;
}

Direction w_direction(Eigen::VectorXd dense, std::string label) {
  const double norm = dense.norm();
  if (norm == 0.0) throw ArgumentError("w_direction: zero vector");
  Direction d;
  d.kind = Direction::Kind::W;
  d.dense = dense / norm;
  d.label = label.empty() ? "w_dense" : std::move(label);
  return d;
}

ManipPoint manipulate(const Generator& gen, const Eigen::VectorXd& style_std,
                      const ManipPoint& point, const Direction& dir, double m) {
  const auto& layout = generator::layout_of(gen);
  switch (dir.kind) {
    case Direction::Kind::Channel: {
      if (!layout.valid(dir.channel)) throw ArgumentError("manipulate: channel outside layout");
      const int flat = layout.flat_index(dir.channel);
      ManipPoint out = point;
      out.styles[flat] += m * dir.sign * style_std[flat];
      return out;
    }
    case Direction::Kind::Style: {
      if (dir.dense.size() != layout.total_channels())
        throw DimensionError("manipulate: style direction length mismatch");
      ManipPoint out = point;
      out.styles += m * style_std.cwiseProduct(dir.dense);
      return out;
    }
    case Direction::Kind::W: {
      if (!point.w) throw ArgumentError("manipulate: W direction needs W provenance");
      if (dir.dense.size() != point.w->size())
        throw DimensionError("manipulate: W direction length mismatch");
      ManipPoint out;
      out.w = *point.w + m * dir.dense;
      out.styles = generator::styles_from_w(gen, *out.w);
      return out;
    }
  }
  throw ArgumentError("manipulate: unknown direction kind");
}

Direction oriented_channel_direction(const Generator& gen, const testbed::ImageBank& bank,
                                     int attr, ChannelId channel) {
  const auto& layout = generator::layout_of(gen);
  const int flat = layout.flat_index(channel);
  // Probe the logit slope at the first bank entry along the channel.
  const auto& entry = bank.entries.front();
  const auto noise = generator::make_noise(gen, entry.noise_seed);
  auto logit = [&](const auto& styles) {
    return bank.attrs.logits(generator::synthesize(gen, styles, noise))[attr];
  };
  Eigen::VectorXd v = Eigen::VectorXd::Zero(layout.total_channels());
  v[flat] = 1.0;
  const auto [value, slope] = numerics::jvp(logit, Eigen::VectorXd(entry.styles), v);
  (void)value;
  return channel_direction(channel, slope < 0.0 ? 1.0 : -1.0);
}

Direction w_direction_for_attribute(const Generator& gen, const testbed::ImageBank& bank,
                                    int attr, int n_probes) {
  if (bank.provenance != testbed::Provenance::ZW)
    throw DataError("w_direction_for_attribute: bank lacks W provenance");
  const int d = static_cast<int>(bank.entries.front().w.size());
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(d);
  const int probes = std::min<int>(n_probes, bank.n());
  for (int i = 0; i < probes; ++i) {
    const auto& entry = bank.entries[static_cast<std::size_t>(i)];
    const auto noise = generator::make_noise(gen, entry.noise_seed);
    auto logit_of_w = [&](const auto& w) {
      return bank.attrs.logits(
          generator::synthesize(gen, generator::styles_from_w(gen, w), noise))[attr];
    };
    const auto [value, grad] = numerics::value_and_gradient<8>(logit_of_w, entry.w);
    (void)value;
    acc -= grad;  // toward presence: push the logit negative
  }
  return w_direction(acc, "w_attr_" + std::to_string(attr));
}

}  // namespace stylescope::manip
