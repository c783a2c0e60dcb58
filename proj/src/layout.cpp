#include "stylescope/generator/layout.hpp"

#include "stylescope/numerics/rng.hpp"

namespace stylescope::generator {

namespace {
bool power_of_two(int x) { return x > 0 && (x & (x - 1)) == 0; }
}  // namespace

StyleLayout StyleLayout::build(const std::vector<int>& resolutions,
                               const std::vector<int>& widths) {
  if (resolutions.empty()) throw ConfigError("layout: no resolutions given");
  if (resolutions.size() != widths.size())
    throw ConfigError("layout: resolutions and widths must have equal length");
  if (resolutions.front() < 4) throw ConfigError("layout: base resolution must be >= 4");
  for (std::size_t i = 0; i < resolutions.size(); ++i) {
    if (!power_of_two(resolutions[i]))
      throw ConfigError("layout: resolution " + std::to_string(resolutions[i]) +
                        " is not a power of two");
    if (widths[i] <= 0) throw ConfigError("layout: widths must be positive");
    if (i > 0 && resolutions[i] != 2 * resolutions[i - 1])
      throw ConfigError("layout: resolutions must double at each step");
  }

  StyleLayout out;
  out.resolutions_ = resolutions;
  out.widths_ = widths;
  int slot = 0;
  auto push = [&out](int res, LayerKind kind, int channels, int wslot) {
    LayerInfo info;
    info.index = static_cast<int>(out.layers_.size());
    info.resolution = res;
    info.kind = kind;
    info.channels = channels;
    info.wplus_slot = wslot;
    info.flat_offset = out.total_;
    out.layers_.push_back(info);
    out.total_ += channels;
    if (kind == LayerKind::TRgb)
      out.trgb_total_ += channels;
    else
      out.feature_total_ += channels;
  };

  for (std::size_t i = 0; i < resolutions.size(); ++i) {
    const int res = resolutions[i];
    const int width = widths[i];
    const int prev_width = i == 0 ? width : widths[i - 1];
    if (i == 0) {
      push(res, LayerKind::S1, prev_width, slot++);
      push(res, LayerKind::TRgb, width, slot++);
    } else {
      push(res, LayerKind::S1, prev_width, slot++);
      push(res, LayerKind::S2, width, slot);
      push(res, LayerKind::TRgb, width, slot++);
    }
  }
  out.slot_count_ = slot;
  return out;
}

int StyleLayout::flat_index(ChannelId id) const {
  if (!valid(id))
    throw ArgumentError("channel (" + std::to_string(id.layer) + "," +
                        std::to_string(id.channel) + ") outside layout");
  return layers_[static_cast<std::size_t>(id.layer)].flat_offset + id.channel;
}

ChannelId StyleLayout::channel_at(int flat) const {
  if (flat < 0 || flat >= total_) throw ArgumentError("flat style index outside layout");
  for (const auto& l : layers_)
    if (flat < l.flat_offset + l.channels) return {l.index, flat - l.flat_offset};
  throw ArgumentError("flat style index outside layout");
}

bool StyleLayout::is_trgb(int flat) const {
  return layer(channel_at(flat).layer).kind == LayerKind::TRgb;
}

bool StyleLayout::valid(ChannelId id) const {
  return id.layer >= 0 && id.layer < layer_count() && id.channel >= 0 &&
         id.channel < layer(id.layer).channels;
}

std::uint64_t StyleLayout::hash() const {
  std::uint64_t h = 0x5173c0de00000001ULL;
  auto mix = [&h](std::uint64_t x) { h = numerics::splitmix64(h ^ x); };
  for (std::size_t i = 0; i < resolutions_.size(); ++i) {
    mix(static_cast<std::uint64_t>(resolutions_[i]));
    mix(static_cast<std::uint64_t>(widths_[i]) << 32);
  }
  return h;
}

}  // namespace stylescope::generator
