#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stylescope/errors.hpp"

namespace stylescope::generator {

enum class LayerKind { S1, S2, TRgb };

inline const char* kind_name(LayerKind k) {
  switch (k) {
    case LayerKind::S1: return "s1";
    case LayerKind::S2: return "s2";
    default: return "tRGB";
  }
}

// One StyleSpace dimension: (layer index, channel index within layer).
struct ChannelId {
  int layer = 0;
  int channel = 0;
  friend bool operator==(const ChannelId&, const ChannelId&) = default;
  friend auto operator<=>(const ChannelId&, const ChannelId&) = default;
};

struct LayerInfo {
  int index = 0;       // StyleSpace layer index
  int resolution = 0;  // spatial resolution of the modulated conv
  LayerKind kind = LayerKind::S1;
  int channels = 0;    // style vector length = conv input channels
  int wplus_slot = 0;  // which W+ row feeds this layer's affine map
  int flat_offset = 0; // offset of this layer's block in the flat style vector
};

// Per-layer breakdown of the style parameterization. Every resolution
// contributes s1, s2 and tRGB blocks except the base resolution, which has
// no second conv. The W+ slot assignment follows the reference pattern:
// the base resolution uses one slot for s1 and one for tRGB; every higher
// resolution uses one slot for s1 and a shared slot for s2 + tRGB. The same
// per-resolution pattern is applied to every configuration size.
class StyleLayout {
 public:
  StyleLayout() = default;

  // `resolutions` must be consecutive powers of two starting at >= 4;
  // `widths[i]` is the feature-map channel count at resolutions[i].
  static StyleLayout build(const std::vector<int>& resolutions, const std::vector<int>& widths);

  const std::vector<LayerInfo>& layers() const { return layers_; }
  const LayerInfo& layer(int i) const { return layers_[static_cast<std::size_t>(i)]; }
  int layer_count() const { return static_cast<int>(layers_.size()); }
  int total_channels() const { return total_; }
  int feature_channels() const { return feature_total_; }
  int trgb_channels() const { return trgb_total_; }
  int slot_count() const { return slot_count_; }
  int resolution_count() const { return static_cast<int>(resolutions_.size()); }
  const std::vector<int>& resolutions() const { return resolutions_; }
  const std::vector<int>& widths() const { return widths_; }
  int output_resolution() const { return resolutions_.back(); }

  int flat_index(ChannelId id) const;
  ChannelId channel_at(int flat) const;
  bool is_trgb(int flat) const;
  bool valid(ChannelId id) const;

  // Stable identifier over (resolutions, widths); guards serialized data
  // against being loaded with a mismatched layout.
  std::uint64_t hash() const;

 private:
  std::vector<LayerInfo> layers_;
  std::vector<int> resolutions_;
  std::vector<int> widths_;
  int total_ = 0;
  int feature_total_ = 0;
  int trgb_total_ = 0;
  int slot_count_ = 0;
};

}  // namespace stylescope::generator
