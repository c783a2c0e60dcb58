#pragma once

#include <vector>

#include "stylescope/numerics/tensor.hpp"

namespace stylescope::testbed {

using numerics::Tensor;

struct TileRect {
  int x0 = 0, y0 = 0, w = 0, h = 0;
  int pixels() const { return w * h; }
};

// Fixed spatial partition of the image plane into tiles_side^2 square tiles,
// with a per-tile stripe carrier and its two frequency-shifted companions.
// Carriers use integer frequencies and half-sample phase, so each one sums
// to exactly zero over its tile and has squared sum exactly |tile|/2; that
// keeps tile-mean and stripe statistics exactly orthogonal.
class TileBasis {
 public:
  TileBasis() = default;
  TileBasis(int resolution, int tiles_side);

  int resolution() const { return resolution_; }
  int tiles_side() const { return tiles_side_; }
  int tiles() const { return tiles_side_ * tiles_side_; }
  const TileRect& rect(int tile) const { return rects_[static_cast<std::size_t>(tile)]; }
  int tile_of(int y, int x) const {
    return (y / rects_[0].h) * tiles_side_ + (x / rects_[0].w);
  }

  // Carrier patch values, indexed by in-tile coordinates.
  const Tensor<double>& carrier(int tile) const { return carrier_[static_cast<std::size_t>(tile)]; }
  const Tensor<double>& carrier_lo(int tile) const {
    return carrier_lo_[static_cast<std::size_t>(tile)];
  }
  const Tensor<double>& carrier_hi(int tile) const {
    return carrier_hi_[static_cast<std::size_t>(tile)];
  }

  static constexpr int kBaseFrequency = 3;

 private:
  int resolution_ = 0;
  int tiles_side_ = 0;
  std::vector<TileRect> rects_;
  std::vector<Tensor<double>> carrier_;
  std::vector<Tensor<double>> carrier_lo_;
  std::vector<Tensor<double>> carrier_hi_;
};

}  // namespace stylescope::testbed
