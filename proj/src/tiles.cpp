#include "stylescope/testbed/tiles.hpp"

#include <cmath>

#include "stylescope/errors.hpp"

namespace stylescope::testbed {

namespace {
Tensor<double> make_carrier(const TileRect& rect, int frequency, bool horizontal) {
  Tensor<double> patch({rect.h, rect.w});
  const double tau = 6.283185307179586476925286766559;
  for (int y = 0; y < rect.h; ++y)
    for (int x = 0; x < rect.w; ++x) {
      const double p = horizontal ? (y + 0.5) / rect.h : (x + 0.5) / rect.w;
      patch(y, x) = std::cos(tau * frequency * p);
    }
  return patch;
}
}  // namespace

TileBasis::TileBasis(int resolution, int tiles_side)
    : resolution_(resolution), tiles_side_(tiles_side) {
  if (tiles_side <= 0) throw ConfigError("tile basis: tiles_side must be positive");
  if (resolution % tiles_side != 0)
    throw ConfigError("tile basis: tiles_side must divide the resolution");
  const int tw = resolution / tiles_side;
  for (int ty = 0; ty < tiles_side; ++ty)
    for (int tx = 0; tx < tiles_side; ++tx) {
      TileRect r{tx * tw, ty * tw, tw, tw};
      const bool horizontal = ((ty * tiles_side + tx) % 2) == 0;
      carrier_.push_back(make_carrier(r, kBaseFrequency, horizontal));
      carrier_lo_.push_back(make_carrier(r, kBaseFrequency - 1, horizontal));
      carrier_hi_.push_back(make_carrier(r, kBaseFrequency + 1, horizontal));
      rects_.push_back(r);
    }
}

}  // namespace stylescope::testbed
