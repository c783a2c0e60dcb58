#pragma once

#include <cstdint>
#include <vector>

#include "stylescope/errors.hpp"

namespace stylescope::testbed {

// r x r grid of semantic category ids; categories partition the grid.
struct SemanticMask {
  int r = 0;
  int categories = 0;
  std::vector<std::int32_t> cells;  // row-major

  std::int32_t at(int y, int x) const { return cells[static_cast<std::size_t>(y) * r + x]; }
};

// Content-independent partition into tiles_side^2 square tiles.
SemanticMask tile_mask(int tiles_side, int r);

// Reduce a finer mask to r x r by the most abundant category per bin;
// ties resolve to the lowest category id.
SemanticMask reduce_mask(const SemanticMask& fine, int r);

// Procedural segmenter: the partition at grid size r for a generator whose
// output resolution is `native_r`. Either r divides native_r or vice versa.
SemanticMask segment(int tiles_side, int native_r, int r);

std::vector<int> category_sizes(const SemanticMask& mask);

}  // namespace stylescope::testbed
