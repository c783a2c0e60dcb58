#include "stylescope/testbed/segment.hpp"

namespace stylescope::testbed {

SemanticMask tile_mask(int tiles_side, int r) {
  if (tiles_side <= 0 || r <= 0 || r % tiles_side != 0)
    throw ArgumentError("tile_mask: tiles_side must divide r");
  SemanticMask mask;
  mask.r = r;
  mask.categories = tiles_side * tiles_side;
  mask.cells.resize(static_cast<std::size_t>(r) * r);
  const int tw = r / tiles_side;
  for (int y = 0; y < r; ++y)
    for (int x = 0; x < r; ++x)
      mask.cells[static_cast<std::size_t>(y) * r + x] =
          (y / tw) * tiles_side + (x / tw);
  return mask;
}

SemanticMask reduce_mask(const SemanticMask& fine, int r) {
  if (fine.r % r != 0)
    throw ArgumentError("reduce_mask: target grid must divide the native grid");
  const int f = fine.r / r;
  SemanticMask out;
  out.r = r;
  out.categories = fine.categories;
  out.cells.resize(static_cast<std::size_t>(r) * r);
  std::vector<int> histogram(static_cast<std::size_t>(fine.categories));
  for (int y = 0; y < r; ++y)
    for (int x = 0; x < r; ++x) {
      std::fill(histogram.begin(), histogram.end(), 0);
      for (int dy = 0; dy < f; ++dy)
        for (int dx = 0; dx < f; ++dx)
          ++histogram[static_cast<std::size_t>(fine.at(y * f + dy, x * f + dx))];
      int best = 0;
      for (int c = 1; c < fine.categories; ++c)
        if (histogram[static_cast<std::size_t>(c)] > histogram[static_cast<std::size_t>(best)])
          best = c;
      out.cells[static_cast<std::size_t>(y) * r + x] = best;
    }
  return out;
}

SemanticMask segment(int tiles_side, int native_r, int r) {
  if (native_r == r) return tile_mask(tiles_side, r);
  if (native_r > r) {
    if (native_r % r != 0) throw ArgumentError("segment: r must divide the native resolution");
    return reduce_mask(tile_mask(tiles_side, native_r), r);
  }
  if (r % native_r != 0) throw ArgumentError("segment: native resolution must divide r");
  return tile_mask(tiles_side, r);
}

std::vector<int> category_sizes(const SemanticMask& mask) {
  std::vector<int> sizes(static_cast<std::size_t>(mask.categories));
  for (std::int32_t c : mask.cells) ++sizes[static_cast<std::size_t>(c)];
  return sizes;
}

}  // namespace stylescope::testbed
