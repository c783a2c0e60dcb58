#pragma once

#include <string>

#include "stylescope/numerics/tensor.hpp"

namespace stylescope::numerics {

// Cross-correlation of input [C_in, H, W] with weights [C_out, C_in, k, k].
// Zero padding; shape-preserving when padding == (k-1)/2.
template <class Tw, class Tx>
auto conv2d(const Tensor<Tx>& input, const Tensor<Tw>& weights, int padding)
    -> Tensor<decltype(Tw{} * Tx{})> {
  using R = decltype(Tw{} * Tx{});
  if (input.rank() != 3) throw DimensionError("conv2d: input rank must be 3 [C,H,W]");
  if (weights.rank() != 4) throw DimensionError("conv2d: weights rank must be 4 [O,I,k,k]");
  const int c_in = input.dim(0), h = input.dim(1), w = input.dim(2);
  const int c_out = weights.dim(0), k = weights.dim(3);
  if (weights.dim(1) != c_in)
    throw DimensionError("conv2d: weight input-channel axis is " + std::to_string(weights.dim(1)) +
                         ", input channel axis is " + std::to_string(c_in));
  if (weights.dim(2) != k) throw DimensionError("conv2d: kernel must be square on axes 2,3");
  if (k % 2 != 1) throw DimensionError("conv2d: kernel size must be odd, got axis 3 = " +
                                       std::to_string(k));
  const int h_out = h - k + 1 + 2 * padding;
  const int w_out = w - k + 1 + 2 * padding;
  if (h_out <= 0 || w_out <= 0) throw DimensionError("conv2d: output axis collapsed to <= 0");

  Tensor<R> out({c_out, h_out, w_out});
  for (int o = 0; o < c_out; ++o) {
    for (int i = 0; i < c_in; ++i) {
      for (int ky = 0; ky < k; ++ky) {
        for (int kx = 0; kx < k; ++kx) {
          const Tw wgt = weights(o, i, ky, kx);
          const int y0 = std::max(0, padding - ky);
          const int y1 = std::min(h_out, h + padding - ky);
          const int x0 = std::max(0, padding - kx);
          const int x1 = std::min(w_out, w + padding - kx);
          for (int y = y0; y < y1; ++y) {
            const Tx* src = &input(i, y + ky - padding, x0 + kx - padding);
            R* dst = &out(o, y, x0);
            for (int x = x0; x < x1; ++x) dst[x - x0] += wgt * src[x - x0];
          }
        }
      }
    }
  }
  return out;
}

template <class T>
Tensor<T> upsample_nearest(const Tensor<T>& input, int factor) {
  const int c = input.dim(0), h = input.dim(1), w = input.dim(2);
  Tensor<T> out({c, h * factor, w * factor});
  for (int ch = 0; ch < c; ++ch)
    for (int y = 0; y < h * factor; ++y)
      for (int x = 0; x < w * factor; ++x) out(ch, y, x) = input(ch, y / factor, x / factor);
  return out;
}

// Bilinear with half-pixel centers, edge-clamped.
template <class T>
Tensor<T> upsample_bilinear(const Tensor<T>& input, int factor) {
  const int c = input.dim(0), h = input.dim(1), w = input.dim(2);
  const int ho = h * factor, wo = w * factor;
  Tensor<T> out({c, ho, wo});
  const double inv = 1.0 / factor;
  for (int y = 0; y < ho; ++y) {
    const double sy = (y + 0.5) * inv - 0.5;
    int y0 = static_cast<int>(std::floor(sy));
    const double fy = sy - y0;
    int y1 = std::min(y0 + 1, h - 1);
    y0 = std::max(y0, 0);
    for (int x = 0; x < wo; ++x) {
      const double sx = (x + 0.5) * inv - 0.5;
      int x0 = static_cast<int>(std::floor(sx));
      const double fx = sx - x0;
      int x1 = std::min(x0 + 1, w - 1);
      x0 = std::max(x0, 0);
      const double w00 = (1.0 - fy) * (1.0 - fx), w01 = (1.0 - fy) * fx;
      const double w10 = fy * (1.0 - fx), w11 = fy * fx;
      for (int ch = 0; ch < c; ++ch)
        out(ch, y, x) = w00 * input(ch, y0, x0) + w01 * input(ch, y0, x1) +
                        w10 * input(ch, y1, x0) + w11 * input(ch, y1, x1);
    }
  }
  return out;
}

// Average-pool an [H, W] grid down to [r, r]; H must be a multiple of r.
template <class T>
Tensor<T> average_pool_to(const Tensor<T>& grid, int r) {
  const int h = grid.dim(0), w = grid.dim(1);
  if (h % r != 0 || w % r != 0)
    throw DimensionError("average_pool_to: grid axis 0 = " + std::to_string(h) +
                         " is not a multiple of " + std::to_string(r));
  const int fy = h / r, fx = w / r;
  const double inv = 1.0 / (fy * fx);
  Tensor<T> out({r, r});
  for (int y = 0; y < r; ++y)
    for (int x = 0; x < r; ++x) {
      T acc{};
      for (int dy = 0; dy < fy; ++dy)
        for (int dx = 0; dx < fx; ++dx) acc += grid(y * fy + dy, x * fx + dx);
      out(y, x) = acc * inv;
    }
  return out;
}

}  // namespace stylescope::numerics
