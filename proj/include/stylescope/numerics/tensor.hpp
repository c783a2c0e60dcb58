#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "stylescope/errors.hpp"
#include "stylescope/numerics/dual.hpp"

namespace stylescope::numerics {

// Dense row-major tensor. Rank is dynamic; the synthesis code uses rank 3
// ([channels, height, width]) and rank 4 for convolution weights.
template <class T>
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::vector<int> shape)
      : shape_(std::move(shape)), data_(checked_size(shape_), T{}) {}
  Tensor(std::vector<int> shape, std::vector<T> data)
      : shape_(std::move(shape)), data_(std::move(data)) {
    if (checked_size(shape_) != static_cast<std::int64_t>(data_.size()))
      throw DimensionError("tensor data length does not match shape product");
  }

  static Tensor zeros(std::vector<int> shape) { return Tensor(std::move(shape)); }

  int rank() const { return static_cast<int>(shape_.size()); }
  int dim(int i) const { return shape_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& shape() const { return shape_; }
  std::int64_t size() const { return static_cast<std::int64_t>(data_.size()); }

  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }
  std::span<T> values() { return {data_.data(), data_.size()}; }
  std::span<const T> values() const { return {data_.data(), data_.size()}; }

  T& operator[](std::int64_t i) { return data_[static_cast<std::size_t>(i)]; }
  const T& operator[](std::int64_t i) const { return data_[static_cast<std::size_t>(i)]; }

  T& operator()(int y, int x) { return data_[static_cast<std::size_t>(y) * shape_[1] + x]; }
  const T& operator()(int y, int x) const {
    return data_[static_cast<std::size_t>(y) * shape_[1] + x];
  }
  T& operator()(int c, int y, int x) {
    return data_[(static_cast<std::size_t>(c) * shape_[1] + y) * shape_[2] + x];
  }
  const T& operator()(int c, int y, int x) const {
    return data_[(static_cast<std::size_t>(c) * shape_[1] + y) * shape_[2] + x];
  }
  T& operator()(int o, int i, int y, int x) {
    return data_[((static_cast<std::size_t>(o) * shape_[1] + i) * shape_[2] + y) * shape_[3] + x];
  }
  const T& operator()(int o, int i, int y, int x) const {
    return data_[((static_cast<std::size_t>(o) * shape_[1] + i) * shape_[2] + y) * shape_[3] + x];
  }

  bool same_shape(const Tensor& o) const { return shape_ == o.shape_; }

 private:
  static std::int64_t checked_size(const std::vector<int>& shape) {
    std::int64_t n = 1;
    for (int d : shape) {
      if (d < 0) throw DimensionError("negative tensor dimension");
      n *= d;
    }
    return n;
  }

  std::vector<int> shape_;
  std::vector<T> data_;
};

template <class T>
bool is_finite(const Tensor<T>& t) {
  for (const T& x : t.values())
    if (!std::isfinite(value_of(x))) return false;
  return true;
}

template <class T>
Tensor<double> values_of(const Tensor<T>& t) {
  Tensor<double> out(t.shape());
  for (std::int64_t i = 0; i < t.size(); ++i) out[i] = value_of(t[i]);
  return out;
}

inline Tensor<Dual> make_dual(const Tensor<double>& value, const Tensor<double>& tangent) {
  if (!value.same_shape(tangent))
    throw DimensionError("dual tensor: primal and tangent shapes differ");
  Tensor<Dual> out(value.shape());
  for (std::int64_t i = 0; i < value.size(); ++i) out[i] = Dual{value[i], tangent[i]};
  return out;
}

inline Tensor<double> tangents_of(const Tensor<Dual>& t) {
  Tensor<double> out(t.shape());
  for (std::int64_t i = 0; i < t.size(); ++i) out[i] = t[i].d;
  return out;
}

}  // namespace stylescope::numerics
