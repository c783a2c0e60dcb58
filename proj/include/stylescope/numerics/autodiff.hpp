#pragma once

#include <utility>

#include <Eigen/Core>

#include "stylescope/numerics/dual.hpp"
#include "stylescope/numerics/tensor.hpp"

namespace stylescope::numerics {

template <class T>
using VecX = Eigen::Matrix<T, Eigen::Dynamic, 1>;

inline VecX<Dual> make_dual(const Eigen::VectorXd& value, const Eigen::VectorXd& tangent) {
  if (value.size() != tangent.size())
    throw DimensionError("dual vector: primal and tangent lengths differ");
  VecX<Dual> out(value.size());
  for (Eigen::Index i = 0; i < value.size(); ++i) out[i] = Dual{value[i], tangent[i]};
  return out;
}

inline std::pair<Tensor<double>, Tensor<double>> split_dual(const Tensor<Dual>& t) {
  return {values_of(t), tangents_of(t)};
}
inline std::pair<Eigen::VectorXd, Eigen::VectorXd> split_dual(const VecX<Dual>& v) {
  Eigen::VectorXd p(v.size()), t(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    p[i] = v[i].v;
    t[i] = v[i].d;
  }
  return {p, t};
}
inline std::pair<double, double> split_dual(const Dual& d) { return {d.v, d.d}; }

// Forward-mode directional derivative: returns (f(x), D_v f(x)).
// `f` must be callable on both plain and dual-valued inputs.
template <class F, class X>
auto jvp(F&& f, const X& x, const X& v) {
  return split_dual(f(make_dual(x, v)));
}

namespace detail {
inline Tensor<double> axpy(const Tensor<double>& x, double a, const Tensor<double>& y) {
  Tensor<double> out(x.shape());
  for (std::int64_t i = 0; i < x.size(); ++i) out[i] = x[i] + a * y[i];
  return out;
}
inline Eigen::VectorXd axpy(const Eigen::VectorXd& x, double a, const Eigen::VectorXd& y) {
  return x + a * y;
}
inline Tensor<double> scaled_diff(const Tensor<double>& a, const Tensor<double>& b, double s) {
  Tensor<double> out(a.shape());
  for (std::int64_t i = 0; i < a.size(); ++i) out[i] = (a[i] - b[i]) * s;
  return out;
}
inline Eigen::VectorXd scaled_diff(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double s) {
  return (a - b) * s;
}
inline double scaled_diff(double a, double b, double s) { return (a - b) * s; }
}  // namespace detail

// Central-difference oracle for jvp: (f(x + h v) - f(x - h v)) / (2h).
template <class F, class X>
auto finite_difference(F&& f, const X& x, const X& v, double h) {
  if (!(h > 0.0)) throw ArgumentError("finite_difference: h must be positive");
  return detail::scaled_diff(f(detail::axpy(x, h, v)), f(detail::axpy(x, -h, v)), 0.5 / h);
}

// Full gradient of a scalar-valued pipeline by forward sweeps over the input
// dimensions, N tangent lanes at a time. Returns (f(x), grad f(x)).
template <int N, class F>
std::pair<double, Eigen::VectorXd> value_and_gradient(F&& f, const Eigen::VectorXd& x) {
  const auto dims = static_cast<int>(x.size());
  Eigen::VectorXd grad(dims);
  double value = 0.0;
  for (int base = 0; base < dims; base += N) {
    VecX<DualPack<N>> in(dims);
    for (int i = 0; i < dims; ++i) in[i] = DualPack<N>(x[i]);
    const int lanes = std::min(N, dims - base);
    for (int l = 0; l < lanes; ++l) in[base + l].d[l] = 1.0;
    const DualPack<N> out = f(in);
    if (base == 0) value = out.v;
    for (int l = 0; l < lanes; ++l) grad[base + l] = out.d[l];
  }
  return {value, grad};
}

}  // namespace stylescope::numerics
