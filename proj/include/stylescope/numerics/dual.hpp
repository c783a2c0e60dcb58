#pragma once

#include <Eigen/Core>
#include <cmath>

namespace stylescope::numerics {

// First-order dual number: value plus one directional tangent.
// f(a + eps b) = f(a) + eps b f'(a)
struct Dual {
  double v = 0.0;
  double d = 0.0;

  constexpr Dual() = default;
  constexpr Dual(double value) : v(value) {}
  constexpr Dual(double value, double tangent) : v(value), d(tangent) {}

  Dual& operator+=(const Dual& o) {
    v += o.v;
    d += o.d;
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    v -= o.v;
    d -= o.d;
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    d = v * o.d + d * o.v;
    v *= o.v;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    const double inv = 1.0 / o.v;
    const double q = v * inv;
    d = (d - q * o.d) * inv;
    v = q;
    return *this;
  }
};

constexpr Dual operator+(Dual a, const Dual& b) { return {a.v + b.v, a.d + b.d}; }
constexpr Dual operator-(Dual a, const Dual& b) { return {a.v - b.v, a.d - b.d}; }
constexpr Dual operator-(const Dual& a) { return {-a.v, -a.d}; }
constexpr Dual operator*(const Dual& a, const Dual& b) {
  return {a.v * b.v, a.v * b.d + a.d * b.v};
}
inline Dual operator/(const Dual& a, const Dual& b) {
  const double inv = 1.0 / b.v;
  const double q = a.v * inv;
  return {q, (a.d - q * b.d) * inv};
}

constexpr Dual operator+(const Dual& a, double b) { return {a.v + b, a.d}; }
constexpr Dual operator+(double a, const Dual& b) { return {a + b.v, b.d}; }
constexpr Dual operator-(const Dual& a, double b) { return {a.v - b, a.d}; }
constexpr Dual operator-(double a, const Dual& b) { return {a - b.v, -b.d}; }
constexpr Dual operator*(const Dual& a, double b) { return {a.v * b, a.d * b}; }
constexpr Dual operator*(double a, const Dual& b) { return {a * b.v, a * b.d}; }
inline Dual operator/(const Dual& a, double b) { return {a.v / b, a.d / b}; }
inline Dual operator/(double a, const Dual& b) {
  const double inv = 1.0 / b.v;
  const double q = a * inv;
  return {q, -q * b.d * inv};
}

constexpr bool operator<(const Dual& a, const Dual& b) { return a.v < b.v; }
constexpr bool operator>(const Dual& a, const Dual& b) { return a.v > b.v; }
constexpr bool operator<=(const Dual& a, const Dual& b) { return a.v <= b.v; }
constexpr bool operator>=(const Dual& a, const Dual& b) { return a.v >= b.v; }
constexpr bool operator==(const Dual& a, const Dual& b) { return a.v == b.v; }
constexpr bool operator!=(const Dual& a, const Dual& b) { return a.v != b.v; }

inline Dual sqrt(const Dual& a) {
  const double s = std::sqrt(a.v);
  return {s, a.d / (2.0 * s)};
}
inline Dual exp(const Dual& a) {
  const double e = std::exp(a.v);
  return {e, a.d * e};
}
inline Dual log(const Dual& a) { return {std::log(a.v), a.d / a.v}; }
inline Dual tanh(const Dual& a) {
  const double t = std::tanh(a.v);
  return {t, a.d * (1.0 - t * t)};
}
inline Dual sin(const Dual& a) { return {std::sin(a.v), a.d * std::cos(a.v)}; }
inline Dual cos(const Dual& a) { return {std::cos(a.v), -a.d * std::sin(a.v)}; }
inline Dual abs(const Dual& a) { return a.v < 0.0 ? Dual{-a.v, -a.d} : a; }

// Fixed-width tangent bundle: one value carrying N simultaneous tangents.
// Used to sweep a Jacobian in ceil(dims/N) forward passes; the per-lane
// arithmetic vectorizes.
template <int N>
struct DualPack {
  using Lanes = Eigen::Array<double, N, 1>;
  double v = 0.0;
  Lanes d = Lanes::Zero();

  DualPack() = default;
  DualPack(double value) : v(value) {}
  DualPack(double value, const Lanes& tangent) : v(value), d(tangent) {}

  DualPack& operator+=(const DualPack& o) {
    v += o.v;
    d += o.d;
    return *this;
  }
  DualPack& operator-=(const DualPack& o) {
    v -= o.v;
    d -= o.d;
    return *this;
  }
  DualPack& operator*=(const DualPack& o) {
    d = v * o.d + o.v * d;
    v *= o.v;
    return *this;
  }
};

template <int N>
inline DualPack<N> operator+(DualPack<N> a, const DualPack<N>& b) {
  a += b;
  return a;
}
template <int N>
inline DualPack<N> operator-(DualPack<N> a, const DualPack<N>& b) {
  a -= b;
  return a;
}
template <int N>
inline DualPack<N> operator-(const DualPack<N>& a) {
  return {-a.v, (-a.d).eval()};
}
template <int N>
inline DualPack<N> operator*(const DualPack<N>& a, const DualPack<N>& b) {
  return {a.v * b.v, (a.v * b.d + b.v * a.d).eval()};
}
template <int N>
inline DualPack<N> operator/(const DualPack<N>& a, const DualPack<N>& b) {
  const double inv = 1.0 / b.v;
  const double q = a.v * inv;
  return {q, ((a.d - q * b.d) * inv).eval()};
}
template <int N>
inline DualPack<N> operator+(const DualPack<N>& a, double b) {
  return {a.v + b, a.d};
}
template <int N>
inline DualPack<N> operator+(double a, const DualPack<N>& b) {
  return {a + b.v, b.d};
}
template <int N>
inline DualPack<N> operator-(const DualPack<N>& a, double b) {
  return {a.v - b, a.d};
}
template <int N>
inline DualPack<N> operator-(double a, const DualPack<N>& b) {
  return {a - b.v, (-b.d).eval()};
}
template <int N>
inline DualPack<N> operator*(const DualPack<N>& a, double b) {
  return {a.v * b, (a.d * b).eval()};
}
template <int N>
inline DualPack<N> operator*(double a, const DualPack<N>& b) {
  return {a * b.v, (a * b.d).eval()};
}
template <int N>
inline DualPack<N> operator/(const DualPack<N>& a, double b) {
  return a * (1.0 / b);
}
template <int N>
inline DualPack<N> operator/(double a, const DualPack<N>& b) {
  const double inv = 1.0 / b.v;
  const double q = a * inv;
  return {q, ((-q * inv) * b.d).eval()};
}
template <int N>
inline bool operator<(const DualPack<N>& a, const DualPack<N>& b) {
  return a.v < b.v;
}
template <int N>
inline bool operator>(const DualPack<N>& a, const DualPack<N>& b) {
  return a.v > b.v;
}
template <int N>
inline DualPack<N> sqrt(const DualPack<N>& a) {
  const double s = std::sqrt(a.v);
  return {s, (a.d / (2.0 * s)).eval()};
}
template <int N>
inline DualPack<N> exp(const DualPack<N>& a) {
  const double e = std::exp(a.v);
  return {e, (a.d * e).eval()};
}
template <int N>
inline DualPack<N> log(const DualPack<N>& a) {
  return {std::log(a.v), (a.d / a.v).eval()};
}
template <int N>
inline DualPack<N> tanh(const DualPack<N>& a) {
  const double t = std::tanh(a.v);
  return {t, (a.d * (1.0 - t * t)).eval()};
}
template <int N>
inline DualPack<N> sin(const DualPack<N>& a) {
  return {std::sin(a.v), (a.d * std::cos(a.v)).eval()};
}
template <int N>
inline DualPack<N> cos(const DualPack<N>& a) {
  return {std::cos(a.v), (-a.d * std::sin(a.v)).eval()};
}

// Scalar introspection shared by the templated pipelines.
inline double value_of(double x) { return x; }
inline double value_of(const Dual& x) { return x.v; }
template <int N>
inline double value_of(const DualPack<N>& x) {
  return x.v;
}

}  // namespace stylescope::numerics

namespace Eigen {

template <>
struct NumTraits<stylescope::numerics::Dual> : NumTraits<double> {
  using Real = stylescope::numerics::Dual;
  using NonInteger = stylescope::numerics::Dual;
  using Nested = stylescope::numerics::Dual;
  using Literal = double;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 2,
    MulCost = 4
  };
};

template <typename BinaryOp>
struct ScalarBinaryOpTraits<stylescope::numerics::Dual, double, BinaryOp> {
  using ReturnType = stylescope::numerics::Dual;
};
template <typename BinaryOp>
struct ScalarBinaryOpTraits<double, stylescope::numerics::Dual, BinaryOp> {
  using ReturnType = stylescope::numerics::Dual;
};

}  // namespace Eigen
