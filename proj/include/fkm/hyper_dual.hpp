#pragma once

// Hyper-dual numbers  v + d1*e1 + d2*e2 + d12*e1e2  with e1^2 = e2^2 = 0.
//
// Seeding a coordinate x_k as  x_k + [k == i] e1 + [k == j] e2  and pushing
// it through any smooth expression yields, exactly up to roundoff,
//   d1  = df/dx_i,   d2 = df/dx_j,   d12 = d^2 f / dx_i dx_j.
// There is no truncation error, so curvature (which needs second metric
// derivatives) does not depend on a step size.

#include <cmath>
#include <ostream>

#include <Eigen/Core>

namespace fkm {

struct HyperDual {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d12 = 0.0;

  constexpr HyperDual() = default;
  constexpr HyperDual(double value) : v(value) {}  // NOLINT: implicit lift of constants
  constexpr HyperDual(double value, double e1, double e2, double e12)
      : v(value), d1(e1), d2(e2), d12(e12) {}

  HyperDual& operator+=(const HyperDual& o) {
    v += o.v;
    d1 += o.d1;
    d2 += o.d2;
    d12 += o.d12;
    return *this;
  }
  HyperDual& operator-=(const HyperDual& o) {
    v -= o.v;
    d1 -= o.d1;
    d2 -= o.d2;
    d12 -= o.d12;
    return *this;
  }
  HyperDual& operator*=(const HyperDual& o) {
    *this = HyperDual{v * o.v, v * o.d1 + d1 * o.v, v * o.d2 + d2 * o.v,
                      v * o.d12 + d1 * o.d2 + d2 * o.d1 + d12 * o.v};
    return *this;
  }
  HyperDual& operator/=(const HyperDual& o);
};

// Applies a scalar function given its value and first two derivatives at v.
constexpr HyperDual chain(const HyperDual& x, double f0, double f1, double f2) {
  return {f0, f1 * x.d1, f1 * x.d2, f1 * x.d12 + f2 * x.d1 * x.d2};
}

constexpr HyperDual operator-(const HyperDual& x) { return {-x.v, -x.d1, -x.d2, -x.d12}; }
constexpr HyperDual operator+(const HyperDual& x) { return x; }

inline HyperDual operator+(HyperDual a, const HyperDual& b) { return a += b; }
inline HyperDual operator-(HyperDual a, const HyperDual& b) { return a -= b; }
inline HyperDual operator*(HyperDual a, const HyperDual& b) { return a *= b; }

inline HyperDual reciprocal(const HyperDual& x) {
  const double r = 1.0 / x.v;
  return chain(x, r, -r * r, 2.0 * r * r * r);
}

inline HyperDual& HyperDual::operator/=(const HyperDual& o) { return *this *= reciprocal(o); }
inline HyperDual operator/(HyperDual a, const HyperDual& b) { return a /= b; }

inline HyperDual operator+(HyperDual a, double b) { a.v += b; return a; }
inline HyperDual operator+(double a, HyperDual b) { b.v += a; return b; }
inline HyperDual operator-(HyperDual a, double b) { a.v -= b; return a; }
inline HyperDual operator-(double a, const HyperDual& b) { return HyperDual(a) - b; }
inline HyperDual operator*(const HyperDual& a, double b) { return {a.v * b, a.d1 * b, a.d2 * b, a.d12 * b}; }
inline HyperDual operator*(double a, const HyperDual& b) { return b * a; }
inline HyperDual operator/(const HyperDual& a, double b) { return a * (1.0 / b); }
inline HyperDual operator/(double a, const HyperDual& b) { return a * reciprocal(b); }

// Comparisons look at the value part only.
inline bool operator==(const HyperDual& a, const HyperDual& b) { return a.v == b.v; }
inline bool operator<(const HyperDual& a, const HyperDual& b) { return a.v < b.v; }
inline bool operator>(const HyperDual& a, const HyperDual& b) { return a.v > b.v; }
inline bool operator<=(const HyperDual& a, const HyperDual& b) { return a.v <= b.v; }
inline bool operator>=(const HyperDual& a, const HyperDual& b) { return a.v >= b.v; }

inline HyperDual sin(const HyperDual& x) {
  const double s = std::sin(x.v), c = std::cos(x.v);
  return chain(x, s, c, -s);
}
inline HyperDual cos(const HyperDual& x) {
  const double s = std::sin(x.v), c = std::cos(x.v);
  return chain(x, c, -s, -c);
}
inline HyperDual exp(const HyperDual& x) {
  const double e = std::exp(x.v);
  return chain(x, e, e, e);
}
inline HyperDual log(const HyperDual& x) {
  const double r = 1.0 / x.v;
  return chain(x, std::log(x.v), r, -r * r);
}
inline HyperDual sqrt(const HyperDual& x) {
  const double r = std::sqrt(x.v);
  return chain(x, r, 0.5 / r, -0.25 / (r * x.v));
}
inline HyperDual pow(const HyperDual& x, double p) {
  const double f0 = std::pow(x.v, p);
  return chain(x, f0, p * std::pow(x.v, p - 1.0), p * (p - 1.0) * std::pow(x.v, p - 2.0));
}
inline HyperDual abs(const HyperDual& x) { return x.v < 0.0 ? -x : x; }

// Eigen scalar hooks.
inline const HyperDual& conj(const HyperDual& x) { return x; }
inline const HyperDual& real(const HyperDual& x) { return x; }
inline HyperDual imag(const HyperDual&) { return HyperDual(0.0); }
inline HyperDual abs2(const HyperDual& x) { return x * x; }

inline std::ostream& operator<<(std::ostream& os, const HyperDual& x) {
  return os << '(' << x.v << ", " << x.d1 << ", " << x.d2 << ", " << x.d12 << ')';
}

}  // namespace fkm

namespace Eigen {

template <>
struct NumTraits<fkm::HyperDual> : NumTraits<double> {
  using Real = fkm::HyperDual;
  using NonInteger = fkm::HyperDual;
  using Nested = fkm::HyperDual;
  using Literal = fkm::HyperDual;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 0,
    ReadCost = 4,
    AddCost = 4,
    MulCost = 16
  };
};

template <typename BinaryOp>
struct ScalarBinaryOpTraits<fkm::HyperDual, double, BinaryOp> {
  using ReturnType = fkm::HyperDual;
};
template <typename BinaryOp>
struct ScalarBinaryOpTraits<double, fkm::HyperDual, BinaryOp> {
  using ReturnType = fkm::HyperDual;
};

}  // namespace Eigen

namespace fkm {

using DualVector = Eigen::Matrix<HyperDual, Eigen::Dynamic, 1>;
using DualMatrix = Eigen::Matrix<HyperDual, Eigen::Dynamic, Eigen::Dynamic>;

}  // namespace fkm
