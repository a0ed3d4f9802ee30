#pragma once

// Second-order forward-mode automatic differentiation.
//
// A Jet carries a value together with its gradient and Hessian with respect
// to up to kMaxDim independent variables. Arithmetic and the elementary
// functions below propagate both orders exactly (up to rounding), which is
// all the immersion oracles and test functions need.

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace hstab {

inline constexpr std::size_t kMaxDim = 4;

struct Jet {
  std::size_t dim = 0;
  double v = 0.0;
  std::array<double, kMaxDim> d{};
  std::array<double, kMaxDim * kMaxDim> h{};

  Jet() = default;
  Jet(std::size_t n, double value) : dim(n), v(value) {}

  /// The coordinate function s_i at a point, seeded for differentiation.
  static Jet variable(std::size_t n, std::size_t i, double value) {
    Jet j(n, value);
    j.d[i] = 1.0;
    return j;
  }

  [[nodiscard]] double grad(std::size_t i) const { return d[i]; }
  [[nodiscard]] double hess(std::size_t i, std::size_t k) const { return h[i * kMaxDim + k]; }
  double& hess(std::size_t i, std::size_t k) { return h[i * kMaxDim + k]; }
};

/// Seeds jets for every coordinate of a point.
inline std::vector<Jet> seed(std::span<const double> s) {
  std::vector<Jet> out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out.push_back(Jet::variable(s.size(), i, s[i]));
  return out;
}

namespace detail {

inline std::size_t common_dim(const Jet& a, const Jet& b) { return a.dim > b.dim ? a.dim : b.dim; }

/// f(a) for a scalar function with derivatives f1 = f'(a.v), f2 = f''(a.v).
inline Jet chain(const Jet& a, double f0, double f1, double f2) {
  Jet r(a.dim, f0);
  for (std::size_t i = 0; i < a.dim; ++i) r.d[i] = f1 * a.d[i];
  for (std::size_t i = 0; i < a.dim; ++i) {
    for (std::size_t k = 0; k < a.dim; ++k) {
      r.h[i * kMaxDim + k] = f2 * a.d[i] * a.d[k] + f1 * a.h[i * kMaxDim + k];
    }
  }
  return r;
}

}  // namespace detail

inline Jet operator+(const Jet& a, const Jet& b) {
  Jet r(detail::common_dim(a, b), a.v + b.v);
  for (std::size_t i = 0; i < kMaxDim; ++i) r.d[i] = a.d[i] + b.d[i];
  for (std::size_t i = 0; i < kMaxDim * kMaxDim; ++i) r.h[i] = a.h[i] + b.h[i];
  return r;
}

inline Jet operator-(const Jet& a) {
  Jet r(a.dim, -a.v);
  for (std::size_t i = 0; i < kMaxDim; ++i) r.d[i] = -a.d[i];
  for (std::size_t i = 0; i < kMaxDim * kMaxDim; ++i) r.h[i] = -a.h[i];
  return r;
}

inline Jet operator-(const Jet& a, const Jet& b) { return a + (-b); }

inline Jet operator*(double c, const Jet& a) {
  Jet r(a.dim, c * a.v);
  for (std::size_t i = 0; i < kMaxDim; ++i) r.d[i] = c * a.d[i];
  for (std::size_t i = 0; i < kMaxDim * kMaxDim; ++i) r.h[i] = c * a.h[i];
  return r;
}

inline Jet operator*(const Jet& a, double c) { return c * a; }

inline Jet operator*(const Jet& a, const Jet& b) {
  const std::size_t n = detail::common_dim(a, b);
  Jet r(n, a.v * b.v);
  for (std::size_t i = 0; i < n; ++i) r.d[i] = a.v * b.d[i] + b.v * a.d[i];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t ik = i * kMaxDim + k;
      r.h[ik] = a.v * b.h[ik] + b.v * a.h[ik] + a.d[i] * b.d[k] + b.d[i] * a.d[k];
    }
  }
  return r;
}

inline Jet operator+(const Jet& a, double c) {
  Jet r = a;
  r.v += c;
  return r;
}
inline Jet operator+(double c, const Jet& a) { return a + c; }
inline Jet operator-(const Jet& a, double c) { return a + (-c); }
inline Jet operator-(double c, const Jet& a) { return (-a) + c; }

inline Jet reciprocal(const Jet& a) {
  const double inv = 1.0 / a.v;
  return detail::chain(a, inv, -inv * inv, 2.0 * inv * inv * inv);
}

inline Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }
inline Jet operator/(const Jet& a, double c) { return (1.0 / c) * a; }
inline Jet operator/(double c, const Jet& a) { return c * reciprocal(a); }

inline Jet sin(const Jet& a) {
  const double s = std::sin(a.v), c = std::cos(a.v);
  return detail::chain(a, s, c, -s);
}

inline Jet cos(const Jet& a) {
  const double s = std::sin(a.v), c = std::cos(a.v);
  return detail::chain(a, c, -s, -c);
}

inline Jet exp(const Jet& a) {
  const double e = std::exp(a.v);
  return detail::chain(a, e, e, e);
}

inline Jet sinh(const Jet& a) {
  const double s = std::sinh(a.v), c = std::cosh(a.v);
  return detail::chain(a, s, c, s);
}

inline Jet cosh(const Jet& a) {
  const double s = std::sinh(a.v), c = std::cosh(a.v);
  return detail::chain(a, c, s, c);
}

inline Jet sqrt(const Jet& a) {
  const double r = std::sqrt(a.v);
  return detail::chain(a, r, 0.5 / r, -0.25 / (r * a.v));
}

inline Jet square(const Jet& a) { return detail::chain(a, a.v * a.v, 2.0 * a.v, 2.0); }

}  // namespace hstab
