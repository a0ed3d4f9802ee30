#pragma once

// Scalar test functions u on a chart, evaluated as 2-jets.

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hstab/jet.hpp"

namespace hstab {

using JetExpression = std::function<Jet(std::span<const Jet>)>;

/// A test function with its 2-jet oracle. `halfwidth[i]` is the half-width of
/// the box outside which u is negligible along axis i (ignored on circles).
struct TestFunction {
  std::string id;
  std::size_t n = 0;
  JetExpression expr;
  std::vector<double> halfwidth;

  [[nodiscard]] Jet eval(std::span<const double> s) const;
  [[nodiscard]] double value(std::span<const double> s) const { return eval(s).v; }
};

TestFunction from_expression(std::string id, std::size_t n, JetExpression expr, std::vector<double> halfwidth);

/// Half-width multiplier applied to a profile's nominal width.
inline constexpr double kBoxWidths = 8.0;

/// exp(-x^2 / (2 sigma^2)) in the variable x = s[axis] - center.
Jet gaussian_profile(const Jet& x, double sigma);
/// Probabilists' Hermite polynomial He_k(x / sigma) times the Gaussian profile.
Jet hermite_profile(const Jet& x, double sigma, int k);

/// exp(-1/2 s^T A s) for symmetric positive definite A; nominal width per axis
/// is sqrt((A^-1)_ii).
TestFunction correlated_gaussian(std::string id, const Eigen::MatrixXd& a);

/// Product of one-dimensional Gaussians with the given widths (0 marks an axis
/// the function does not depend on, e.g. a circle).
TestFunction gaussian_product(std::string id, std::vector<double> sigmas);

/// cos(sum_j k_j s_j / rho_j), a Fourier mode on circles of radii rho.
TestFunction fourier_mode(std::string id, std::vector<int> k, std::vector<double> rho);

/// u(s) * v(s) where the two factors depend on disjoint or shared axes.
TestFunction product(const TestFunction& a, const TestFunction& b);
TestFunction sum(const TestFunction& a, const TestFunction& b);
TestFunction difference(const TestFunction& a, const TestFunction& b);
TestFunction scaled(const TestFunction& a, double c);

/// c * u(t s_i) on the listed axes (other axes untouched). Widths shrink by t.
TestFunction rescaled(const TestFunction& a, double c, double t, const std::vector<std::size_t>& axes);

/// The isotropic family u^t(s) = t^(n/2 - 1) u(t s).
TestFunction isotropic_scaling(const TestFunction& a, double t);

/// A random trigonometric polynomial of total degree <= degree on circles of
/// radii rho, with coefficients drawn from the seed.
TestFunction random_trig_polynomial(std::string id, const std::vector<double>& rho, int degree, unsigned seed);

/// A random polynomial of degree <= degree times an isotropic Gaussian of
/// width sigma.
TestFunction random_poly_bump(std::string id, std::size_t n, int degree, double sigma, unsigned seed);

}  // namespace hstab
