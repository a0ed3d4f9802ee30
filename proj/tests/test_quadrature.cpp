#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hstab/functional.hpp"
#include "hstab/quadrature.hpp"

using namespace hstab;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("Gauss-Legendre rules integrate polynomials exactly") {
  const Rule1D r = gauss_legendre(12);
  for (int k = 0; k < 24; ++k) {
    double sum = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) sum += r.weights[i] * std::pow(r.nodes[i], k);
    const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
    CHECK(sum == doctest::Approx(exact).epsilon(1e-14).scale(1.0));
  }
}

TEST_CASE("periodic trapezoid on circles") {
  const std::vector<AxisDomain> circle = {AxisDomain::circle(2 * kPi)};
  GridSpec g;
  g.circle_nodes = 4;
  CHECK(integrate([](std::span<const double> s) { return std::cos(s[0]) * std::cos(s[0]); }, circle, g) ==
        doctest::Approx(kPi).epsilon(1e-15));
  const std::vector<AxisDomain> torus = {AxisDomain::circle(2 * kPi), AxisDomain::circle(2 * kPi)};
  const double v = integrate(
      [](std::span<const double> s) {
        const double x = std::sin(s[0] - s[1]);
        return x * x;
      },
      torus, {});
  CHECK(v == doctest::Approx(2 * kPi * kPi).epsilon(1e-14));
}

TEST_CASE("Gaussian bump: int u'^2 on a line") {
  const double sigma = 0.7;
  const std::vector<AxisDomain> line = {AxisDomain::line(100.0)};
  GridSpec g;
  g.line_box = {10 * sigma};
  const double v = integrate(
      [sigma](std::span<const double> s) {
        const double d = -s[0] / (sigma * sigma) * std::exp(-0.5 * s[0] * s[0] / (sigma * sigma));
        return d * d;
      },
      line, g);
  CHECK(std::abs(v - std::sqrt(kPi) / (2 * sigma)) <= 1e-10);
}

TEST_CASE("support leakage raises") {
  const std::vector<AxisDomain> line = {AxisDomain::line(100.0)};
  GridSpec g;
  g.line_box = {1.0};
  auto bump = [](std::span<const double> s) { return std::exp(-0.5 * s[0] * s[0]); };
  CHECK_THROWS_AS(integrate(bump, line, g), SupportError);
  g.line_box = {12.0};
  CHECK_NOTHROW(integrate(bump, line, g));
}

TEST_CASE("node budget thins line axes") {
  const std::vector<AxisDomain> dom(4, AxisDomain::line(1.0));
  const TensorGrid grid = make_grid(dom, {}, std::vector<double>(4, 1.0));
  CHECK(grid.size() <= (std::size_t{1} << 19));
  CHECK(grid.axes[0].nodes.size() >= 8);
}

TEST_CASE("results do not depend on the worker count") {
  const std::vector<AxisDomain> torus = {AxisDomain::circle(2 * kPi), AxisDomain::circle(3.0)};
  auto field = [](std::span<const double> s) { return std::exp(std::sin(s[0]) * std::cos(4 * std::numbers::pi * s[1] / 3.0)); };
  const std::size_t before = thread_count();
  set_thread_count(1);
  const double a = integrate(field, torus, {});
  set_thread_count(4);
  const double b = integrate(field, torus, {});
  set_thread_count(before);
  CHECK(a == b);
}
