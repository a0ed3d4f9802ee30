#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hstab/test_function.hpp"

using namespace hstab;

namespace {

void check_derivatives(const TestFunction& u, std::vector<double> s) {
  const Jet j = u.eval(s);
  const double h = 1e-4;
  for (std::size_t i = 0; i < u.n; ++i) {
    auto plus = s, minus = s;
    plus[i] += h;
    minus[i] -= h;
    CHECK(j.grad(i) == doctest::Approx((u.value(plus) - u.value(minus)) / (2 * h)).epsilon(1e-6));
    CHECK(j.hess(i, i) ==
          doctest::Approx((u.value(plus) - 2 * u.value(s) + u.value(minus)) / (h * h)).epsilon(1e-4).scale(1.0));
  }
}

}  // namespace

TEST_CASE("Gaussian and Hermite profiles") {
  const Jet x = Jet::variable(1, 0, 0.7);
  CHECK(gaussian_profile(x, 0.5).v == doctest::Approx(std::exp(-0.5 * 0.49 / 0.25)));
  // He_2(t) = t^2 - 1
  const double t = 0.7 / 0.5;
  CHECK(hermite_profile(x, 0.5, 2).v == doctest::Approx((t * t - 1) * std::exp(-0.5 * t * t)));
  // He_3(t) = t^3 - 3t
  CHECK(hermite_profile(x, 0.5, 3).v == doctest::Approx((t * t * t - 3 * t) * std::exp(-0.5 * t * t)));
}

TEST_CASE("test function jets agree with finite differences") {
  check_derivatives(gaussian_product("g", {0.8, 1.3}), {0.3, -0.4});
  check_derivatives(fourier_mode("f", {2, -1}, {1.0, 2.0}), {0.3, 1.1});
  Eigen::MatrixXd a(2, 2);
  a << 2.0, 0.5, 0.5, 1.0;
  check_derivatives(correlated_gaussian("c", a), {0.2, 0.9});
  check_derivatives(random_trig_polynomial("t", {1.0, 1.0}, 3, 11), {0.5, 2.0});
  check_derivatives(random_poly_bump("b", 2, 3, 1.0, 5), {-0.3, 0.6});
  check_derivatives(product(gaussian_product("g", {1.0, 0.0}), fourier_mode("f", {0, 1}, {1.0, 1.0})), {0.1, 0.2});
}

TEST_CASE("combinators") {
  const TestFunction g = gaussian_product("g", {1.0, 2.0});
  const TestFunction f = fourier_mode("f", {1, 0}, {1.0, 1.0});
  const std::vector<double> s = {0.4, -0.3};
  CHECK(sum(g, f).value(s) == doctest::Approx(g.value(s) + f.value(s)));
  CHECK(difference(g, f).value(s) == doctest::Approx(g.value(s) - f.value(s)));
  CHECK(scaled(g, -2.5).value(s) == doctest::Approx(-2.5 * g.value(s)));
  CHECK(g.halfwidth[0] == doctest::Approx(kBoxWidths * 1.0));
  CHECK(g.halfwidth[1] == doctest::Approx(kBoxWidths * 2.0));
  // c u(t s) on the chosen axes only
  const TestFunction r = rescaled(g, 3.0, 2.0, {0});
  CHECK(r.value(s) == doctest::Approx(3.0 * g.value(std::vector<double>{0.8, -0.3})));
  CHECK(r.halfwidth[0] == doctest::Approx(g.halfwidth[0] / 2.0));
  // t^(n/2 - 1) u(t s), n = 2
  const TestFunction iso = isotropic_scaling(g, 0.5);
  CHECK(iso.value(s) == doctest::Approx(g.value(std::vector<double>{0.2, -0.15})));
}

TEST_CASE("correlated Gaussian widths and validation") {
  Eigen::MatrixXd a(2, 2);
  a << 2.0, 0.5, 0.5, 1.0;
  const TestFunction u = correlated_gaussian("c", a);
  const Eigen::MatrixXd inv = a.inverse();
  CHECK(u.halfwidth[0] == doctest::Approx(kBoxWidths * std::sqrt(inv(0, 0))));
  CHECK(u.value(std::vector<double>{0.3, -0.2}) ==
        doctest::Approx(std::exp(-0.5 * (2.0 * 0.09 + 2 * 0.5 * 0.3 * -0.2 + 0.04))));
  Eigen::MatrixXd bad(2, 2);
  bad << 1.0, 2.0, 2.0, 1.0;
  CHECK_THROWS_AS(correlated_gaussian("bad", bad), std::invalid_argument);
  CHECK_THROWS_AS(fourier_mode("f", {1}, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("random probes are reproducible from the seed") {
  const std::vector<double> s = {0.3, 0.8};
  CHECK(random_trig_polynomial("a", {1.0, 1.0}, 2, 9).value(s) ==
        random_trig_polynomial("b", {1.0, 1.0}, 2, 9).value(s));
  CHECK(random_trig_polynomial("a", {1.0, 1.0}, 2, 9).value(s) !=
        random_trig_polynomial("a", {1.0, 1.0}, 2, 10).value(s));
}
