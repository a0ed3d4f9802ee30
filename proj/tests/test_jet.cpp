#include <cmath>
#include <functional>

#include "doctest.h"
#include "hstab/jet.hpp"
#include "hstab/jet_form.hpp"

using namespace hstab;

namespace {

using Scalar2 = std::function<double(double, double)>;

/// Gradient and Hessian by central differences, for comparison with AD.
void check_against_fd(const std::function<Jet(const Jet&, const Jet&)>& fj, const Scalar2& f, double x, double y) {
  const Jet a = Jet::variable(2, 0, x), b = Jet::variable(2, 1, y);
  const Jet r = fj(a, b);
  const double h = 1e-4;
  CHECK(r.v == doctest::Approx(f(x, y)).epsilon(1e-13));
  CHECK(r.grad(0) == doctest::Approx((f(x + h, y) - f(x - h, y)) / (2 * h)).epsilon(1e-7));
  CHECK(r.grad(1) == doctest::Approx((f(x, y + h) - f(x, y - h)) / (2 * h)).epsilon(1e-7));
  const double fxx = (f(x + h, y) - 2 * f(x, y) + f(x - h, y)) / (h * h);
  const double fxy = (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h)) / (4 * h * h);
  CHECK(r.hess(0, 0) == doctest::Approx(fxx).epsilon(1e-5));
  CHECK(r.hess(0, 1) == doctest::Approx(fxy).epsilon(1e-5));
  CHECK(r.hess(1, 0) == doctest::Approx(fxy).epsilon(1e-5));
}

}  // namespace

TEST_CASE("jet arithmetic and elementary functions match finite differences") {
  for (auto [x, y] : {std::pair{0.3, -0.7}, std::pair{1.1, 0.4}}) {
    check_against_fd([](const Jet& a, const Jet& b) { return a * b + sin(a) * cos(b); },
                     [](double a, double b) { return a * b + std::sin(a) * std::cos(b); }, x, y);
    check_against_fd([](const Jet& a, const Jet& b) { return exp(a - b) / (2.0 + square(b)); },
                     [](double a, double b) { return std::exp(a - b) / (2.0 + b * b); }, x, y);
    check_against_fd([](const Jet& a, const Jet& b) { return sinh(a) * cosh(b) + sqrt(3.0 + a * b); },
                     [](double a, double b) { return std::sinh(a) * std::cosh(b) + std::sqrt(3.0 + a * b); }, x,
                     y);
    check_against_fd([](const Jet& a, const Jet& b) { return reciprocal(1.5 + a) - b * 2.0; },
                     [](double a, double b) { return 1.0 / (1.5 + a) - 2.0 * b; }, x, y);
  }
}

TEST_CASE("flatten and the Hessian slot layout") {
  CHECK(jet_size(2) == 6);
  CHECK(jet_size(4) == kMaxJetSize);
  CHECK(hess_slot(2, 0, 0) == 3);
  CHECK(hess_slot(2, 0, 1) == 4);
  CHECK(hess_slot(2, 1, 0) == 4);
  CHECK(hess_slot(2, 1, 1) == 5);
  CHECK(hess_slot(3, 1, 2) == 1 + 3 + 3 + 1);
  const Jet u = Jet::variable(2, 0, 0.5) * Jet::variable(2, 1, 2.0);
  const JetVec j = flatten(u, 2);
  CHECK(j(0) == doctest::Approx(1.0));
  CHECK(j(1) == doctest::Approx(2.0));
  CHECK(j(2) == doctest::Approx(0.5));
  CHECK(j(4) == doctest::Approx(1.0));
}

TEST_CASE("form builder squares and products") {
  LinearJetForm a(2), b(2);
  a.first(0, 1.0);
  b.second(0, 1, 2.0);
  FormBuilder fb(2);
  fb.add_square(3.0, a).add_product(1.0, a, b);
  const Jet u = Jet::variable(2, 0, 0.2) * Jet::variable(2, 1, 0.7);
  const JetVec j = flatten(u, 2);
  // 3 u_1^2 + u_1 * 2 u_12
  CHECK(evaluate_form(fb.form(), j) == doctest::Approx(3 * 0.49 + 0.7 * 2.0));
  CHECK((fb.form() - fb.form().transpose()).norm() == 0.0);
}
