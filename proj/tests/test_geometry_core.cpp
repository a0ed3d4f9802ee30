#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "hstab/geometry_core.hpp"

using namespace hstab;

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

}  // namespace

TEST_CASE("split-complex arithmetic") {
  const ParaComplex tau{0.0, 1.0};
  CHECK(pc_mul(tau, tau) == ParaComplex{1.0, 0.0});
  const ParaComplex z{2.0, 3.0}, w{-1.0, 0.5};
  const ParaComplex zw = pc_mul(z, w);
  CHECK(zw.x == doctest::Approx(2.0 * -1.0 + 3.0 * 0.5));
  CHECK(zw.y == doctest::Approx(2.0 * 0.5 + 3.0 * -1.0));
  CHECK(pc_norm2(z).x == doctest::Approx(4.0 - 9.0));
  CHECK(pc_norm2(z).y == 0.0);
  CHECK(pc_add(z, w) == ParaComplex{1.0, 3.5});
  CHECK(pc_conj(z) == ParaComplex{2.0, -3.0});
}

TEST_CASE("pc_exp_tau is a hyperbolic rotation") {
  for (int eps : {1, -1}) {
    for (double t : {-1.3, 0.0, 0.4, 2.0}) {
      const ParaComplex e = pc_exp_tau(t, eps);
      CHECK(pc_norm2(e).x == doctest::Approx(eps).epsilon(1e-12));
      // d/dt value = tau * value
      const double h = 1e-6;
      const ParaComplex a = pc_exp_tau(t + h, eps), b = pc_exp_tau(t - h, eps);
      const ParaComplex d{(a.x - b.x) / (2 * h), (a.y - b.y) / (2 * h)};
      const ParaComplex te = pc_mul({0.0, 1.0}, e);
      CHECK(d.x == doctest::Approx(te.x).epsilon(1e-8));
      CHECK(d.y == doctest::Approx(te.y).epsilon(1e-8));
    }
  }
}

TEST_CASE("J squares to -eps and is an (anti-)isometry") {
  std::mt19937_64 rng(3);
  for (const AmbientFlat& amb : {AmbientFlat::pseudo_kahler(3, 0), AmbientFlat::pseudo_kahler(3, 2),
                                 AmbientFlat::pseudo_kahler(3, 3), AmbientFlat::para_kahler(3)}) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto x = random_vector(rng, 6), y = random_vector(rng, 6);
      const auto jx = amb.apply_j(x), jy = amb.apply_j(y);
      const auto jjx = amb.apply_j(jx);
      for (std::size_t i = 0; i < 6; ++i) CHECK(jjx[i] == doctest::Approx(-amb.eps() * x[i]));
      // g(JX, JY) = eps g(X, Y)
      CHECK(amb.metric(jx, jy) == doctest::Approx(amb.eps() * amb.metric(x, y)));
      // omega is antisymmetric
      CHECK(symplectic_form(amb, x, y) == doctest::Approx(-symplectic_form(amb, y, x)));
      CHECK(symplectic_form(amb, x, x) == doctest::Approx(0.0).epsilon(1e-15));
    }
  }
}

TEST_CASE("signatures of the model spaces") {
  const AmbientFlat c = AmbientFlat::pseudo_kahler(3, 1);
  CHECK(c.signature().signs() == std::vector<int>{-1, 1, 1});
  CHECK(c.real_signature().signs() == std::vector<int>{-1, -1, 1, 1, 1, 1});
  const AmbientFlat d = AmbientFlat::para_kahler(2);
  CHECK(d.real_signature().signs() == std::vector<int>{1, -1, 1, -1});
  CHECK(d.eps() == -1);
  CHECK_FALSE(c.describe().empty());
}

TEST_CASE("invalid ambient parameters") {
  CHECK_THROWS_AS(AmbientFlat::pseudo_kahler(2, 3), std::invalid_argument);
  CHECK_THROWS_AS(AmbientFlat::para_kahler(0), std::invalid_argument);
  CHECK_THROWS_AS(Signature({1, 2}, 1), std::invalid_argument);
  const AmbientFlat c = AmbientFlat::pseudo_kahler(2, 0);
  const std::vector<double> x(3, 0.0);
  CHECK_THROWS_AS((void)c.apply_j(x), std::invalid_argument);
}
