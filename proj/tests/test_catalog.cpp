#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hstab/catalog.hpp"
#include "hstab/quadrature.hpp"

using namespace hstab;

namespace {

constexpr double kPi = std::numbers::pi;

/// cos on circle axes (one period), Gaussian on line axes.
TestFunction mixed_probe(const std::vector<AxisDomain>& dom) {
  std::vector<double> hw(dom.size(), 8.0);
  return from_expression("probe", dom.size(),
                         [dom](std::span<const Jet> s) {
                           Jet out(dom.size(), 1.0);
                           for (std::size_t i = 0; i < dom.size(); ++i) {
                             out = out * (dom[i].is_circle() ? 2.0 + cos(s[i] * (2 * kPi / dom[i].length) + 0.3 * i)
                                                             : gaussian_profile(s[i], 1.0));
                           }
                           return out;
                         },
                         hw);
}

template <class F>
double integrate_jet(const TestFunction& u, const std::vector<AxisDomain>& dom, F f) {
  return integrate([&](std::span<const double> s) { return f(u.eval(s), s); }, dom, {}, u.halfwidth);
}

}  // namespace

TEST_CASE("catalog id parsing") {
  CHECK(resolve("torus:n=2,r=1,1,p=1").id == "torus:n=2,r=1,1,p=1");
  CHECK(resolve("hyperbola:n=2,r=1,3,eps=+,+").expected == VerdictLabel::negative_definite);
  CHECK(resolve("plane:kind=para,n=2").expected == VerdictLabel::negative_definite);
  CHECK(resolve("tube:S3:closed:G").expected == VerdictLabel::indefinite);
  CHECK(resolve("bundle:curve=circle,R=2").curve->closed);
  CHECK(resolve("bundle:curve=const,kappa=1,K=0").scaling.size() == 1);
  CHECK_THROWS_AS(resolve("torus:n=2,r=1,1,p=1,q=3"), CatalogError);
  CHECK_THROWS_AS(resolve("torus:n=2,r=1,p=1"), CatalogError);
  CHECK_THROWS_AS(resolve("torus:n=2,r=1,1"), CatalogError);
  CHECK_THROWS_AS(resolve("hyperbola:n=2,r=1,1,eps=+,x"), CatalogError);
  CHECK_THROWS_AS(resolve("sphere:n=2"), CatalogError);
  CHECK_THROWS_AS(resolve("tube:S3:closed"), CatalogError);
  CHECK_THROWS_AS(resolve("tube:S3:closed:H"), CatalogError);
  CHECK_THROWS_AS(resolve("bundle:curve=circle,R=1,kappa=2"), CatalogError);
  CHECK_THROWS_AS(resolve("torus:n=2,r=1,abc,p=1"), CatalogError);
  CHECK_THROWS_AS(resolve("noprefix"), CatalogError);
}

TEST_CASE("tube table shape") {
  CHECK(tube_rows().size() == 8);
  CHECK(tube_ids().size() == 16);
  const TubeRow& ads = find_tube_row("AdS3", "unbounded-definite");
  CHECK(ads.eps == std::array<int, 4>{-1, -1, -1, -1});
  CHECK(ads.g_label == VerdictLabel::positive_definite);
  CHECK(ads.gprime_label == VerdictLabel::indefinite);
  const TubeRow& h3 = find_tube_row("H3", "unbounded");
  CHECK(h3.g_label == VerdictLabel::indefinite);
  CHECK(h3.gprime_label == VerdictLabel::indefinite);
  CHECK_THROWS_AS(find_tube_row("S3", "nope"), CatalogError);
}

TEST_CASE("tube functionals against their defining integrands") {
  for (const TubeRow& row : tube_rows()) {
    const auto& e = row.eps;
    for (TubeMetric m : {TubeMetric::G, TubeMetric::Gprime}) {
      const Functional f = make_geodesic_tube(row, m);
      const TestFunction u = mixed_probe(f.domains);
      const double direct = integrate_jet(u, f.domains, [&](const Jet& j, std::span<const double>) {
        const double us = j.grad(0), ut = j.grad(1), uss = j.hess(0, 0), utt = j.hess(1, 1), ust = j.hess(0, 1);
        if (m == TubeMetric::G) {
          const double eps = e[0] * e[2];
          const double lead = e[2] * uss + e[1] * utt;
          return eps * lead * lead - 2 * eps * (e[0] * us * us + e[3] * ut * ut);
        }
        const double eps = e[0] * e[1];
        return eps * (4 * ust * ust + 2 * (e[0] * us * us + e[3] * ut * ut));
      });
      CHECK(evaluate(f, u, {}) == doctest::Approx(direct).epsilon(1e-10));
    }
  }
}

TEST_CASE("rank-one bundle functional") {
  const CurveData c = CurveData::constant(0.7, -0.2);
  const Functional f = make_rank_one_bundle(c);
  const TestFunction u = mixed_probe(f.domains);
  const double direct = integrate_jet(u, f.domains, [](const Jet& j, std::span<const double>) {
    return 4 * j.hess(0, 1) * j.hess(0, 1) - (0.49 - 0.4) * j.grad(1) * j.grad(1);
  });
  CHECK(evaluate(f, u, {}) == doctest::Approx(direct).epsilon(1e-10));

  CurveData ca = CurveData::constant(0.7, -0.2);
  ca.a_profile = [](double) { return 0.5; };
  ca.a_nonzero = true;
  const CatalogEntry ea = bundle_entry(ca);
  CHECK_FALSE(ea.warnings.empty());
  const double with_a = integrate_jet(u, f.domains, [](const Jet& j, std::span<const double>) {
    const double lap = -2 * j.hess(0, 1) + 2 * 0.5 * 0.7 * j.hess(1, 1);
    return lap * lap - (0.49 - 0.4) * j.grad(1) * j.grad(1);
  });
  CHECK(evaluate(ea.functional, u, {}) == doctest::Approx(with_a).epsilon(1e-10));
}

TEST_CASE("closed curves in the bundle carry the zero-mean warning") {
  const CatalogEntry e = bundle_entry(CurveData::circle_in_plane(1.0));
  CHECK(e.expected == VerdictLabel::indefinite);
  CHECK_FALSE(e.warnings.empty());
  CHECK(e.functional.domains[0].is_circle());
  CHECK(e.functional.domains[0].length == doctest::Approx(2 * kPi));
}

TEST_CASE("torus entry expectations") {
  CHECK(torus_entry({1.0, 1.0}, 1).expected == VerdictLabel::indefinite);
  CHECK(torus_entry({1.0, 1.0}, 0).expected == VerdictLabel::inconclusive);
  CHECK(torus_entry({1.0}, 1).expected == VerdictLabel::inconclusive);
  CHECK(torus_entry({1.0, 1.0}, 1).probes.size() == 2);
}
