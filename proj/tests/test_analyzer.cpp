#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hstab/analyzer.hpp"
#include "hstab/catalog.hpp"
#include "hstab/variation.hpp"

using namespace hstab;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("torus_mode_value examples") {
  // k = (k, 0): (2 pi r2) pi (k^4 - k^2) / r1^3
  CHECK(torus_mode_value({1.0, 2.0}, 1, {3, 0}) == doctest::Approx(2 * kPi * 2.0 * kPi * (81 - 9)));
  CHECK(torus_mode_value({2.0}, 0, {2}) == doctest::Approx(kPi * 12 / 8.0));
  CHECK(torus_mode_value({1.0, 1.0}, 1, {1, 1}) == doctest::Approx(-8 * kPi * kPi));
  CHECK(torus_mode_value({1.0}, 0, {1}) == doctest::Approx(0.0));
  CHECK_THROWS_AS(torus_mode_value({1.0, 1.0}, 1, {0, 0}), std::invalid_argument);
}

TEST_CASE("spectral criterion") {
  const SpectralResult sphere = spectral_criterion({1.0, 1.0}, 2.0);
  CHECK(sphere.lambda1 == 1.0);
  CHECK_FALSE(sphere.stable);
  CHECK(spectral_criterion({1.0, 1.0}, 1.0).stable);
  CHECK(spectral_criterion({3.0, 0.5}, -1.0).stable);
  CHECK(spectral_criterion({3.0, 0.5}, 0.0).stable);
  // the table is sorted by eigenvalue and lists lambda (lambda - c)
  const SpectralResult r = spectral_criterion({1.0, 2.0}, 1.0);
  CHECK(r.lambda1 == doctest::Approx(0.25));
  for (std::size_t i = 0; i + 1 < r.modes.size(); ++i) CHECK(r.modes[i].lambda <= r.modes[i + 1].lambda);
  CHECK(r.modes.front().value == doctest::Approx(0.25 * (0.25 - 1.0)));
}

TEST_CASE("M_Q analysis") {
  const HyperbolaMatrixAnalysis a = hyperbola_matrix_analysis({1.0, 1.0, 1.0}, {1, 1, 1});
  Eigen::MatrixXd expect = 2 * Eigen::MatrixXd::Identity(3, 3) - Eigen::MatrixXd::Ones(3, 3);
  CHECK((a.m_q - expect).norm() <= 1e-15);
  CHECK(a.eigenvalues(0) == doctest::Approx(-1.0));
  CHECK(a.eigenvalues(2) == doctest::Approx(2.0));
  CHECK(a.positive == 2);
  CHECK(a.negative == 1);
  for (std::size_t n = 2; n <= 5; ++n) {
    std::vector<double> r(n);
    std::vector<int> s(n);
    for (std::size_t j = 0; j < n; ++j) {
      r[j] = 0.5 + 0.3 * j;
      s[j] = j % 2 ? -1 : 1;
    }
    const HyperbolaMatrixAnalysis m = hyperbola_matrix_analysis(r, s);
    const double nn = static_cast<double>(n);
    CHECK(m.w_value == doctest::Approx(2 * nn - nn * nn));
    CHECK(m.e1_value == doctest::Approx(1.0 / (r[0] * r[0])));
    if (n == 2) CHECK(m.negative == 0);
    if (n >= 3) CHECK(m.negative >= 1);
    // direct expansion on the negative direction
    CHECK(hyperbola_q(r, s, m.w) == doctest::Approx(m.w_value));
  }
  CHECK_THROWS_AS(hyperbola_matrix_analysis({1.0}, {1}), std::invalid_argument);
}

TEST_CASE("Wirtinger bound") {
  for (double R : {0.5, 1.0, 3.0}) {
    const WirtingerResult w = wirtinger_bound(CurveData::circle_in_plane(R));
    CHECK(w.sup_potential == doctest::Approx(1 / (R * R)));
    CHECK(*w.threshold == doctest::Approx(4 / (R * R)));
    CHECK(w.verdict == "stable");
  }
  const WirtingerResult geo = wirtinger_bound(CurveData::constant(0.0, -1.0));
  CHECK(geo.sup_potential == doctest::Approx(-2.0));
  CHECK(geo.verdict == "stable");
  CHECK(geo.branch == "nonpositive");
  // kappa^2 + 2K = 5 / R^2 on length 2 pi R
  const double R = 1.5;
  const WirtingerResult over = wirtinger_bound(CurveData::constant(std::sqrt(5.0) / R, 0.0, 2 * kPi * R));
  CHECK(over.verdict == "inconclusive");
  CHECK_THROWS_AS(wirtinger_bound(CurveData::constant(1.0, 0.0), WirtingerBranch::wirtinger_only),
                  std::invalid_argument);
}

TEST_CASE("witness library order") {
  const auto lib = witness_library({AxisDomain::circle(2 * kPi), AxisDomain::circle(2 * kPi)});
  REQUIRE(lib.size() == 20);
  CHECK(lib[0].id == "fourier:k=1,0");
  CHECK(lib[1].id == "fourier:k=0,1");
  CHECK(lib[2].id == "fourier:k=2,0");
  CHECK(lib[3].id == "fourier:k=1,1");
  CHECK(lib[4].id == "fourier:k=1,-1");
  CHECK(lib[5].id == "fourier:k=0,2");
  const auto lines = witness_library({AxisDomain::line(8.0), AxisDomain::line(8.0)});
  CHECK(lines.front().id == "gauss:sigma=1");
  CHECK(lines.size() == 5 + 4 + 4);
}

TEST_CASE("classify examples") {
  const StabilityVerdict t = classify(resolve("torus:n=2,r=1,1,p=1"));
  CHECK(t.label == VerdictLabel::indefinite);
  REQUIRE(t.witness_pos);
  REQUIRE(t.witness_neg);
  CHECK(t.witness_pos->probe_id == "fourier:k=2,0");
  CHECK(t.witness_neg->probe_id == "wave:F=cos,a=1,b=1");
  CHECK(t.witness_neg->value == doctest::Approx(-8 * kPi * kPi));
  CHECK(t.witness_pos->value == doctest::Approx(torus_mode_value({1.0, 1.0}, 1, {2, 0})));

  const StabilityVerdict h2 = classify(resolve("hyperbola:n=2,r=1,3,eps=+,+"));
  CHECK(h2.label == VerdictLabel::negative_definite);
  CHECK_FALSE(h2.certificate.empty());

  CHECK(classify(resolve("hyperbola:n=3,r=1,1,1,eps=+,+,+")).label == VerdictLabel::indefinite);
  CHECK(classify(resolve("tube:S3:closed:G")).label == VerdictLabel::indefinite);
  // definite signatures: only witnesses of one sign exist, no certificate
  CHECK(classify(resolve("torus:n=2,r=1,1,p=0")).label == VerdictLabel::inconclusive);
}

TEST_CASE("verdict invariants over the catalog") {
  std::vector<std::string> ids = {"torus:n=2,r=1,2,p=1",  "torus:n=2,r=1,1,p=2",        "hyperbola:n=1,r=1,eps=-",
                                  "plane:kind=pk,n=2,p=1", "bundle:curve=const,kappa=1,K=0", "bundle:curve=circle,R=1"};
  for (const std::string& id : tube_ids()) ids.push_back(id);
  for (const std::string& id : ids) {
    CAPTURE(id);
    const CatalogEntry e = resolve(id);
    const StabilityVerdict v = classify(e);
    CHECK(v.label == e.expected);
    if (v.label == VerdictLabel::indefinite) {
      REQUIRE(v.witness_pos);
      REQUIRE(v.witness_neg);
      CHECK(v.witness_pos->value > v.tolerances.witness_relative * v.witness_pos->norm2);
      CHECK(v.witness_neg->value < -v.tolerances.witness_relative * v.witness_neg->norm2);
    }
    if (v.label == VerdictLabel::positive_definite || v.label == VerdictLabel::negative_definite) {
      CHECK_FALSE(v.certificate.empty());
    }
    CHECK_FALSE(v.evidence.empty());
  }
}

TEST_CASE("scaling probes") {
  const CatalogEntry h3 = resolve("hyperbola:n=3,r=1,1,1,eps=+,+,+");
  ScalingFamily fam = h3.scaling.front();
  fam.schedule = {0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0};
  const ScalingReport r = scaling_probe(h3.functional, fam);
  CHECK(r.found_both_signs());
  CHECK(r.sign_changes.size() == 1);

  const CatalogEntry ads = resolve("tube:AdS3:unbounded-indefinite:Gprime");
  CHECK(scaling_probe(ads.functional, ads.scaling.front()).found_both_signs());

  const CatalogEntry tn = resolve("bundle:curve=const,kappa=1,K=0");
  const ScalingReport b = scaling_probe(tn.functional, tn.scaling.front());
  CHECK(b.found_both_signs());
  CHECK(b.parameters.front() == doctest::Approx(0.05));
  CHECK(b.parameters.back() == doctest::Approx(20.0));
}

TEST_CASE("verdict JSON") {
  const StabilityVerdict v = classify(resolve("torus:n=2,r=1,1,p=1"));
  const nlohmann::json j = to_json(v);
  CHECK(j["catalog_id"] == "torus:n=2,r=1,1,p=1");
  CHECK(j["label"] == "indefinite");
  CHECK(j["witnesses"].is_array());
  CHECK(j["witnesses"][0].contains("probe_id"));
  CHECK(j["witnesses"][0].contains("value"));
  CHECK(j.contains("evidence"));
  CHECK(j.contains("grid"));
  CHECK(j.contains("tolerances"));
  const std::size_t before = thread_count();
  set_thread_count(1);
  const std::string a = to_json(classify(resolve("hyperbola:n=3,r=1,2,1,eps=+,-,+"))).dump();
  set_thread_count(3);
  const std::string b = to_json(classify(resolve("hyperbola:n=3,r=1,2,1,eps=+,-,+"))).dump();
  set_thread_count(before);
  CHECK(a == b);
}

TEST_CASE("strategy names") {
  CHECK(parse_strategy("fourier_sweep") == Strategy::fourier_sweep);
  CHECK(to_string(parse_strategy("spectral_criterion")) == "spectral_criterion");
  CHECK_THROWS_AS(parse_strategy("guess"), std::invalid_argument);
}
