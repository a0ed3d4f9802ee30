#include "hstab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>

#include "hstab/analyzer.hpp"
#include "hstab/catalog.hpp"
#include "hstab/variation.hpp"

namespace hstab {

namespace {

constexpr double kPi = std::numbers::pi;

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

CheckResult start(std::string id, std::string topic) {
  CheckResult c;
  c.id = std::move(id);
  c.topic = std::move(topic);
  return c;
}

std::vector<std::string> verdict_evidence(const StabilityVerdict& v) {
  std::vector<std::string> out;
  if (!v.certificate.empty()) out.push_back(v.certificate);
  if (v.witness_pos) out.push_back("+:" + v.witness_pos->probe_id);
  if (v.witness_neg) out.push_back("-:" + v.witness_neg->probe_id);
  return out;
}

/// Sample points with line axes restricted to [-len, len].
std::vector<std::vector<double>> local_samples(std::vector<AxisDomain> domains, std::size_t per_axis, double len) {
  for (AxisDomain& d : domains) {
    if (!d.is_circle()) d = AxisDomain::line(len);
  }
  return sample_grid(domains, per_axis);
}

}  // namespace

CheckResult check_torus_mode_value(const VerifyOptions& o) {
  CheckResult c = start("1", "torus mode values cos(k s1/r1)");
  const std::vector<double> all_r = {1.0, 2.0, 3.0};
  double worst = 0.0;
  std::string where;
  std::size_t cases = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    const std::vector<double> r(all_r.begin(), all_r.begin() + static_cast<std::ptrdiff_t>(n));
    for (std::size_t p = 0; p <= n; ++p) {
      const CatalogEntry e = torus_entry(r, p);
      for (int k : {2, 3}) {
        std::vector<int> mode(n, 0);
        mode[0] = k;
        const double value = evaluate(e.functional, fourier_mode("cos", mode, r), o.grid);
        double expected = kPi * (std::pow(k, 4) - k * k) / std::pow(r[0], 3);
        for (std::size_t j = 1; j < n; ++j) expected *= 2.0 * kPi * r[j];
        const double err = std::abs(value - expected) / std::abs(expected);
        ++cases;
        if (err >= worst) {
          worst = err;
          where = e.id + ",k=" + std::to_string(k);
        }
      }
    }
  }
  c.tolerance = 1e-9;
  c.expected = "(prod_{j>=2} 2 pi r_j) pi (k^4 - k^2) / r1^3";
  c.actual = "max relative error " + num(worst);
  c.pass = worst <= c.tolerance;
  c.detail = std::to_string(cases) + " cases; worst at " + where;
  return c;
}

CheckResult check_torus_wave_direction(const VerifyOptions& o) {
  CheckResult c = start("2", "torus wave direction n=2, p=1, r=(1,1), u=cos(s1-s2)");
  const std::vector<double> r = {1.0, 1.0};
  const LagrangianChart chart = make_torus(r, 1);
  const Functional f = main_functional(chart, true);
  const Functional lap = main_functional(chart, true, VariationTerm::laplacian);
  const TestFunction minus = fourier_mode("wave:F=cos,a=1,b=-1", {1, -1}, r);
  const TestFunction plus = fourier_mode("wave:F=cos,a=1,b=1", {1, 1}, r);
  const double value = evaluate(f, minus, o.grid);
  const double lap_value = evaluate(lap, minus, o.grid);
  const double expected = -8.0 * kPi * kPi;
  c.tolerance = 1e-9;
  c.expected = num(expected) + " (Laplacian term 0 within 1e-10)";
  c.actual = num(value) + " (Laplacian term " + num(lap_value) + ")";
  c.pass = std::abs(value - expected) <= c.tolerance && std::abs(lap_value) <= 1e-10;
  c.detail = "cos(s1+s2) gives " + num(evaluate(f, plus, o.grid)) + " with Laplacian term " +
             num(evaluate(lap, plus, o.grid)) + "; closed form for k=(1,-1): " +
             num(torus_mode_value(r, 1, {1, -1}));
  return c;
}

CheckResult check_torus_indefinite(const VerifyOptions& o) {
  CheckResult c = start("3", "indefinite tori for n >= 2, 0 < p < n");
  struct Case {
    std::vector<double> r;
    std::size_t p;
  };
  const std::vector<Case> cases = {{{1.0, 1.0}, 1}, {{1.0, 2.0}, 1}, {{1.0, 2.0, 3.0}, 1}, {{1.0, 2.0, 3.0}, 2}};
  std::size_t ok = 0;
  std::string detail;
  for (const Case& cs : cases) {
    const CatalogEntry e = torus_entry(cs.r, cs.p);
    const StabilityVerdict v = classify(e, Strategy::fourier_sweep, o.grid);
    bool good = v.label == VerdictLabel::indefinite && v.witness_pos && v.witness_neg;
    if (good) {
      // the slow path recomputes the induced geometry at every node
      const Functional slow = main_functional(*e.chart, false);
      auto find = [&](const std::string& id) {
        for (const TestFunction& u : e.probes) {
          if (u.id == id) return u;
        }
        for (const TestFunction& u : witness_library(e.functional.domains)) {
          if (u.id == id) return u;
        }
        throw std::logic_error("witness not found: " + id);
      };
      good = evaluate(slow, find(v.witness_pos->probe_id), o.grid) > 0.0 &&
             evaluate(slow, find(v.witness_neg->probe_id), o.grid) < 0.0;
    }
    ok += good ? 1 : 0;
    detail += e.id + ": " + to_string(v.label);
    if (v.witness_pos) detail += " +" + v.witness_pos->probe_id + "=" + num(v.witness_pos->value);
    if (v.witness_neg) detail += " -" + v.witness_neg->probe_id + "=" + num(v.witness_neg->value);
    detail += "; ";
  }
  c.tolerance = Tolerances{}.witness_relative;
  c.expected = "indefinite with both witnesses, signs reproduced on the slow path (" + std::to_string(cases.size()) +
               " cases)";
  c.actual = std::to_string(ok) + "/" + std::to_string(cases.size());
  c.pass = ok == cases.size();
  c.detail = detail;
  return c;
}

CheckResult check_hyperbola_products(const VerifyOptions& o) {
  CheckResult c = start("4", "products of hyperbolas H^n");
  bool pass = true;
  std::string detail;
  double worst_residual = 0.0;
  struct Case {
    std::vector<double> r;
    std::vector<int> eps;
  };
  for (const Case& cs : std::vector<Case>{{{1.0}, {1}}, {{2.0}, {-1}}, {{1.0, 3.0}, {1, 1}}, {{1.0, 3.0}, {1, -1}}}) {
    const CatalogEntry e = hyperbola_entry(cs.r, cs.eps);
    const StabilityVerdict v = classify(e, Strategy::sos_certificate, o.grid);
    const bool good = v.label == VerdictLabel::negative_definite && v.certificate_residual <= 1e-10;
    worst_residual = std::max(worst_residual, v.certificate_residual);
    pass = pass && good;
    detail += e.id + ": " + to_string(v.label) + " residual " + num(v.certificate_residual) + "; ";
  }
  for (const Case& cs : std::vector<Case>{{{1.0, 1.0, 1.0}, {1, 1, 1}}, {{1.0, 2.0, 0.5, 1.5}, {1, -1, 1, -1}}}) {
    const std::size_t n = cs.r.size();
    const CatalogEntry e = hyperbola_entry(cs.r, cs.eps);
    const StabilityVerdict v = classify(e, Strategy::fourier_sweep, o.grid);
    const HyperbolaMatrixAnalysis m = hyperbola_matrix_analysis(cs.r, cs.eps);
    const double nn = static_cast<double>(n);
    const bool matrix_ok = std::abs(m.w_value - (2.0 * nn - nn * nn)) <= 1e-12 * nn * nn &&
                           std::abs(m.e1_value - 1.0 / (cs.r[0] * cs.r[0])) <= 1e-12 && m.negative >= 1;
    const bool good = v.label == VerdictLabel::indefinite && v.witness_pos && v.witness_neg && matrix_ok;
    pass = pass && good;
    detail += e.id + ": " + to_string(v.label) + " w^T M_Q w=" + num(m.w_value) + " e1=" + num(m.e1_value);
    if (v.witness_pos) detail += " +" + v.witness_pos->probe_id;
    if (v.witness_neg) detail += " -" + v.witness_neg->probe_id;
    detail += "; ";
  }
  c.tolerance = 1e-10;
  c.expected = "H^1, H^2 negative_definite (certificate residual <= 1e-10); H^3, H^4 indefinite, w-value 2n-n^2";
  c.actual = pass ? "as expected, max residual " + num(worst_residual) : "mismatch, max residual " + num(worst_residual);
  c.pass = pass;
  c.detail = detail;
  return c;
}

CheckResult check_mq_oracle(const VerifyOptions& o) {
  CheckResult c = start("5", "M_Q against the direct expansion of Q");
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> radius(0.2, 3.0), coeff(-1.0, 1.0);
  std::uniform_int_distribution<int> dim(2, 6), coin(0, 1);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = static_cast<std::size_t>(dim(rng));
    std::vector<double> r(n);
    std::vector<int> s(n);
    for (std::size_t j = 0; j < n; ++j) {
      r[j] = radius(rng);
      s[j] = coin(rng) ? 1 : -1;
    }
    Eigen::VectorXd w(static_cast<Eigen::Index>(n));
    for (Eigen::Index j = 0; j < w.size(); ++j) w(j) = coeff(rng);
    const HyperbolaMatrixAnalysis m = hyperbola_matrix_analysis(r, s);
    const double lhs = w.dot(m.m_q * w);
    const double rhs = hyperbola_q(r, s, w);
    // relative to the sum of absolute term magnitudes, since Q itself may cancel to ~0
    const double scale = (m.m_q.cwiseAbs() * w.cwiseAbs()).dot(w.cwiseAbs());
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  const HyperbolaMatrixAnalysis m3 = hyperbola_matrix_analysis({1.0, 1.0, 1.0}, {1, 1, 1});
  const bool eig_ok = std::abs(m3.eigenvalues(0) + 1.0) <= 1e-12 && std::abs(m3.eigenvalues(1) - 2.0) <= 1e-12 &&
                      std::abs(m3.eigenvalues(2) - 2.0) <= 1e-12;
  c.tolerance = 1e-12;
  c.expected = "relative difference <= 1e-12; n=3 eigenvalues {-1,2,2}, inertia (2,1)";
  c.actual = "max relative difference " + num(worst) + "; eigenvalues {" + num(m3.eigenvalues(0)) + "," +
             num(m3.eigenvalues(1)) + "," + num(m3.eigenvalues(2)) + "}, inertia (" + std::to_string(m3.positive) +
             "," + std::to_string(m3.negative) + ")";
  c.pass = worst <= c.tolerance && eig_ok && m3.positive == 2 && m3.negative == 1;
  c.detail = "1000 random vectors, n in [2,6], radii in [0.2,3], random branch signs; error relative to sum |M_ij w_i w_j|";
  return c;
}

namespace {

/// Pullback of a constant metric eta under s -> (s1 + 0.3 sin s2, s2 + 0.2 sin s1): flat, not constant.
MetricField warped_flat_metric(double eta2) {
  auto g = [eta2](std::span<const double> s) {
    SmallMat d(2, 2);
    d << 1.0, 0.3 * std::cos(s[1]), 0.2 * std::cos(s[0]), 1.0;
    SmallMat eta = SmallMat::Zero(2, 2);
    eta(0, 0) = 1.0;
    eta(1, 1) = eta2;
    return SmallMat(d.transpose() * eta * d);
  };
  auto ric = [](std::span<const double>) { return SmallMat(SmallMat::Zero(2, 2)); };
  return MetricField::from_function(2, g, ric);
}

}  // namespace

CheckResult check_reilly_bochner(const VerifyOptions& o) {
  CheckResult c = start("6", "Reilly (integral) and Bochner (pointwise) identities on flat metrics");
  const std::vector<AxisDomain> torus = {AxisDomain::circle(2.0 * kPi), AxisDomain::circle(2.0 * kPi)};
  SmallMat def(2, 2), indef(2, 2);
  def << 1.0, 0.3, 0.3, 2.0;
  indef << 1.0, 0.4, 0.4, -1.0;
  const MetricField metrics[2] = {MetricField::constant_metric(def), MetricField::constant_metric(indef)};
  const MetricField warped[2] = {warped_flat_metric(1.0), warped_flat_metric(-1.0)};
  std::mt19937_64 rng(o.seed + 1);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  double worst_reilly = 0.0, worst_bochner = 0.0;
  for (unsigned i = 0; i < 20; ++i) {
    const TestFunction u = random_trig_polynomial("trig:" + std::to_string(i), {1.0, 1.0}, 3, o.seed * 1000 + i);
    const MetricField& m = metrics[i % 2];
    // normalize by the size of the integrals involved
    const double scale = std::max(1.0, std::abs(evaluate(reilly_functional(m, torus), u, o.grid)));
    const double lap2 = integrate(
        [&](std::span<const double> s) {
          const double l = laplacian(u, m, s);
          return l * l;
        },
        torus, o.grid);
    worst_reilly = std::max(worst_reilly, std::abs(reilly_residual(u, m, torus, o.grid)) / std::max(scale, lap2));
    const double s[2] = {angle(rng), angle(rng)};
    worst_bochner = std::max(worst_bochner, std::abs(bochner_residual(u, warped[i % 2], s)));
  }
  c.tolerance = 1e-9;
  c.expected = "Reilly <= 1e-9, Bochner <= 1e-5";
  c.actual = "Reilly " + num(worst_reilly) + ", Bochner " + num(worst_bochner);
  c.pass = worst_reilly <= 1e-9 && worst_bochner <= 1e-5;
  c.detail =
      "20 random trigonometric polynomials; Reilly on constant definite and indefinite metrics (relative to "
      "int (Lap u)^2), Bochner on flat warped definite and indefinite metrics at random points";
  return c;
}

CheckResult check_ricci_flat_planes(const VerifyOptions& o) {
  CheckResult c = start("7", "Lagrangian planes in C^2_p and D^2");
  struct Case {
    AmbientKind kind;
    std::size_t p;
  };
  double worst = 0.0;
  bool signs_ok = true;
  std::string detail;
  for (const Case& cs : {Case{AmbientKind::pseudo_kahler, 0}, Case{AmbientKind::pseudo_kahler, 1},
                         Case{AmbientKind::para_kahler, 0}}) {
    const CatalogEntry e = plane_entry(cs.kind, 2, cs.p);
    const InducedGeometry geo = induced_geometry(*e.chart, std::vector<double>{0.0, 0.0});
    const MetricField m = MetricField::constant_metric(geo.g);
    for (unsigned i = 0; i < 10; ++i) {
      const TestFunction u = random_poly_bump("bump:" + std::to_string(i), 2, 3, 1.0, o.seed * 100 + i);
      const double value = evaluate(e.functional, u, o.grid);
      const double oracle = geo.eps * geo.vol_density *
                            integrate(
                                [&](std::span<const double> s) {
                                  const double l = laplacian(u, m, s);
                                  return l * l;
                                },
                                e.functional.domains, o.grid, u.halfwidth);
      worst = std::max(worst, rel_err(value, oracle));
      signs_ok = signs_ok && (value * geo.eps > 0.0);
    }
    const StabilityVerdict v = classify(e, Strategy::sos_certificate, o.grid);
    const VerdictLabel want = geo.eps > 0 ? VerdictLabel::positive_definite : VerdictLabel::negative_definite;
    signs_ok = signs_ok && v.label == want;
    detail += e.id + ": " + to_string(v.label) + "; ";
  }
  c.tolerance = 1e-10;
  c.expected = "d2V = eps int (Lap u)^2; minimizer in C^2_p, maximizer in D^2";
  c.actual = "max relative difference " + num(worst) + (signs_ok ? ", signs match" : ", sign mismatch");
  c.pass = worst <= c.tolerance && signs_ok;
  c.detail = detail + "10 random bumps per plane";
  return c;
}

CheckResult check_sphere_tube_spectral(const VerifyOptions& o) {
  CheckResult c = start("8", "sphere tube under G: spectral criterion");
  const SpectralResult sr = spectral_criterion({1.0, 1.0}, 2.0);
  const CatalogEntry e = tube_entry("S3", "closed", TubeMetric::G);
  double worst = 0.0;
  for (int k = 1; k <= 5; ++k) {
    const double value = evaluate(e.functional, fourier_mode("cos", {k, 0}, {1.0, 1.0}), o.grid);
    const double lambda = k * k;
    worst = std::max(worst, rel_err(value, 2.0 * kPi * kPi * lambda * (lambda - 2.0)));
  }
  const double diag = evaluate(e.functional, fourier_mode("cos(s+t)", {1, 1}, {1.0, 1.0}), o.grid);
  const StabilityVerdict v = classify(e, Strategy::spectral_criterion, o.grid);
  c.tolerance = 1e-9;
  c.expected = "lambda1 = 1 < c = 2 (unstable); d2A(cos ks) = 2 pi^2 k^2 (k^2 - 2), k <= 5";
  c.actual = "lambda1 = " + num(sr.lambda1) + (sr.stable ? " stable" : " unstable") + ", max relative error " +
             num(worst) + ", verdict " + to_string(v.label);
  c.pass = sr.lambda1 == 1.0 && !sr.stable && worst <= c.tolerance && v.label == VerdictLabel::indefinite;
  c.detail = "cos(s+t) gives " + num(diag) + "; negative witness " +
             (v.witness_neg ? v.witness_neg->probe_id : std::string("none"));
  return c;
}

std::vector<TubeTableLine> tube_table(const GridSpec& grid) {
  std::vector<TubeTableLine> out;
  for (const TubeRow& row : tube_rows()) {
    TubeTableLine line;
    line.space = row.space;
    line.row = row.row;
    line.eps = row.eps;
    line.topology = row.topology;
    line.g_expected = to_string(row.g_label);
    line.gprime_expected = to_string(row.gprime_label);
    const StabilityVerdict g = classify(tube_entry(row.space, row.row, TubeMetric::G), Strategy::automatic, grid);
    const StabilityVerdict gp =
        classify(tube_entry(row.space, row.row, TubeMetric::Gprime), Strategy::automatic, grid);
    line.g_actual = to_string(g.label);
    line.gprime_actual = to_string(gp.label);
    line.g_evidence = verdict_evidence(g);
    line.gprime_evidence = verdict_evidence(gp);
    out.push_back(std::move(line));
  }
  return out;
}

nlohmann::json to_json(const TubeTableLine& l) {
  return {{"space", l.space},
          {"row", l.row},
          {"eps", l.eps},
          {"topology", l.topology},
          {"G", {{"expected", l.g_expected}, {"actual", l.g_actual}, {"evidence", l.g_evidence}}},
          {"Gprime", {{"expected", l.gprime_expected}, {"actual", l.gprime_actual}, {"evidence", l.gprime_evidence}}},
          {"match", l.matches()}};
}

CheckResult check_tube_table(const VerifyOptions& o) {
  CheckResult c = start("9", "geodesic tube table, G and G' columns");
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<TubeTableLine> table = tube_table(o.grid);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::size_t ok = 0;
  std::string detail;
  for (const TubeTableLine& l : table) {
    ok += l.matches() ? 1 : 0;
    if (!l.matches()) {
      detail += l.space + ":" + l.row + " got (" + l.g_actual + "," + l.gprime_actual + ") want (" + l.g_expected +
                "," + l.gprime_expected + "); ";
    }
  }
  c.tolerance = 10.0;
  c.expected = "8/8 rows match, runtime <= 10 s";
  c.actual = std::to_string(ok) + "/" + std::to_string(table.size()) + " rows match" +
             (seconds <= 10.0 ? ", within runtime bound" : ", runtime bound exceeded");
  c.pass = ok == table.size() && table.size() == 8 && seconds <= 10.0;
  c.detail = detail.empty() ? "all rows recomputed from the (eps1..eps4) functional" : detail;
  return c;
}

CheckResult check_tangent_bundle(const VerifyOptions& o) {
  CheckResult c = start("10", "rank-one surfaces in tangent bundles");
  std::string detail;
  // (a) geodesic in a surface with K = -1
  const CatalogEntry neg = bundle_entry(CurveData::constant(0.0, -1.0));
  const StabilityVerdict va = classify(neg, Strategy::sos_certificate, o.grid);
  const bool a_ok = va.label == VerdictLabel::positive_definite && va.certificate_residual <= 1e-10;
  detail += "(a) " + to_string(va.label) + " residual " + num(va.certificate_residual) + "; ";

  // (b) circle in the flat plane
  const CurveData circle = CurveData::circle_in_plane(1.0);
  const WirtingerResult wb = wirtinger_bound(circle, WirtingerBranch::wirtinger_only);
  const CatalogEntry ce = bundle_entry(circle);
  const std::vector<AxisDomain>& dom = ce.functional.domains;
  const std::size_t n = 2;
  auto diag_form = [n](std::size_t slot, double w) {
    JetForm b = JetForm::Zero(static_cast<Eigen::Index>(jet_size(n)), static_cast<Eigen::Index>(jet_size(n)));
    b(static_cast<Eigen::Index>(slot), static_cast<Eigen::Index>(slot)) = w;
    return b;
  };
  const Functional lead{"4u_st^2", dom, [b = diag_form(hess_slot(n, 0, 1), 4.0)](std::span<const double>) { return b; },
                        true};
  const Functional ut2{"u_t^2", dom, [b = diag_form(2, 1.0)](std::span<const double>) { return b; }, true};
  const double bound = 16.0 * kPi * kPi / (circle.length * circle.length);
  double worst = 0.0;
  std::size_t modes = 0;
  for (const TestFunction& u : witness_library(dom)) {
    if (u.id.find("fourier") == std::string::npos) continue;  // s-frequency >= 1 only
    const double a = evaluate(lead, u, o.grid);
    const double b = evaluate(ut2, u, o.grid);
    worst = std::min(worst, (a - bound * b) / std::max(1.0, a));
    ++modes;
  }
  const bool b_ok = wb.verdict == "stable" && std::abs(wb.sup_potential - 1.0) <= 1e-12 && worst >= -1e-9;
  detail += "(b) sup " + num(wb.sup_potential) + " threshold " + num(*wb.threshold) + " " + wb.verdict + ", " +
            std::to_string(modes) + " modes, min (A - bound B)/A " + num(worst) + "; ";

  // (c) open curve with kappa = 1, K = 0
  const CatalogEntry open = bundle_entry(CurveData::constant(1.0, 0.0));
  bool c_ok = !open.scaling.empty();
  if (c_ok) {
    const ScalingReport r = scaling_probe(open.functional, open.scaling.front(), o.grid);
    const auto [lo, hi] = std::minmax_element(r.parameters.begin(), r.parameters.end());
    c_ok = r.found_both_signs() && *lo <= 0.05 + 1e-12 && *hi >= 20.0 - 1e-9;
    detail += "(c) " + std::to_string(r.sign_changes.size()) + " sign change(s) over [" + num(*lo) + "," + num(*hi) + "]";
  }
  c.tolerance = 1e-9;
  c.expected = "(a) positive_definite certificate; (b) stable and Fourier bound holds; (c) both signs";
  c.actual = std::string("(a) ") + (a_ok ? "ok" : "fail") + ", (b) " + (b_ok ? "ok" : "fail") + ", (c) " +
             (c_ok ? "ok" : "fail");
  c.pass = a_ok && b_ok && c_ok;
  c.detail = detail;
  return c;
}

CheckResult check_structural(const VerifyOptions&) {
  CheckResult c = start("11", "structural properties of the flat catalog charts");
  struct Pair {
    LagrangianChart closed;
    LagrangianChart dual;
  };
  std::vector<Pair> charts;
  for (std::size_t n = 1; n <= 3; ++n) {
    const std::vector<double> r = {1.0, 2.0, 0.5};
    const std::vector<double> rn(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(n));
    for (std::size_t p = 0; p <= n; ++p) {
      charts.push_back({make_torus(rn, p), make_torus(rn, p, OracleKind::dual_number)});
    }
  }
  const std::vector<std::vector<int>> sign_sets = {{1}, {1, -1}, {1, 1, -1}, {-1, 1, 1, -1}};
  const std::vector<double> hr = {1.0, 3.0, 0.7, 1.3};
  for (const auto& s : sign_sets) {
    const std::vector<double> rn(hr.begin(), hr.begin() + static_cast<std::ptrdiff_t>(s.size()));
    charts.push_back({make_hyperbola_product(rn, s), make_hyperbola_product(rn, s, OracleKind::dual_number)});
  }
  std::vector<LagrangianChart> planes = {make_lagrangian_plane(AmbientKind::pseudo_kahler, 2, 0),
                                         make_lagrangian_plane(AmbientKind::pseudo_kahler, 2, 1),
                                         make_lagrangian_plane(AmbientKind::para_kahler, 2)};
  double lag = 0.0, hmin = 0.0, tri = 0.0, dual = 0.0;
  auto structural = [&](const LagrangianChart& ch) {
    const auto pts = local_samples(ch.domains(), ch.dim() >= 3 ? 4 : 6, 2.0);
    lag = std::max(lag, check_lagrangian(ch, pts));
    hmin = std::max(hmin, check_h_minimal(ch, pts));
    tri = std::max(tri, trisymmetry_residual(ch, pts));
    return pts;
  };
  for (const Pair& pr : charts) {
    const auto pts = structural(pr.closed);
    structural(pr.dual);
    for (const auto& s : pts) {
      const InducedGeometry a = induced_geometry(pr.closed, s);
      const InducedGeometry b = induced_geometry(pr.dual, s);
      dual = std::max(dual, (a.g - b.g).cwiseAbs().maxCoeff());
    }
  }
  for (const LagrangianChart& ch : planes) structural(ch);
  c.tolerance = 1e-10;
  c.expected = "Lagrangian <= 1e-10, H-minimal <= 1e-8, tri-symmetry <= 1e-8, dual vs closed metric <= 1e-10";
  c.actual = "Lagrangian " + num(lag) + ", H-minimal " + num(hmin) + ", tri-symmetry " + num(tri) + ", dual " +
             num(dual);
  c.pass = lag <= 1e-10 && hmin <= 1e-8 && tri <= 1e-8 && dual <= 1e-10;
  c.detail = std::to_string(charts.size() * 2 + planes.size()) +
             " charts (tori, hyperbola products, planes); line axes sampled on [-2,2]";
  return c;
}

const std::vector<CheckSpec>& check_table() {
  static const std::vector<CheckSpec> table = {
      {"1", check_torus_mode_value},   {"2", check_torus_wave_direction}, {"3", check_torus_indefinite},
      {"4", check_hyperbola_products}, {"5", check_mq_oracle},            {"6", check_reilly_bochner},
      {"7", check_ricci_flat_planes},  {"8", check_sphere_tube_spectral}, {"9", check_tube_table},
      {"10", check_tangent_bundle},    {"11", check_structural},
  };
  return table;
}

bool VerifyReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

VerifyReport run_checks(const VerifyOptions& o) {
  VerifyReport r;
  for (const CheckSpec& spec : check_table()) {
    try {
      r.checks.push_back(spec.run(o));
    } catch (const std::exception& e) {
      CheckResult c = start(spec.id, "check raised an error");
      c.actual = std::string("error: ") + e.what();
      r.checks.push_back(c);
    }
  }
  return r;
}

VerifyReport run_verify(const VerifyOptions& o) {
  VerifyReport r = run_checks(o);
  if (!o.determinism) return r;
  CheckResult c = start("12", "byte-identical report across thread counts");
  const std::size_t before = thread_count();
  const std::size_t other = before == 1 ? 3 : 1;
  set_thread_count(other);
  const VerifyReport again = run_checks(o);
  set_thread_count(before);
  const std::string a = to_json(r).dump(2);
  const std::string b = to_json(again).dump(2);
  c.expected = "identical JSON";
  c.actual = a == b ? "identical" : "differs";
  c.pass = a == b;
  c.detail = "checks 1-11 re-run with a different worker count";
  r.checks.push_back(c);
  return r;
}

nlohmann::json to_json(const CheckResult& c) {
  return {{"id", c.id},         {"topic", c.topic},         {"expected", c.expected}, {"actual", c.actual},
          {"tolerance", c.tolerance}, {"pass", c.pass}, {"detail", c.detail}};
}

nlohmann::json to_json(const VerifyReport& r) {
  nlohmann::json out;
  out["checks"] = nlohmann::json::array();
  for (const CheckResult& c : r.checks) out["checks"].push_back(to_json(c));
  out["all_pass"] = r.all_pass();
  return out;
}

std::string to_csv(const VerifyReport& r) {
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"') q += '"';
      q += ch;
    }
    return q + "\"";
  };
  std::ostringstream os;
  os << "id,topic,expected,actual,tolerance,pass,detail\n";
  for (const CheckResult& c : r.checks) {
    os << c.id << ',' << quote(c.topic) << ',' << quote(c.expected) << ',' << quote(c.actual) << ','
       << num(c.tolerance) << ',' << (c.pass ? "true" : "false") << ',' << quote(c.detail) << '\n';
  }
  return os.str();
}

}  // namespace hstab
