#include "hstab/analyzer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hstab/variation.hpp"

namespace hstab {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string mode_id(const std::vector<int>& k) {
  std::string s = "fourier:k=";
  for (std::size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i]);
  return s;
}

/// Integer vectors with |k|_1 = level whose first nonzero entry is positive,
/// in descending lexicographic order.
std::vector<std::vector<int>> canonical_modes(std::size_t n, int level) {
  std::vector<std::vector<int>> out;
  std::vector<int> k(n, -level);
  while (true) {
    int total = 0;
    for (int v : k) total += std::abs(v);
    const auto first = std::find_if(k.begin(), k.end(), [](int v) { return v != 0; });
    if (total == level && first != k.end() && *first > 0) out.push_back(k);
    std::size_t i = 0;
    while (i < n && ++k[i] > level) k[i++] = -level;
    if (i == n) break;
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::vector<double> circle_radii(const std::vector<AxisDomain>& domains) {
  std::vector<double> r;
  for (const AxisDomain& d : domains) r.push_back(d.scale());
  return r;
}

}  // namespace

double torus_mode_value(const std::vector<double>& radii, std::size_t p, const std::vector<int>& k) {
  if (k.size() != radii.size()) throw std::invalid_argument("torus_mode_value: mode and radii differ in length");
  if (std::all_of(k.begin(), k.end(), [](int v) { return v == 0; })) {
    throw std::invalid_argument("torus_mode_value: zero mode");
  }
  if (p > radii.size()) throw std::invalid_argument("torus_mode_value: p out of range");
  double vol = 1.0, lap = 0.0, pair = 0.0, curv = 0.0;
  for (std::size_t j = 0; j < radii.size(); ++j) {
    const double eps = j < p ? -1.0 : 1.0;
    const double m = k[j] / radii[j];
    vol *= 2.0 * kPi * radii[j];
    lap += eps * m * m;
    pair += eps * m / radii[j];
    curv += m * m / (radii[j] * radii[j]);
  }
  return 0.5 * vol * (lap * lap + pair * pair - 2.0 * curv);
}

Strategy parse_strategy(const std::string& name) {
  if (name == "auto" || name == "automatic") return Strategy::automatic;
  if (name == "fourier_sweep") return Strategy::fourier_sweep;
  if (name == "scaling_probe") return Strategy::scaling_probe;
  if (name == "sos_certificate") return Strategy::sos_certificate;
  if (name == "spectral_criterion") return Strategy::spectral_criterion;
  throw std::invalid_argument("unknown strategy '" + name + "'");
}

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::automatic:
      return "auto";
    case Strategy::fourier_sweep:
      return "fourier_sweep";
    case Strategy::scaling_probe:
      return "scaling_probe";
    case Strategy::sos_certificate:
      return "sos_certificate";
    case Strategy::spectral_criterion:
      return "spectral_criterion";
  }
  return "auto";
}

nlohmann::json to_json(const StabilityVerdict& v) {
  using nlohmann::json;
  auto witness = [](const Witness& w) { return json{{"probe_id", w.probe_id}, {"value", w.value}, {"norm2", w.norm2}}; };
  json out;
  out["catalog_id"] = v.catalog_id;
  out["label"] = to_string(v.label);
  out["strategy"] = v.strategy;
  out["witnesses"] = json::array();
  for (const Witness& w : v.witnesses) out["witnesses"].push_back(witness(w));
  out["witness_pos"] = v.witness_pos ? witness(*v.witness_pos) : json(nullptr);
  out["witness_neg"] = v.witness_neg ? witness(*v.witness_neg) : json(nullptr);
  out["evidence"] = json::array();
  for (const EvidenceRecord& e : v.evidence) {
    out["evidence"].push_back({{"group", e.group},
                               {"basis_size", e.basis_size},
                               {"min_eigenvalue", e.min_eigenvalue},
                               {"max_eigenvalue", e.max_eigenvalue}});
  }
  out["certificate"] =
      v.certificate.empty() ? json(nullptr) : json{{"id", v.certificate}, {"residual", v.certificate_residual}};
  out["notes"] = v.notes;
  out["grid"] = {{"circle_nodes", v.grid.circle_nodes},
                 {"line_nodes", v.grid.line_nodes},
                 {"line_box", v.grid.line_box},
                 {"max_total_nodes", v.grid.max_total_nodes}};
  out["tolerances"] = {{"witness_relative", v.tolerances.witness_relative},
                       {"certificate_residual", v.tolerances.certificate_residual},
                       {"support", v.grid.support_tolerance}};
  return out;
}

std::vector<TestFunction> witness_library(const std::vector<AxisDomain>& domains) {
  const std::size_t n = domains.size();
  std::vector<std::size_t> circles, lines;
  for (std::size_t i = 0; i < n; ++i) (domains[i].is_circle() ? circles : lines).push_back(i);
  std::vector<TestFunction> lib;
  const std::vector<double> widths = {1.0, 0.5, 2.0, 0.25, 4.0};

  if (lines.empty()) {
    const std::vector<double> rho = circle_radii(domains);
    for (int level = 1; level <= 4; ++level) {
      for (const auto& k : canonical_modes(n, level)) lib.push_back(fourier_mode(mode_id(k), k, rho));
    }
    return lib;
  }

  // products of a line profile with a Fourier mode along the circle axes
  std::vector<std::vector<int>> circle_modes{std::vector<int>(circles.size(), 0)};
  for (int level = 1; level <= 4 && !circles.empty(); ++level) {
    for (const auto& k : canonical_modes(circles.size(), level)) circle_modes.push_back(k);
  }
  auto with_mode = [&](TestFunction base, const std::vector<int>& k) {
    if (std::all_of(k.begin(), k.end(), [](int v) { return v == 0; })) return base;
    std::vector<int> full(n, 0);
    std::vector<double> rho(n, 1.0);
    for (std::size_t c = 0; c < circles.size(); ++c) {
      full[circles[c]] = k[c];
      rho[circles[c]] = domains[circles[c]].scale();
    }
    TestFunction mode = fourier_mode(mode_id(full), full, rho);
    return product(base, mode);
  };

  for (const auto& k : circle_modes) {
    for (double w : widths) {
      std::vector<double> sig(n, 0.0);
      for (std::size_t i : lines) sig[i] = w;
      lib.push_back(with_mode(gaussian_product("gauss:sigma=" + fmt(w), sig), k));
    }
  }
  if (lines.size() >= 2) {
    for (std::size_t i : lines) {
      for (auto [wi, wo] : {std::pair{4.0, 0.5}, std::pair{0.5, 4.0}}) {
        std::vector<double> sig(n, 0.0);
        for (std::size_t j : lines) sig[j] = j == i ? wi : wo;
        lib.push_back(gaussian_product("gauss:axis=" + std::to_string(i) + ",sigma=" + fmt(wi) + "/" + fmt(wo), sig));
      }
    }
  }
  for (std::size_t i : lines) {
    for (int order : {1, 2}) {
      std::vector<double> hw(n, 0.0);
      for (std::size_t j : lines) hw[j] = (kBoxWidths + 2.0);
      lib.push_back(from_expression(
          "hermite:axis=" + std::to_string(i) + ",k=" + std::to_string(order), n,
          [i, order, lines, n](std::span<const Jet> s) {
            Jet out(n, 1.0);
            for (std::size_t j : lines) out = out * (j == i ? hermite_profile(s[j], 1.0, order) : gaussian_profile(s[j], 1.0));
            return out;
          },
          hw));
    }
  }
  return lib;
}

double h2_norm2(const std::vector<AxisDomain>& domains, const TestFunction& u, const GridSpec& grid) {
  const std::size_t n = domains.size();
  Functional h2{"h2", domains, [b = h2_form(n)](std::span<const double>) { return b; }, true};
  return evaluate(h2, u, grid);
}

bool ScalingReport::found_both_signs() const {
  const bool pos = std::any_of(values.begin(), values.end(), [](double v) { return v > 0.0; });
  const bool neg = std::any_of(values.begin(), values.end(), [](double v) { return v < 0.0; });
  return pos && neg;
}

TestFunction scaling_member(const ScalingFamily& family, double lambda) {
  TestFunction u = rescaled(family.base, std::pow(lambda, family.exponent), lambda, family.axes);
  u.id = family.id + ":lambda=" + fmt(lambda);
  return u;
}

ScalingReport scaling_probe(const Functional& f, const ScalingFamily& family, const GridSpec& grid) {
  ScalingReport r;
  r.family = family.id;
  for (double lambda : family.schedule) {
    r.parameters.push_back(lambda);
    r.values.push_back(evaluate(f, scaling_member(family, lambda), grid));
  }
  for (std::size_t i = 0; i + 1 < r.values.size(); ++i) {
    if ((r.values[i] > 0.0 && r.values[i + 1] < 0.0) || (r.values[i] < 0.0 && r.values[i + 1] > 0.0)) {
      r.sign_changes.push_back(i);
    }
  }
  return r;
}

SpectralResult spectral_criterion(const std::vector<double>& radii, double c, int bound) {
  const std::size_t n = radii.size();
  SpectralResult out;
  double rmax = 0.0;
  for (double r : radii) rmax = std::max(rmax, r);
  out.lambda1 = 1.0 / (rmax * rmax);
  out.stable = out.lambda1 >= c;
  for (int level = 1; level <= bound * static_cast<int>(n); ++level) {
    for (const auto& k : canonical_modes(n, level)) {
      if (std::any_of(k.begin(), k.end(), [bound](int v) { return std::abs(v) > bound; })) continue;
      double lambda = 0.0;
      for (std::size_t j = 0; j < n; ++j) lambda += (k[j] / radii[j]) * (k[j] / radii[j]);
      out.modes.push_back({k, lambda, lambda * (lambda - c)});
    }
  }
  std::stable_sort(out.modes.begin(), out.modes.end(),
                   [](const SpectralMode& a, const SpectralMode& b) { return a.lambda < b.lambda; });
  return out;
}

double hyperbola_q(const std::vector<double>& radii, const std::vector<int>& signs, const Eigen::VectorXd& du) {
  const std::size_t n = radii.size();
  double q = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double a = du(static_cast<Eigen::Index>(j));
    q += a * a / (radii[j] * radii[j]);
    for (std::size_t k = j + 1; k < n; ++k) {
      q -= 2.0 * signs[j] * signs[k] * a * du(static_cast<Eigen::Index>(k)) / (radii[j] * radii[k]);
    }
  }
  return q;
}

HyperbolaMatrixAnalysis hyperbola_matrix_analysis(const std::vector<double>& radii, const std::vector<int>& signs) {
  const std::size_t n = radii.size();
  if (n < 2) throw std::invalid_argument("hyperbola_matrix_analysis: needs n >= 2");
  if (signs.size() != n) throw std::invalid_argument("hyperbola_matrix_analysis: one sign per radius");
  const auto ni = static_cast<Eigen::Index>(n);
  HyperbolaMatrixAnalysis a;
  a.m_q = Eigen::MatrixXd::Zero(ni, ni);
  a.w = Eigen::VectorXd(ni);
  for (std::size_t i = 0; i < n; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    a.w(ii) = signs[i] * radii[i];
    for (std::size_t j = 0; j < n; ++j) {
      const auto jj = static_cast<Eigen::Index>(j);
      a.m_q(ii, jj) = -signs[i] * signs[j] / (radii[i] * radii[j]);
    }
    a.m_q(ii, ii) += 2.0 / (radii[i] * radii[i]);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a.m_q);
  a.eigenvalues = es.eigenvalues();
  a.eigenvectors = es.eigenvectors();
  const double scale = a.eigenvalues.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < ni; ++i) {
    const double ev = a.eigenvalues(i);
    if (ev > 1e-12 * scale) {
      ++a.positive;
    } else if (ev < -1e-12 * scale) {
      ++a.negative;
    } else {
      ++a.zero;
    }
  }
  a.w_value = a.w.dot(a.m_q * a.w);
  a.e1_value = a.m_q(0, 0);
  return a;
}

WirtingerResult wirtinger_bound(const CurveData& curve, WirtingerBranch branch) {
  if (branch == WirtingerBranch::wirtinger_only && !curve.closed) {
    throw std::invalid_argument("wirtinger_bound: the Wirtinger branch needs a closed curve");
  }
  WirtingerResult r;
  const double lo = curve.closed ? 0.0 : -kDefaultLineTruncation;
  const double hi = curve.closed ? curve.length : kDefaultLineTruncation;
  r.sup_potential = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 4096; ++i) {
    const double s = lo + (hi - lo) * i / 4096.0;
    const double k = curve.kappa(s);
    r.sup_potential = std::max(r.sup_potential, k * k + 2.0 * curve.K_along(s));
  }
  if (curve.closed) r.threshold = 16.0 * kPi * kPi / (curve.length * curve.length);
  r.verdict = "inconclusive";
  r.branch = "none";
  if (branch == WirtingerBranch::both && r.sup_potential <= 0.0) {
    r.verdict = "stable";
    r.branch = "nonpositive";
  } else if (r.threshold && r.sup_potential <= *r.threshold) {
    r.verdict = "stable";
    r.branch = "wirtinger";
  }
  return r;
}

namespace {

struct Search {
  const CatalogEntry& entry;
  const GridSpec& grid;
  const Tolerances& tol;
  StabilityVerdict& v;
  std::vector<TestFunction> evaluated;

  /// Evaluates u, records it, and updates the sign witnesses.
  void probe(const TestFunction& u) {
    Witness w{u.id, evaluate(entry.functional, u, grid), h2_norm2(entry.functional.domains, u, grid)};
    v.witnesses.push_back(w);
    evaluated.push_back(u);
    const double margin = tol.witness_relative * w.norm2;
    if (w.value > margin && !v.witness_pos) v.witness_pos = w;
    if (w.value < -margin && !v.witness_neg) v.witness_neg = w;
  }

  [[nodiscard]] bool both() const { return v.witness_pos && v.witness_neg; }
};

/// Normalized eigenvalue range of the form on the evaluated probes.
void add_evidence(const CatalogEntry& entry, const std::vector<TestFunction>& basis, const GridSpec& grid,
                  const std::string& group, StabilityVerdict& v) {
  if (basis.empty()) return;
  const std::size_t m = std::min<std::size_t>(basis.size(), 8);
  const std::vector<TestFunction> sub(basis.begin(), basis.begin() + static_cast<std::ptrdiff_t>(m));
  const Eigen::MatrixXd q = assemble_form(entry.functional, sub, grid);
  const Eigen::MatrixXd g = assemble_gram(entry.functional.dim(), entry.functional.domains, sub, grid);
  const Eigen::VectorXd d = g.diagonal().cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd qn = d.asDiagonal() * q * d.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (qn + qn.transpose()), Eigen::EigenvaluesOnly);
  v.evidence.push_back({group, m, es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff()});
}

std::vector<std::vector<double>> certificate_points(const std::vector<AxisDomain>& domains) {
  std::vector<AxisDomain> sampled = domains;
  return sample_grid(sampled, 17);
}

bool try_certificates(const CatalogEntry& entry, const Tolerances& tol, StabilityVerdict& v) {
  const auto points = certificate_points(entry.functional.domains);
  for (const SosCertificate& c : entry.certificates) {
    const CertificateCheck chk = check_certificate(entry.functional, c, points);
    if (chk.residual <= tol.certificate_residual && chk.min_weight >= 0.0) {
      v.label = c.sign > 0 ? VerdictLabel::positive_definite : VerdictLabel::negative_definite;
      v.certificate = c.id;
      v.certificate_residual = chk.residual;
      v.notes.push_back("kernel: " + c.kernel_reason);
      return true;
    }
    v.notes.push_back("certificate " + c.id + " rejected (residual " + fmt(chk.residual) + ")");
  }
  return false;
}

void run_sweep(Search& s) {
  for (const TestFunction& u : s.entry.probes) {
    if (s.both()) break;
    s.probe(u);
  }
  for (const TestFunction& u : witness_library(s.entry.functional.domains)) {
    if (s.both()) break;
    s.probe(u);
  }
}

void run_scaling(Search& s) {
  for (const ScalingFamily& fam : s.entry.scaling) {
    for (double lambda : fam.schedule) {
      s.probe(scaling_member(fam, lambda));
    }
  }
}

void run_spectral(Search& s) {
  const SpectralData& sd = *s.entry.spectral;
  const SpectralResult r = spectral_criterion(sd.radii, sd.c);
  std::ostringstream os;
  os << "lambda1 = " << r.lambda1 << ", c = " << sd.c;
  s.v.notes.push_back(os.str());
  if (r.stable) {
    s.v.label = sd.eps > 0 ? VerdictLabel::positive_definite : VerdictLabel::negative_definite;
    s.v.certificate = "spectral:lambda1>=c";
    return;
  }
  // first eigenfunction below c, then the first one above it
  bool have_neg = false, have_pos = false;
  for (const SpectralMode& m : r.modes) {
    const bool neg = m.value < 0.0, pos = m.value > 0.0;
    if ((neg && !have_neg) || (pos && !have_pos)) {
      s.probe(fourier_mode(mode_id(m.k), m.k, sd.radii));
      have_neg = have_neg || neg;
      have_pos = have_pos || pos;
    }
    if (have_neg && have_pos) break;
  }
}

}  // namespace

StabilityVerdict classify(const CatalogEntry& entry, Strategy strategy, const GridSpec& grid, const Tolerances& tol) {
  StabilityVerdict v;
  v.catalog_id = entry.id;
  v.grid = grid;
  v.tolerances = tol;
  for (const std::string& w : entry.warnings) v.notes.push_back("warning: " + w);
  if (strategy == Strategy::automatic) strategy = parse_strategy(entry.default_strategy);
  v.strategy = to_string(strategy);
  Search s{entry, grid, tol, v, {}};

  switch (strategy) {
    case Strategy::sos_certificate:
      if (!try_certificates(entry, tol, v)) v.notes.push_back("no valid sum-of-squares certificate");
      // a few library values document the sign on concrete functions
      for (const TestFunction& u : witness_library(entry.functional.domains)) {
        if (s.evaluated.size() >= 3) break;
        s.probe(u);
      }
      break;
    case Strategy::spectral_criterion:
      if (!entry.spectral) {
        v.notes.push_back("no spectral data for this entry");
        break;
      }
      run_spectral(s);
      break;
    case Strategy::scaling_probe:
      if (entry.scaling.empty()) v.notes.push_back("no scaling family for this entry");
      run_scaling(s);
      break;
    case Strategy::fourier_sweep:
    case Strategy::automatic:
      run_sweep(s);
      break;
  }

  if (v.certificate.empty()) {
    if (s.both()) {
      v.label = VerdictLabel::indefinite;
    } else if (strategy == Strategy::fourier_sweep && !entry.certificates.empty()) {
      try_certificates(entry, tol, v);
    }
  }
  if (v.label != VerdictLabel::indefinite && !v.certificate.empty()) {
    // a definite certificate must not coexist with a witness of the wrong sign
    const bool contradicted = v.label == VerdictLabel::positive_definite ? v.witness_neg.has_value()
                                                                         : v.witness_pos.has_value();
    if (contradicted) {
      v.notes.push_back("certificate contradicted by a witness; label withdrawn");
      v.label = VerdictLabel::inconclusive;
    }
  }
  add_evidence(entry, s.evaluated, grid, "probes", v);
  return v;
}

}  // namespace hstab
