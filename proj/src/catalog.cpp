#include "hstab/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "hstab/variation.hpp"

namespace hstab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string join_numbers(const std::vector<double>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

std::string join_signs(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += std::string(i ? "," : "") + (v[i] > 0 ? "+" : "-");
  return out;
}

void require_positive(const std::vector<double>& radii, const char* what) {
  if (radii.empty() || radii.size() > kMaxDim) throw CatalogError(std::string(what) + ": unsupported dimension");
  for (double r : radii) {
    if (!(r > 0.0)) throw CatalogError(std::string(what) + ": radii must be positive");
  }
}

}  // namespace

std::string to_string(VerdictLabel label) {
  switch (label) {
    case VerdictLabel::positive_definite:
      return "positive_definite";
    case VerdictLabel::negative_definite:
      return "negative_definite";
    case VerdictLabel::indefinite:
      return "indefinite";
    case VerdictLabel::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

LagrangianChart make_torus(const std::vector<double>& radii, std::size_t p, OracleKind oracle) {
  require_positive(radii, "torus");
  const std::size_t n = radii.size();
  if (p > n) throw CatalogError("torus: p out of range");
  std::vector<AxisDomain> domains;
  for (double r : radii) domains.push_back(AxisDomain::circle(kTwoPi * r));
  std::string id = "torus:n=" + std::to_string(n) + ",r=" + join_numbers(radii) + ",p=" + std::to_string(p);
  ImmersionOracle f;
  if (oracle == OracleKind::closed_form) {
    f = [radii, n](std::span<const double> s) {
      ImmersionJet out;
      out.n = n;
      for (std::size_t j = 0; j < n; ++j) {
        const double r = radii[j];
        const double c = std::cos(s[j] / r), sn = std::sin(s[j] / r);
        out.f[2 * j] = r * c;
        out.f[2 * j + 1] = r * sn;
        out.first[j][2 * j] = -sn;
        out.first[j][2 * j + 1] = c;
        out.second[j][j][2 * j] = -c / r;
        out.second[j][j][2 * j + 1] = -sn / r;
      }
      return out;
    };
  } else {
    f = make_dual_oracle(n, [radii, n](std::span<const Jet> s) {
      std::vector<Jet> out;
      for (std::size_t j = 0; j < n; ++j) {
        const Jet phase = s[j] / radii[j];
        out.push_back(radii[j] * cos(phase));
        out.push_back(radii[j] * sin(phase));
      }
      return out;
    });
  }
  return LagrangianChart(std::move(id), AmbientFlat::pseudo_kahler(n, p), std::move(domains), std::move(f), oracle,
                         true);
}

LagrangianChart make_hyperbola_product(const std::vector<double>& radii, const std::vector<int>& branch_signs,
                                       OracleKind oracle) {
  require_positive(radii, "hyperbola");
  const std::size_t n = radii.size();
  if (branch_signs.size() != n) throw CatalogError("hyperbola: one branch sign per radius");
  for (int e : branch_signs) {
    if (e != 1 && e != -1) throw CatalogError("hyperbola: branch signs must be +1 or -1");
  }
  std::vector<AxisDomain> domains(n, AxisDomain::line(kDefaultLineTruncation));
  std::string id =
      "hyperbola:n=" + std::to_string(n) + ",r=" + join_numbers(radii) + ",eps=" + join_signs(branch_signs);
  ImmersionOracle f;
  if (oracle == OracleKind::closed_form) {
    f = [radii, branch_signs, n](std::span<const double> s) {
      ImmersionJet out;
      out.n = n;
      for (std::size_t j = 0; j < n; ++j) {
        const double r = radii[j];
        // r ex(tau s / r): cosh + tau sinh for eps = +1, sinh + tau cosh for eps = -1
        const ParaComplex z = pc_exp_tau(s[j] / r, branch_signs[j]);
        const ParaComplex dz{z.y, z.x};  // d/dt ex(tau t) = tau ex(tau t)
        out.f[2 * j] = r * z.x;
        out.f[2 * j + 1] = r * z.y;
        out.first[j][2 * j] = dz.x;
        out.first[j][2 * j + 1] = dz.y;
        out.second[j][j][2 * j] = z.x / r;
        out.second[j][j][2 * j + 1] = z.y / r;
      }
      return out;
    };
  } else {
    f = make_dual_oracle(n, [radii, branch_signs, n](std::span<const Jet> s) {
      std::vector<Jet> out;
      for (std::size_t j = 0; j < n; ++j) {
        const Jet t = s[j] / radii[j];
        if (branch_signs[j] > 0) {
          out.push_back(radii[j] * cosh(t));
          out.push_back(radii[j] * sinh(t));
        } else {
          out.push_back(radii[j] * sinh(t));
          out.push_back(radii[j] * cosh(t));
        }
      }
      return out;
    });
  }
  return LagrangianChart(std::move(id), AmbientFlat::para_kahler(n), std::move(domains), std::move(f), oracle, true);
}

LagrangianChart make_lagrangian_plane(AmbientKind kind, std::size_t n, std::size_t p) {
  if (n == 0 || n > kMaxDim) throw CatalogError("plane: unsupported dimension");
  AmbientFlat amb = kind == AmbientKind::pseudo_kahler ? AmbientFlat::pseudo_kahler(n, p) : AmbientFlat::para_kahler(n);
  if (kind == AmbientKind::para_kahler && p != 0) throw CatalogError("plane: p applies to pseudo-Kaehler planes only");
  std::string id = kind == AmbientKind::pseudo_kahler
                       ? "plane:kind=pk,n=" + std::to_string(n) + ",p=" + std::to_string(p)
                       : "plane:kind=para,n=" + std::to_string(n);
  ImmersionOracle f = [n](std::span<const double> s) {
    ImmersionJet out;
    out.n = n;
    for (std::size_t j = 0; j < n; ++j) {
      out.f[2 * j] = s[j];
      out.first[j][2 * j] = 1.0;
    }
    return out;
  };
  return LagrangianChart(std::move(id), std::move(amb), std::vector<AxisDomain>(n, AxisDomain::line(kDefaultLineTruncation)),
                         std::move(f), OracleKind::closed_form, true);
}

CurveData CurveData::circle_in_plane(double radius) {
  if (!(radius > 0.0)) throw CatalogError("circle curve: radius must be positive");
  CurveData c;
  std::ostringstream os;
  os << "circle of radius " << radius << " in the flat plane";
  c.description = os.str();
  c.kappa = [radius](double) { return 1.0 / radius; };
  c.K_along = [](double) { return 0.0; };
  c.closed = true;
  c.length = kTwoPi * radius;
  return c;
}

CurveData CurveData::constant(double kappa, double K, std::optional<double> closed_length) {
  CurveData c;
  std::ostringstream os;
  os << "curve with kappa = " << kappa << ", K = " << K;
  if (closed_length) os << ", closed of length " << *closed_length;
  c.description = os.str();
  c.kappa = [kappa](double) { return kappa; };
  c.K_along = [K](double) { return K; };
  if (closed_length) {
    if (!(*closed_length > 0.0)) throw CatalogError("curve: length must be positive");
    c.closed = true;
    c.length = *closed_length;
  }
  return c;
}

const std::vector<TubeRow>& tube_rows() {
  using K = AxisDomain::Kind;
  using L = VerdictLabel;
  static const std::vector<TubeRow> rows = {
      {"S3", "closed", {1, 1, 1, 1}, K::circle, K::circle, L::indefinite, L::positive_definite, "torus"},
      {"dS3", "closed-definite", {1, 1, -1, -1}, K::circle, K::line, L::indefinite, L::indefinite, "cylinder"},
      {"dS3", "closed-indefinite", {1, -1, 1, -1}, K::circle, K::line, L::indefinite, L::indefinite, "cylinder"},
      {"dS3", "unbounded", {-1, 1, -1, 1}, K::line, K::circle, L::indefinite, L::indefinite, "cylinder"},
      {"AdS3", "closed-indefinite", {1, -1, -1, 1}, K::circle, K::circle, L::indefinite, L::negative_definite, "torus"},
      {"AdS3", "unbounded-indefinite", {-1, 1, 1, -1}, K::line, K::line, L::negative_definite, L::indefinite, "plane"},
      {"AdS3", "unbounded-definite", {-1, -1, -1, -1}, K::line, K::line, L::positive_definite, L::indefinite, "plane"},
      {"H3", "unbounded", {-1, -1, 1, 1}, K::line, K::circle, L::indefinite, L::indefinite, "cylinder"},
  };
  return rows;
}

const TubeRow& find_tube_row(const std::string& space, const std::string& row) {
  for (const TubeRow& r : tube_rows()) {
    if (r.space == space && r.row == row) return r;
  }
  throw CatalogError("tube: no table row " + space + ":" + row);
}

namespace {

std::vector<AxisDomain> tube_domains(const TubeRow& row) {
  auto make = [](AxisDomain::Kind k) {
    return k == AxisDomain::Kind::circle ? AxisDomain::circle(kTwoPi) : AxisDomain::line(kDefaultLineTruncation);
  };
  return {make(row.s_kind), make(row.t_kind)};
}

/// Coefficients of the tube functional as (square form, weight) pairs.
struct TubeTerms {
  LinearJetForm lead{2};
  double lead_w = 0.0;
  double us_w = 0.0;
  double ut_w = 0.0;
};

TubeTerms tube_terms(const TubeRow& row, TubeMetric metric) {
  const auto [e1, e2, e3, e4] = row.eps;
  TubeTerms t;
  if (metric == TubeMetric::G) {
    const double eps = e1 * e3;
    t.lead.second(0, 0, e3).second(1, 1, e2);
    t.lead_w = eps;
    t.us_w = -2.0 * eps * e1;
    t.ut_w = -2.0 * eps * e4;
  } else {
    const double eps = e1 * e2;
    t.lead.second(0, 1, 2.0);  // (2 u_st)^2 = 4 u_st^2
    t.lead_w = eps;
    t.us_w = 2.0 * eps * e1;
    t.ut_w = 2.0 * eps * e4;
  }
  return t;
}

LinearJetForm partial(std::size_t n, std::size_t i) { return LinearJetForm(n).first(i, 1.0); }

std::function<double(std::span<const double>)> constant_weight(double w) {
  return [w](std::span<const double>) { return w; };
}

}  // namespace

Functional make_geodesic_tube(const TubeRow& row, TubeMetric metric) {
  const TubeTerms t = tube_terms(row, metric);
  FormBuilder b(2);
  b.add_square(t.lead_w, t.lead).add_square(t.us_w, partial(2, 0)).add_square(t.ut_w, partial(2, 1));
  const std::string id = "tube:" + row.space + ":" + row.row + ":" + (metric == TubeMetric::G ? "G" : "Gprime");
  return Functional{id, tube_domains(row), [form = b.form()](std::span<const double>) { return form; }, true};
}

Functional make_geodesic_tube(const std::string& space, const std::string& row, TubeMetric metric) {
  return make_geodesic_tube(find_tube_row(space, row), metric);
}

namespace {

std::vector<AxisDomain> bundle_domains(const CurveData& curve) {
  return {curve.closed ? AxisDomain::circle(curve.length) : AxisDomain::line(kDefaultLineTruncation),
          AxisDomain::line(kDefaultLineTruncation)};
}

/// The leading linear form: 2 u_st for a = 0, and Lap u = -2 u_st + 2 a kappa u_tt otherwise.
LinearJetForm bundle_lead(const CurveData& curve, double s) {
  LinearJetForm l(2);
  if (!curve.a_nonzero) return l.second(0, 1, 2.0);
  const double a = curve.a_profile ? curve.a_profile(s) : 0.0;
  return l.second(0, 1, -2.0).second(1, 1, 2.0 * a * curve.kappa(s));
}

double bundle_potential(const CurveData& curve, double s) {
  const double k = curve.kappa(s);
  return k * k + 2.0 * curve.K_along(s);
}

}  // namespace

Functional make_rank_one_bundle(const CurveData& curve) {
  std::string id = "bundle:" + curve.description;
  return Functional{id, bundle_domains(curve),
                    [curve](std::span<const double> s) {
                      FormBuilder b(2);
                      b.add_square(1.0, bundle_lead(curve, s[0]));
                      b.add_square(-bundle_potential(curve, s[0]), partial(2, 1));
                      return b.form();
                    },
                    false};
}

TestFunction hyperbola_negative_probe(const std::vector<double>& radii, const std::vector<int>& signs) {
  const std::size_t n = radii.size();
  if (n < 3) throw CatalogError("hyperbola probe: needs n >= 3");
  Eigen::VectorXd w(static_cast<Eigen::Index>(n));
  double tr = 0.0, w2 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    w(static_cast<Eigen::Index>(j)) = signs[j] * radii[j];
    tr += 1.0 / (radii[j] * radii[j]);
    w2 += radii[j] * radii[j];
  }
  const double nn = static_cast<double>(n);
  const double wq = (2.0 * nn - nn * nn) / w2;  // unit-vector value of M_Q along w
  const double kappa = -2.0 * tr / wq;
  const Eigen::MatrixXd a =
      Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)) + kappa * w * w.transpose() / w2;
  return correlated_gaussian("gauss:along-w", a);
}

namespace {

std::vector<TestFunction> torus_probes(const std::vector<double>& radii) {
  std::vector<TestFunction> out;
  if (radii.size() == 2) {
    out.push_back(fourier_mode("wave:F=cos,a=1,b=1", {1, 1}, radii));
    out.push_back(fourier_mode("wave:F=cos,a=1,b=-1", {1, -1}, radii));
  }
  return out;
}

std::vector<double> log_schedule(double lo, double hi, std::size_t count) {
  std::vector<double> out;
  for (std::size_t i = 0; i < count; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(count - 1);
    out.push_back(lo * std::pow(hi / lo, f));
  }
  return out;
}

SosCertificate plane_certificate(const LagrangianChart& chart) {
  const InducedGeometry geo = induced_geometry(chart, std::vector<double>(chart.dim(), 0.0));
  const JetOperators ops = jet_operators(chart.dim(), geo.g_inv, geo.christoffel);
  SosCertificate c;
  c.id = "sos:eps*(Lap u)^2";
  c.sign = geo.eps;
  c.terms.push_back({constant_weight(geo.vol_density), ops.laplacian});
  c.kernel_reason = "Lap u = 0 with compact support on a plane forces u = 0";
  return c;
}

}  // namespace

CatalogEntry torus_entry(const std::vector<double>& radii, std::size_t p) {
  LagrangianChart chart = make_torus(radii, p);
  CatalogEntry e{chart.id(), "homogeneous tori in C^n_p", main_functional(chart, true), chart};
  e.expected = (p == 0 || p == radii.size()) ? VerdictLabel::inconclusive : VerdictLabel::indefinite;
  if (radii.size() == 1) e.expected = VerdictLabel::inconclusive;
  e.probes = torus_probes(radii);
  if (p == 0 || p == radii.size()) {
    e.warnings.push_back("definite signature: only indefiniteness witnesses are searched");
  }
  return e;
}

CatalogEntry hyperbola_entry(const std::vector<double>& radii, const std::vector<int>& signs) {
  LagrangianChart chart = make_hyperbola_product(radii, signs);
  const std::size_t n = radii.size();
  CatalogEntry e{chart.id(), "products of hyperbolas in D^n", main_functional(chart, true), chart};
  if (n <= 2) {
    e.expected = VerdictLabel::negative_definite;
    // -(Lap u)^2 - (eps_1 u_1 / r_1 - eps_2 u_2 / r_2)^2 (only the first square for n = 1)
    const InducedGeometry geo = induced_geometry(chart, std::vector<double>(n, 0.0));
    const JetOperators ops = jet_operators(n, geo.g_inv, geo.christoffel);
    SosCertificate c;
    c.id = n == 1 ? "sos:-(u''^2 + u'^2/r^2)" : "sos:-((Lap u)^2 + (e1 u_1/r1 - e2 u_2/r2)^2)";
    c.sign = -1;
    c.terms.push_back({constant_weight(1.0), ops.laplacian});
    LinearJetForm l(n);
    l.first(0, signs[0] / radii[0]);
    if (n == 2) l.first(1, -signs[1] / radii[1]);
    c.terms.push_back({constant_weight(1.0), l});
    c.kernel_reason = "compact support on lines: Lap u = 0 forces u = 0";
    e.certificates.push_back(std::move(c));
    e.default_strategy = "sos_certificate";
  } else {
    e.expected = VerdictLabel::indefinite;
    const TestFunction neg = hyperbola_negative_probe(radii, signs);
    std::vector<double> sig(n, 1.0);
    e.probes.push_back(gaussian_product("gauss:iso:sigma=1", sig));
    for (double t : {0.1, 0.05}) {
      TestFunction u = isotropic_scaling(neg, t);
      std::ostringstream os;
      os << "gauss:along-w:t=" << t;
      u.id = os.str();
      e.probes.push_back(std::move(u));
    }
    e.scaling.push_back({"isotropic:gauss:along-w", neg, {}, 0.5 * static_cast<double>(n) - 1.0,
                         {0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0}});
    for (std::size_t i = 0; i < n; ++i) e.scaling.back().axes.push_back(i);
  }
  return e;
}

CatalogEntry plane_entry(AmbientKind kind, std::size_t n, std::size_t p) {
  LagrangianChart chart = make_lagrangian_plane(kind, n, p);
  CatalogEntry e{chart.id(), "Ricci-flat minimal Lagrangian planes", main_functional(chart, true), chart};
  e.expected = kind == AmbientKind::pseudo_kahler ? VerdictLabel::positive_definite : VerdictLabel::negative_definite;
  e.certificates.push_back(plane_certificate(chart));
  e.default_strategy = "sos_certificate";
  return e;
}

CatalogEntry tube_entry(const std::string& space, const std::string& row_name, TubeMetric metric) {
  const TubeRow& row = find_tube_row(space, row_name);
  Functional f = make_geodesic_tube(row, metric);
  CatalogEntry e{f.id, "normal congruences of geodesic tubes", f, std::nullopt};
  e.expected = metric == TubeMetric::G ? row.g_label : row.gprime_label;
  e.eps_tuple = row.eps;
  const TubeTerms t = tube_terms(row, metric);
  // a sum of squares exists when the three weights share one sign
  const double ws[3] = {t.lead_w, t.us_w, t.ut_w};
  for (int sign : {1, -1}) {
    if (std::all_of(std::begin(ws), std::end(ws), [sign](double w) { return sign * w > 0.0; })) {
      SosCertificate c;
      c.id = std::string("sos:") + (sign > 0 ? "+" : "-") + (metric == TubeMetric::G ? "G" : "Gprime") + "-squares";
      c.sign = sign;
      c.terms.push_back({constant_weight(sign * t.lead_w), t.lead});
      c.terms.push_back({constant_weight(sign * t.us_w), partial(2, 0)});
      c.terms.push_back({constant_weight(sign * t.ut_w), partial(2, 1)});
      const bool compact = row.s_kind == AxisDomain::Kind::line || row.t_kind == AxisDomain::Kind::line;
      c.kernel_reason = compact ? "u_s = u_t = 0 with compact support forces u = 0"
                                : "u_s = u_t = 0 forces u constant, a trivial variation";
      e.certificates.push_back(std::move(c));
      e.default_strategy = "sos_certificate";
    }
  }
  if (metric == TubeMetric::G && row.space == "S3") {
    // the G metric is Einstein with scalar curvature 8 in dimension 4, so c = 2
    e.spectral = SpectralData{{1.0, 1.0}, 2.0, 1};
    e.default_strategy = "spectral_criterion";
  }
  if (metric == TubeMetric::Gprime && row.space == "AdS3" && row.row == "unbounded-indefinite") {
    e.scaling.push_back({"uniform:gauss", gaussian_product("gauss:sigma=1,1", {1.0, 1.0}), {0, 1}, 0.0,
                         log_schedule(0.05, 20.0, 13)});
  }
  return e;
}

CatalogEntry bundle_entry(const CurveData& curve) {
  Functional f = make_rank_one_bundle(curve);
  CatalogEntry e{f.id, "rank-one Lagrangian surfaces in tangent bundles", f, std::nullopt};
  e.curve = curve;
  if (curve.a_nonzero) {
    e.warnings.push_back(
        "a is not identically zero: the functional uses (Lap u)^2 with Lap u = -2 u_st + 2 a kappa u_tt, which "
        "differs from 4 u_st^2");
  }
  // sup of kappa^2 + 2K along the curve decides the unconditional branch
  const double lo = curve.closed ? 0.0 : -kDefaultLineTruncation;
  const double hi = curve.closed ? curve.length : kDefaultLineTruncation;
  double sup = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 1024; ++i) {
    const double s = lo + (hi - lo) * i / 1024.0;
    sup = std::max(sup, bundle_potential(curve, s));
  }
  if (sup <= 0.0 && !curve.a_nonzero) {
    SosCertificate c;
    c.id = "sos:4u_st^2+(-kappa^2-2K)u_t^2";
    c.sign = 1;
    c.terms.push_back({constant_weight(1.0), bundle_lead(curve, 0.0)});
    c.terms.push_back({[curve](std::span<const double> s) { return -bundle_potential(curve, s[0]); }, partial(2, 1)});
    c.kernel_reason = "u_t = 0 with compact support in t forces u = 0";
    e.certificates.push_back(std::move(c));
    e.default_strategy = "sos_certificate";
    e.expected = VerdictLabel::positive_definite;
  } else if (sup <= 0.0) {
    e.expected = VerdictLabel::inconclusive;
  } else if (!curve.closed) {
    e.expected = VerdictLabel::indefinite;
    e.default_strategy = "scaling_probe";
    e.scaling.push_back({"anisotropic:s:gauss", gaussian_product("gauss:sigma=1,1", {1.0, 1.0}), {0}, 1.5,
                         log_schedule(0.05, 20.0, 13)});
  } else {
    // the closed-curve bound only controls variations with zero mean in s
    e.expected = VerdictLabel::indefinite;
    e.warnings.push_back(
        "closed curve: s-independent variations a(t) give -(sup kappa^2 + 2K) L int a'^2 < 0, so the Wirtinger "
        "bound applies only to variations with zero mean along the curve");
  }
  return e;
}

namespace {

struct Fields {
  std::vector<std::pair<std::string, std::vector<std::string>>> items;

  [[nodiscard]] const std::vector<std::string>* get(const std::string& key) const {
    for (const auto& [k, v] : items) {
      if (k == key) return &v;
    }
    return nullptr;
  }
};

Fields parse_fields(const std::string& body, const std::vector<std::string>& allowed) {
  Fields f;
  std::stringstream ss(body);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) {
      if (f.items.empty()) throw CatalogError("catalog id: value '" + tok + "' without a key");
      f.items.back().second.push_back(tok);
      continue;
    }
    std::string key = tok.substr(0, eq);
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw CatalogError("catalog id: unknown key '" + key + "'");
    }
    if (f.get(key)) throw CatalogError("catalog id: duplicate key '" + key + "'");
    f.items.push_back({key, {tok.substr(eq + 1)}});
  }
  return f;
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) throw CatalogError("catalog id: bad number '" + s + "'");
  return v;
}

std::size_t parse_size(const std::string& s) {
  std::size_t v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) throw CatalogError("catalog id: bad integer '" + s + "'");
  return v;
}

const std::vector<std::string>& require(const Fields& f, const std::string& key) {
  const auto* v = f.get(key);
  if (!v) throw CatalogError("catalog id: missing key '" + key + "'");
  return *v;
}

double single_number(const Fields& f, const std::string& key) {
  const auto& v = require(f, key);
  if (v.size() != 1) throw CatalogError("catalog id: key '" + key + "' takes one value");
  return parse_double(v[0]);
}

std::vector<double> radii_of(const Fields& f, std::size_t n) {
  std::vector<double> r;
  for (const std::string& s : require(f, "r")) r.push_back(parse_double(s));
  if (r.size() != n) throw CatalogError("catalog id: expected " + std::to_string(n) + " radii");
  return r;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) out.push_back(tok);
  return out;
}

}  // namespace

CatalogEntry resolve(const std::string& catalog_id) {
  const auto colon = catalog_id.find(':');
  if (colon == std::string::npos) throw CatalogError("catalog id: missing family prefix in '" + catalog_id + "'");
  const std::string family = catalog_id.substr(0, colon);
  const std::string body = catalog_id.substr(colon + 1);
  if (family == "torus") {
    const Fields f = parse_fields(body, {"n", "r", "p"});
    const std::size_t n = parse_size(require(f, "n").at(0));
    const std::size_t p = parse_size(require(f, "p").at(0));
    return torus_entry(radii_of(f, n), p);
  }
  if (family == "hyperbola") {
    const Fields f = parse_fields(body, {"n", "r", "eps"});
    const std::size_t n = parse_size(require(f, "n").at(0));
    std::vector<int> signs;
    for (const std::string& s : require(f, "eps")) {
      if (s == "+" || s == "+1" || s == "1") {
        signs.push_back(1);
      } else if (s == "-" || s == "-1") {
        signs.push_back(-1);
      } else {
        throw CatalogError("catalog id: bad sign '" + s + "'");
      }
    }
    if (signs.size() != n) throw CatalogError("catalog id: expected " + std::to_string(n) + " signs");
    return hyperbola_entry(radii_of(f, n), signs);
  }
  if (family == "plane") {
    const Fields f = parse_fields(body, {"kind", "n", "p"});
    const std::string kind = require(f, "kind").at(0);
    const std::size_t n = parse_size(require(f, "n").at(0));
    const std::size_t p = f.get("p") ? parse_size(f.get("p")->at(0)) : 0;
    if (kind == "pk") return plane_entry(AmbientKind::pseudo_kahler, n, p);
    if (kind == "para") return plane_entry(AmbientKind::para_kahler, n, p);
    throw CatalogError("catalog id: plane kind must be pk or para");
  }
  if (family == "tube") {
    const std::vector<std::string> parts = split(body, ':');
    if (parts.size() != 3) throw CatalogError("catalog id: tube ids read tube:<space>:<row>:<G|Gprime>");
    TubeMetric m;
    if (parts[2] == "G") {
      m = TubeMetric::G;
    } else if (parts[2] == "Gprime") {
      m = TubeMetric::Gprime;
    } else {
      throw CatalogError("catalog id: tube metric must be G or Gprime");
    }
    return tube_entry(parts[0], parts[1], m);
  }
  if (family == "bundle") {
    const Fields f = parse_fields(body, {"curve", "R", "kappa", "K", "length", "a"});
    const std::string curve = require(f, "curve").at(0);
    CurveData c;
    if (curve == "circle") {
      for (const char* k : {"kappa", "K", "length", "a"}) {
        if (f.get(k)) throw CatalogError(std::string("catalog id: key '") + k + "' does not apply to circle curves");
      }
      c = CurveData::circle_in_plane(single_number(f, "R"));
    } else if (curve == "const") {
      if (f.get("R")) throw CatalogError("catalog id: key 'R' applies to circle curves only");
      std::optional<double> len;
      if (f.get("length")) len = single_number(f, "length");
      c = CurveData::constant(single_number(f, "kappa"), single_number(f, "K"), len);
    } else {
      throw CatalogError("catalog id: curve must be circle or const");
    }
    if (f.get("a")) {
      const double a = single_number(f, "a");
      if (a != 0.0) {
        c.a_profile = [a](double) { return a; };
        c.a_nonzero = true;
      }
    }
    CatalogEntry e = bundle_entry(c);
    e.id = catalog_id;
    e.functional.id = catalog_id;
    return e;
  }
  throw CatalogError("catalog id: unknown family '" + family + "'");
}

std::vector<std::string> tube_ids() {
  std::vector<std::string> out;
  for (const TubeRow& r : tube_rows()) {
    out.push_back("tube:" + r.space + ":" + r.row + ":G");
    out.push_back("tube:" + r.space + ":" + r.row + ":Gprime");
  }
  return out;
}

}  // namespace hstab
