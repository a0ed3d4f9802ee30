#include "hstab/immersion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hstab {

AxisDomain AxisDomain::circle(double circumference) {
  if (!(circumference > 0.0)) throw std::invalid_argument("circle circumference must be positive");
  return {Kind::circle, circumference};
}

AxisDomain AxisDomain::line(double truncation) {
  if (!(truncation > 0.0)) throw std::invalid_argument("line truncation must be positive");
  return {Kind::line, truncation};
}

double AxisDomain::scale() const {
  return kind == Kind::circle ? length / (2.0 * std::numbers::pi) : 1.0;
}

ImmersionOracle make_dual_oracle(std::size_t n, JetImmersion map) {
  if (n == 0 || n > kMaxDim) throw std::invalid_argument("dual oracle: unsupported dimension");
  return [n, map = std::move(map)](std::span<const double> s) {
    if (s.size() != n) throw std::invalid_argument("dual oracle: point dimension mismatch");
    const std::vector<Jet> seeds = seed(s);
    const std::vector<Jet> comps = map(seeds);
    if (comps.size() != 2 * n) throw std::invalid_argument("dual oracle: map must return 2n components");
    ImmersionJet out;
    out.n = n;
    for (std::size_t a = 0; a < 2 * n; ++a) {
      out.f[a] = comps[a].v;
      for (std::size_t i = 0; i < n; ++i) {
        out.first[i][a] = comps[a].d[i];
        for (std::size_t j = 0; j < n; ++j) out.second[i][j][a] = comps[a].hess(i, j);
      }
    }
    return out;
  };
}

LagrangianChart::LagrangianChart(std::string id, AmbientFlat ambient, std::vector<AxisDomain> domains,
                                 ImmersionOracle oracle, OracleKind kind, bool flat_induced_metric)
    : id_(std::move(id)),
      ambient_(std::move(ambient)),
      domains_(std::move(domains)),
      oracle_(std::move(oracle)),
      kind_(kind),
      flat_(flat_induced_metric) {
  if (domains_.size() != ambient_.n()) throw std::invalid_argument("chart: need one domain per axis");
  if (domains_.size() > kMaxDim) throw std::invalid_argument("chart: dimension exceeds kMaxDim");
}

SmallVec InducedGeometry::normal_coefficients() const { return eps * (g_inv * mean_curvature); }

SmallMat InducedGeometry::h_dot_mean_curvature() const {
  const SmallVec a = normal_coefficients();
  SmallMat out = SmallMat::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += C(i, j, k) * a(static_cast<Eigen::Index>(k));
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
    }
  }
  return out;
}

InducedGeometry induced_geometry(const LagrangianChart& chart, std::span<const double> s) {
  const std::size_t n = chart.dim();
  if (s.size() != n) throw std::invalid_argument("induced_geometry: point dimension mismatch");
  const AmbientFlat& amb = chart.ambient();
  const ImmersionJet jet = chart.evaluate(s);
  const std::size_t m = 2 * n;
  const auto ni = static_cast<Eigen::Index>(n);

  InducedGeometry geo;
  geo.n = n;
  geo.eps = amb.eps();
  geo.point = SmallVec(ni);
  for (std::size_t i = 0; i < n; ++i) geo.point(static_cast<Eigen::Index>(i)) = s[i];

  auto span_of = [m](const std::array<double, kMaxAmbient>& v) { return std::span<const double>(v.data(), m); };

  geo.g = SmallMat(ni, ni);
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double gij = amb.metric(span_of(jet.first[i]), span_of(jet.first[j]));
      geo.g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = gij;
      scale = std::max(scale, std::abs(gij));
    }
  }
  const double det = geo.g.determinant();
  if (!(std::abs(det) >= kDegenerateTolerance * std::pow(scale, static_cast<double>(n))) || scale == 0.0) {
    throw DegenerateMetricError("induced metric is degenerate at chart point");
  }
  geo.g_inv = geo.g.inverse();
  geo.vol_density = std::sqrt(std::abs(det));

  std::array<std::array<double, kMaxAmbient>, kMaxDim> jf{};
  for (std::size_t k = 0; k < n; ++k) amb.apply_j(span_of(jet.first[k]), std::span<double>(jf[k].data(), m));

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        geo.cubic[(i * kMaxDim + j) * kMaxDim + k] = amb.metric(span_of(jet.second[i][j]), span_of(jf[k]));
      }
    }
  }

  geo.mean_curvature = SmallVec::Zero(ni);
  for (std::size_t k = 0; k < n; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        acc += geo.g_inv(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * geo.C(i, j, k);
      }
    }
    geo.mean_curvature(static_cast<Eigen::Index>(k)) = acc;
  }

  // Gamma_{ij,l} = g(f_ij, f_l); raise l with g^{-1}.
  for (std::size_t k = 0; k < n; ++k) geo.christoffel[k] = SmallMat::Zero(ni, ni);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      SmallVec lowered(ni);
      for (std::size_t l = 0; l < n; ++l) {
        lowered(static_cast<Eigen::Index>(l)) = amb.metric(span_of(jet.second[i][j]), span_of(jet.first[l]));
      }
      const SmallVec raised = geo.g_inv * lowered;
      for (std::size_t k = 0; k < n; ++k) {
        geo.christoffel[k](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            raised(static_cast<Eigen::Index>(k));
      }
    }
  }
  return geo;
}

std::vector<std::vector<double>> sample_grid(const std::vector<AxisDomain>& domains, std::size_t per_axis) {
  if (per_axis < 2) throw std::invalid_argument("sample_grid: need at least two points per axis");
  const std::size_t n = domains.size();
  std::vector<std::vector<double>> axes(n);
  for (std::size_t a = 0; a < n; ++a) {
    const AxisDomain& d = domains[a];
    for (std::size_t k = 0; k < per_axis; ++k) {
      const double t = static_cast<double>(k);
      if (d.is_circle()) {
        axes[a].push_back(d.length * t / static_cast<double>(per_axis));
      } else {
        axes[a].push_back(-d.length + 2.0 * d.length * t / static_cast<double>(per_axis - 1));
      }
    }
  }
  std::vector<std::vector<double>> points;
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    std::vector<double> p(n);
    for (std::size_t a = 0; a < n; ++a) p[a] = axes[a][idx[a]];
    points.push_back(std::move(p));
    std::size_t a = 0;
    while (a < n && ++idx[a] == per_axis) idx[a++] = 0;
    if (a == n) break;
  }
  return points;
}

double check_lagrangian(const LagrangianChart& chart, const std::vector<std::vector<double>>& grid) {
  const std::size_t n = chart.dim();
  const std::size_t m = 2 * n;
  double worst = 0.0;
  for (const auto& s : grid) {
    const ImmersionJet jet = chart.evaluate(s);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double w = symplectic_form(chart.ambient(), std::span<const double>(jet.first[i].data(), m),
                                         std::span<const double>(jet.first[j].data(), m));
        worst = std::max(worst, std::abs(w));
      }
    }
  }
  return worst;
}

namespace {

/// sqrt|g| (nJH)^l at a point; nJH = J(nH) = -eps sum a^k f_k, so its
/// tangential components are -g^{kl} g(nH, J f_l).
SmallVec weighted_mean_curvature_field(const LagrangianChart& chart, std::span<const double> s) {
  const InducedGeometry geo = induced_geometry(chart, s);
  return -geo.vol_density * (geo.g_inv * geo.mean_curvature);
}

}  // namespace

double check_h_minimal(const LagrangianChart& chart, const std::vector<std::vector<double>>& grid) {
  const std::size_t n = chart.dim();
  double worst = 0.0;
  for (const auto& s : grid) {
    const InducedGeometry geo = induced_geometry(chart, s);
    double div = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
      const double h = 1e-4 * chart.domains()[l].scale();
      std::vector<double> sp(s), sm(s);
      sp[l] += h;
      sm[l] -= h;
      const SmallVec xp = weighted_mean_curvature_field(chart, sp);
      const SmallVec xm = weighted_mean_curvature_field(chart, sm);
      div += (xp(static_cast<Eigen::Index>(l)) - xm(static_cast<Eigen::Index>(l))) / (2.0 * h);
    }
    worst = std::max(worst, std::abs(div / geo.vol_density));
  }
  return worst;
}

double trisymmetry_residual(const LagrangianChart& chart, const std::vector<std::vector<double>>& grid) {
  const std::size_t n = chart.dim();
  double worst = 0.0;
  for (const auto& s : grid) {
    const InducedGeometry geo = induced_geometry(chart, s);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          const double c = geo.C(i, j, k);
          // the transpositions (ij) and (jk) generate all permutations
          worst = std::max({worst, std::abs(c - geo.C(j, i, k)), std::abs(c - geo.C(i, k, j)),
                            std::abs(c - geo.C(k, j, i))});
        }
      }
    }
  }
  return worst;
}

}  // namespace hstab
