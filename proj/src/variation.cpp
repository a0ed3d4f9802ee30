#include "hstab/variation.hpp"

#include <cmath>
#include <stdexcept>

namespace hstab {

namespace {

using Idx = Eigen::Index;

Idx ix(std::size_t i) { return static_cast<Idx>(i); }

SmallMat zero_mat(std::size_t n) { return SmallMat::Zero(ix(n), ix(n)); }

std::array<SmallMat, kMaxDim> zero_christoffel(std::size_t n) {
  std::array<SmallMat, kMaxDim> out;
  for (std::size_t k = 0; k < n; ++k) out[k] = zero_mat(n);
  return out;
}

void require_nondegenerate(const SmallMat& g) {
  const double scale = g.cwiseAbs().maxCoeff();
  const double det = g.determinant();
  if (scale == 0.0 || !(std::abs(det) >= kDegenerateTolerance * std::pow(scale, static_cast<double>(g.rows())))) {
    throw DegenerateMetricError("metric is degenerate at the evaluation point");
  }
}

/// Central difference of a matrix-valued function along axis a.
template <class F>
SmallMat central_diff(const F& f, std::span<const double> s, std::size_t a, double h) {
  std::vector<double> sp(s.begin(), s.end()), sm(s.begin(), s.end());
  sp[a] += h;
  sm[a] -= h;
  return (f(sp) - f(sm)) / (2.0 * h);
}

/// Richardson-extrapolated central first derivative of a scalar function.
template <class F>
double richardson_first(const F& f, std::span<const double> s, std::size_t a, double h) {
  auto d = [&](double step) {
    std::vector<double> sp(s.begin(), s.end()), sm(s.begin(), s.end());
    sp[a] += step;
    sm[a] -= step;
    return (f(sp) - f(sm)) / (2.0 * step);
  };
  return (4.0 * d(0.5 * h) - d(h)) / 3.0;
}

/// Richardson-extrapolated central second derivative d2 f / ds_a ds_b.
template <class F>
double richardson_second(const F& f, std::span<const double> s, std::size_t a, std::size_t b, double h) {
  auto d = [&](double step) {
    std::vector<double> p(s.begin(), s.end());
    if (a == b) {
      const double f0 = f(p);
      p[a] = s[a] + step;
      const double fp = f(p);
      p[a] = s[a] - step;
      const double fm = f(p);
      return (fp - 2.0 * f0 + fm) / (step * step);
    }
    double acc = 0.0;
    for (int sa : {1, -1}) {
      for (int sb : {1, -1}) {
        p[a] = s[a] + sa * step;
        p[b] = s[b] + sb * step;
        acc += sa * sb * f(p);
      }
    }
    return acc / (4.0 * step * step);
  };
  return (4.0 * d(0.5 * h) - d(h)) / 3.0;
}

}  // namespace

MetricField MetricField::constant_metric(const SmallMat& g) {
  MetricField m;
  m.n = static_cast<std::size_t>(g.rows());
  m.g = [g](std::span<const double>) { return g; };
  const std::size_t n = m.n;
  m.ricci = [n](std::span<const double>) { return zero_mat(n); };
  m.constant = true;
  return m;
}

MetricField MetricField::from_function(std::size_t n, std::function<SmallMat(std::span<const double>)> g,
                                       std::function<SmallMat(std::span<const double>)> ricci) {
  MetricField m;
  m.n = n;
  m.g = std::move(g);
  m.ricci = std::move(ricci);
  return m;
}

std::array<SmallMat, kMaxDim> christoffel_fd(const MetricField& m, std::span<const double> s) {
  const std::size_t n = m.n;
  const SmallMat g_inv = m.g(s).inverse();
  std::array<SmallMat, kMaxDim> dg;  // dg[a] = d g / ds_a
  for (std::size_t a = 0; a < n; ++a) dg[a] = central_diff(m.g, s, a, m.fd_step);
  std::array<SmallMat, kMaxDim> out = zero_christoffel(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t l = 0; l < n; ++l) {
          acc += 0.5 * g_inv(ix(k), ix(l)) * (dg[i](ix(j), ix(l)) + dg[j](ix(i), ix(l)) - dg[l](ix(i), ix(j)));
        }
        out[k](ix(i), ix(j)) = acc;
      }
    }
  }
  return out;
}

SmallMat ricci_fd(const MetricField& m, std::span<const double> s) {
  const std::size_t n = m.n;
  const double h = 10.0 * m.fd_step;
  const auto gamma = christoffel_fd(m, s);
  // dgamma[a][k](i, j) = d Gamma^k_ij / ds_a
  std::array<std::array<SmallMat, kMaxDim>, kMaxDim> dgamma;
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<double> sp(s.begin(), s.end()), sm(s.begin(), s.end());
    sp[a] += h;
    sm[a] -= h;
    const auto gp = christoffel_fd(m, sp);
    const auto gm = christoffel_fd(m, sm);
    for (std::size_t k = 0; k < n; ++k) dgamma[a][k] = (gp[k] - gm[k]) / (2.0 * h);
  }
  SmallMat ric = zero_mat(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        acc += dgamma[i][i](ix(j), ix(k)) - dgamma[k][i](ix(i), ix(j));
        for (std::size_t p = 0; p < n; ++p) {
          acc += gamma[i](ix(i), ix(p)) * gamma[p](ix(j), ix(k)) - gamma[i](ix(k), ix(p)) * gamma[p](ix(i), ix(j));
        }
      }
      ric(ix(j), ix(k)) = acc;
    }
  }
  return ric;
}

MetricPoint metric_at(const MetricField& m, std::span<const double> s) {
  if (s.size() != m.n) throw std::invalid_argument("metric: point dimension mismatch");
  MetricPoint p;
  p.g = m.g(s);
  require_nondegenerate(p.g);
  p.g_inv = p.g.inverse();
  p.vol_density = std::sqrt(std::abs(p.g.determinant()));
  if (m.constant) {
    p.christoffel = zero_christoffel(m.n);
    p.ricci = zero_mat(m.n);
  } else {
    p.christoffel = christoffel_fd(m, s);
    p.ricci = m.ricci ? m.ricci(s) : ricci_fd(m, s);
  }
  return p;
}

SmallMat gauss_ricci(const InducedGeometry& geo) {
  const std::size_t n = geo.n;
  SmallMat ric = geo.h_dot_mean_curvature();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t l = 0; l < n; ++l) {
          for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = 0; q < n; ++q) {
              acc += geo.g_inv(ix(i), ix(l)) * geo.g_inv(ix(p), ix(q)) * geo.C(i, j, p) * geo.C(k, l, q);
            }
          }
        }
      }
      ric(ix(j), ix(k)) -= geo.eps * acc;
    }
  }
  return ric;
}

MetricField induced_metric(const LagrangianChart& chart) {
  MetricField m;
  m.n = chart.dim();
  m.g = [chart](std::span<const double> s) { return induced_geometry(chart, s).g; };
  m.ricci = [chart](std::span<const double> s) { return gauss_ricci(induced_geometry(chart, s)); };
  return m;
}

SmallVec gradient(const TestFunction& u, const MetricField& m, std::span<const double> s) {
  const SmallMat g = m.g(s);
  require_nondegenerate(g);
  const Jet j = u.eval(s);
  SmallVec du(ix(m.n));
  for (std::size_t i = 0; i < m.n; ++i) du(ix(i)) = j.d[i];
  return g.inverse() * du;
}

SmallMat covariant_hessian(const TestFunction& u, const MetricField& m, std::span<const double> s) {
  require_nondegenerate(m.g(s));
  const auto christoffel = m.constant ? zero_christoffel(m.n) : christoffel_fd(m, s);
  const Jet j = u.eval(s);
  SmallMat h = zero_mat(m.n);
  for (std::size_t a = 0; a < m.n; ++a) {
    for (std::size_t b = 0; b < m.n; ++b) {
      double v = j.hess(a, b);
      for (std::size_t k = 0; k < m.n; ++k) v -= christoffel[k](ix(a), ix(b)) * j.d[k];
      h(ix(a), ix(b)) = v;
    }
  }
  return h;
}

double laplacian(const TestFunction& u, const MetricField& m, std::span<const double> s) {
  const SmallMat h = covariant_hessian(u, m, s);
  const SmallMat g_inv = m.g(s).inverse();
  return (g_inv.cwiseProduct(h)).sum();
}

JetOperators jet_operators(std::size_t n, const SmallMat& g_inv, const std::array<SmallMat, kMaxDim>& christoffel) {
  JetOperators ops;
  ops.n = n;
  ops.laplacian = LinearJetForm(n);
  for (std::size_t i = 0; i < n; ++i) {
    LinearJetForm gi(n);
    for (std::size_t j = 0; j < n; ++j) gi.first(j, g_inv(ix(i), ix(j)));
    ops.grad.push_back(gi);
  }
  ops.hessian.assign(n, std::vector<LinearJetForm>(n, LinearJetForm(n)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      LinearJetForm& h = ops.hessian[i][j];
      h.second(i, j, 1.0);
      for (std::size_t k = 0; k < n; ++k) h.first(k, -christoffel[k](ix(i), ix(j)));
      // Lap u = g^ij Hess_ij
      ops.laplacian.second(i, j, g_inv(ix(i), ix(j)));
      for (std::size_t k = 0; k < n; ++k) ops.laplacian.first(k, -g_inv(ix(i), ix(j)) * christoffel[k](ix(i), ix(j)));
    }
  }
  return ops;
}

namespace {

/// Adds w * sum_ij M_ij grad_i grad_j to b.
void add_gradient_form(FormBuilder& b, double w, const SmallMat& m, const JetOperators& ops) {
  for (std::size_t i = 0; i < ops.n; ++i) {
    for (std::size_t j = 0; j < ops.n; ++j) {
      const double c = m(ix(i), ix(j));
      if (c != 0.0) b.add_product(w * c, ops.grad[i], ops.grad[j]);
    }
  }
}

/// Adds w * |Hess u|^2 = w * g^ik g^jl H_ij H_kl to b.
void add_hessian_norm(FormBuilder& b, double w, const SmallMat& g_inv, const JetOperators& ops) {
  const std::size_t n = ops.n;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
          const double c = g_inv(ix(i), ix(k)) * g_inv(ix(j), ix(l));
          if (c != 0.0) b.add_product(w * c, ops.hessian[i][j], ops.hessian[k][l]);
        }
      }
    }
  }
}

LinearJetForm mean_curvature_pairing(const InducedGeometry& geo) {
  LinearJetForm l(geo.n);
  for (std::size_t k = 0; k < geo.n; ++k) {
    const double c = geo.mean_curvature(ix(k));
    for (std::size_t j = 0; j < geo.n; ++j) l.first(j, c * geo.g_inv(ix(k), ix(j)));
  }
  return l;
}

}  // namespace

JetForm main_form(const InducedGeometry& geo, VariationTerm term) {
  const std::size_t n = geo.n;
  const JetOperators ops = jet_operators(n, geo.g_inv, geo.christoffel);
  const double eps = geo.eps;
  FormBuilder b(n);
  if (term == VariationTerm::all || term == VariationTerm::laplacian) b.add_square(eps, ops.laplacian);
  if (term == VariationTerm::all || term == VariationTerm::curvature) {
    add_gradient_form(b, -2.0 * eps, geo.h_dot_mean_curvature(), ops);
  }
  if (term == VariationTerm::all || term == VariationTerm::mean_curvature) {
    b.add_square(1.0, mean_curvature_pairing(geo));
  }
  return geo.vol_density * b.form();
}

JetForm raw_form(const InducedGeometry& geo) {
  const std::size_t n = geo.n;
  const JetOperators ops = jet_operators(n, geo.g_inv, geo.christoffel);
  const double eps = geo.eps;
  FormBuilder b(n);
  add_hessian_norm(b, eps, geo.g_inv, ops);
  add_gradient_form(b, eps, gauss_ricci(geo), ops);
  add_gradient_form(b, -2.0 * eps, geo.h_dot_mean_curvature(), ops);
  b.add_square(1.0, mean_curvature_pairing(geo));
  return geo.vol_density * b.form();
}

namespace {

const char* term_suffix(VariationTerm t) {
  switch (t) {
    case VariationTerm::laplacian:
      return ":laplacian";
    case VariationTerm::curvature:
      return ":curvature";
    case VariationTerm::mean_curvature:
      return ":mean-curvature";
    case VariationTerm::all:
      break;
  }
  return "";
}

}  // namespace

Functional main_functional(const LagrangianChart& chart, bool constant_coefficients, VariationTerm term) {
  return Functional{chart.id() + term_suffix(term), chart.domains(),
                    [chart, term](std::span<const double> s) { return main_form(induced_geometry(chart, s), term); },
                    constant_coefficients};
}

Functional raw_functional(const LagrangianChart& chart, bool constant_coefficients) {
  return Functional{chart.id() + ":raw", chart.domains(),
                    [chart](std::span<const double> s) { return raw_form(induced_geometry(chart, s)); },
                    constant_coefficients};
}

double second_variation(const LagrangianChart& chart, const TestFunction& u, const GridSpec& grid) {
  return evaluate(main_functional(chart), u, grid);
}

double second_variation(const Functional& f, const TestFunction& u, const GridSpec& grid) {
  return evaluate(f, u, grid);
}

double second_variation_raw(const LagrangianChart& chart, const TestFunction& u, const GridSpec& grid) {
  return evaluate(raw_functional(chart), u, grid);
}

double bochner_residual(const TestFunction& u, const MetricField& m, std::span<const double> s, double step) {
  const std::size_t n = m.n;
  const MetricPoint p = metric_at(m, s);
  const Jet j = u.eval(s);

  auto grad_norm = [&](std::span<const double> x) {
    const SmallMat gi = m.g(x).inverse();
    const Jet jx = u.eval(x);
    double acc = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) acc += gi(ix(a), ix(b)) * jx.d[a] * jx.d[b];
    }
    return acc;
  };
  auto lap = [&](std::span<const double> x) { return laplacian(u, m, x); };

  // 1/2 Lap |grad u|^2
  double lap_phi = 0.0;
  SmallVec dphi(ix(n));
  for (std::size_t k = 0; k < n; ++k) dphi(ix(k)) = richardson_first(grad_norm, s, k, step);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      double hab = richardson_second(grad_norm, s, a, b, step);
      for (std::size_t k = 0; k < n; ++k) hab -= p.christoffel[k](ix(a), ix(b)) * dphi(ix(k));
      lap_phi += p.g_inv(ix(a), ix(b)) * hab;
    }
  }

  SmallVec du(ix(n));
  for (std::size_t a = 0; a < n; ++a) du(ix(a)) = j.d[a];
  const SmallVec grad_u = p.g_inv * du;

  double grad_dot_grad_lap = 0.0;
  for (std::size_t a = 0; a < n; ++a) grad_dot_grad_lap += grad_u(ix(a)) * richardson_first(lap, s, a, step);

  const SmallMat h = covariant_hessian(u, m, s);
  const double hess_norm = (p.g_inv * h * p.g_inv).cwiseProduct(h).sum();
  const double ric = grad_u.dot(p.ricci * grad_u);
  return 0.5 * lap_phi - ric - grad_dot_grad_lap - hess_norm;
}

Functional reilly_functional(const MetricField& m, const std::vector<AxisDomain>& domains) {
  if (domains.size() != m.n) throw std::invalid_argument("reilly: one domain per metric axis");
  return Functional{"reilly", domains,
                    [m](std::span<const double> s) {
                      const MetricPoint p = metric_at(m, s);
                      const JetOperators ops = jet_operators(m.n, p.g_inv, p.christoffel);
                      FormBuilder b(m.n);
                      b.add_square(1.0, ops.laplacian);
                      add_hessian_norm(b, -1.0, p.g_inv, ops);
                      add_gradient_form(b, -1.0, p.ricci, ops);
                      return JetForm(p.vol_density * b.form());
                    },
                    m.constant};
}

double reilly_residual(const TestFunction& u, const MetricField& m, const std::vector<AxisDomain>& domains,
                       const GridSpec& grid) {
  return evaluate(reilly_functional(m, domains), u, grid);
}

}  // namespace hstab
