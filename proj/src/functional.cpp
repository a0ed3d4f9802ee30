#include "hstab/functional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hstab {

namespace {

std::vector<double> common_width(const std::vector<TestFunction>& fs, std::size_t n) {
  std::vector<double> hw(n, 0.0);
  for (const TestFunction& u : fs) {
    if (u.n != n) throw std::invalid_argument("test function dimension does not match the functional");
    for (std::size_t i = 0; i < n; ++i) hw[i] = std::max(hw[i], u.halfwidth[i]);
  }
  return hw;
}

/// Sum of |u| + |du| + |d2u|, the quantity that must vanish on line-box faces.
double jet_magnitude(const TestFunction& u, std::span<const double> s) {
  const Jet j = u.eval(s);
  double m = std::abs(j.v);
  for (std::size_t i = 0; i < u.n; ++i) {
    m += std::abs(j.d[i]);
    for (std::size_t k = 0; k < u.n; ++k) m += std::abs(j.hess(i, k));
  }
  return m;
}

/// Periodicity is checked on the value itself (a jet magnitude would hide sign
/// flips such as cos(s/2) on a 2 pi circle).
void check_function(const TestFunction& u, const TensorGrid& grid, const std::vector<AxisDomain>& domains,
                    double tol) {
  check_support([&](std::span<const double> s) { return jet_magnitude(u, s); }, grid, domains, tol);
  for (std::size_t a = 0; a < domains.size(); ++a) {
    if (!domains[a].is_circle()) continue;
    std::vector<double> s(domains.size(), 0.0);
    for (std::size_t b = 0; b < domains.size(); ++b) {
      if (b != a) s[b] = 0.37 * (grid.box[b] > 0.0 ? grid.box[b] : domains[b].length);
    }
    for (double frac : {0.0, 0.29, 0.61}) {
      s[a] = frac * domains[a].length;
      const double v0 = u.value(s);
      s[a] += domains[a].length;
      const double v1 = u.value(s);
      if (std::abs(v1 - v0) > 1e-8 * (1.0 + std::abs(v0))) {
        throw SupportError("test function '" + u.id + "' is not periodic along a circle axis");
      }
    }
  }
}

JetForm zero_form(std::size_t size) {
  return JetForm::Zero(static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(size));
}

}  // namespace

double evaluate(const Functional& f, const TestFunction& u, const GridSpec& grid) {
  return evaluate_bilinear(f, u, u, grid);
}

double evaluate_bilinear(const Functional& f, const TestFunction& u, const TestFunction& v, const GridSpec& spec) {
  const std::size_t n = f.dim();
  const TensorGrid grid = make_grid(f.domains, spec, common_width({u, v}, n));
  check_function(u, grid, f.domains, spec.support_tolerance);
  if (&u != &v) check_function(v, grid, f.domains, spec.support_tolerance);
  JetForm fixed;
  if (f.constant_form) {
    const std::vector<double> origin(n, 0.0);
    fixed = f.form(origin);
  }
  const bool same = &u == &v;
  return reduce_blocks<double>(
      grid.size(),
      [&](std::size_t begin, std::size_t end) {
        std::vector<double> s(n);
        double acc = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
          const double w = grid.node(i, s);
          const JetVec ju = flatten(u.eval(s), n);
          const JetVec jv = same ? ju : flatten(v.eval(s), n);
          if (f.constant_form) {
            acc += w * ju.dot(fixed * jv);
          } else {
            acc += w * ju.dot(f.form(s) * jv);
          }
        }
        return acc;
      },
      0.0);
}

CertificateCheck check_certificate(const Functional& f, const SosCertificate& cert,
                                   const std::vector<std::vector<double>>& points) {
  const std::size_t n = f.dim();
  CertificateCheck out;
  out.min_weight = std::numeric_limits<double>::infinity();
  for (const auto& s : points) {
    FormBuilder b(n);
    for (const SosTerm& t : cert.terms) {
      const double w = t.weight(s);
      out.min_weight = std::min(out.min_weight, w);
      b.add_square(cert.sign * w, t.form);
    }
    const JetForm diff = f.form(s) - b.form();
    out.residual = std::max(out.residual, diff.cwiseAbs().maxCoeff());
  }
  return out;
}

double evaluate_certificate(const Functional& f, const SosCertificate& cert, const TestFunction& u,
                            const GridSpec& grid) {
  Functional sos = f;
  sos.form = [n = f.dim(), terms = cert.terms, sign = cert.sign](std::span<const double> s) {
    FormBuilder b(n);
    for (const SosTerm& t : terms) b.add_square(sign * t.weight(s), t.form);
    return b.form();
  };
  sos.constant_form = false;
  return evaluate(sos, u, grid);
}

Eigen::MatrixXd assemble_form(const Functional& f, const std::vector<TestFunction>& basis, const GridSpec& spec) {
  const std::size_t n = f.dim();
  const std::size_t m = basis.size();
  const TensorGrid grid = make_grid(f.domains, spec, common_width(basis, n));
  for (const TestFunction& u : basis) check_function(u, grid, f.domains, spec.support_tolerance);
  JetForm fixed;
  if (f.constant_form) fixed = f.form(std::vector<double>(n, 0.0));
  const auto mi = static_cast<Eigen::Index>(m);
  const auto js = static_cast<Eigen::Index>(jet_size(n));
  Eigen::MatrixXd q = reduce_blocks<Eigen::MatrixXd>(
      grid.size(),
      [&](std::size_t begin, std::size_t end) {
        std::vector<double> s(n);
        Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(mi, mi);
        Eigen::MatrixXd jets(js, mi);
        for (std::size_t i = begin; i < end; ++i) {
          const double w = grid.node(i, s);
          for (std::size_t a = 0; a < m; ++a) jets.col(static_cast<Eigen::Index>(a)) = flatten(basis[a].eval(s), n);
          const JetForm b = f.constant_form ? fixed : f.form(s);
          acc.noalias() += w * (jets.transpose() * (b * jets));
        }
        return acc;
      },
      Eigen::MatrixXd::Zero(mi, mi));
  return 0.5 * (q + q.transpose());
}

JetForm h2_form(std::size_t n) {
  JetForm b = zero_form(jet_size(n));
  for (std::size_t i = 0; i < 1 + n; ++i) b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const auto k = static_cast<Eigen::Index>(hess_slot(n, i, j));
      b(k, k) = i == j ? 1.0 : 2.0;
    }
  }
  return b;
}

Eigen::MatrixXd assemble_gram(std::size_t n, const std::vector<AxisDomain>& domains,
                              const std::vector<TestFunction>& basis, const GridSpec& grid) {
  Functional h2{"h2", domains, [b = h2_form(n)](std::span<const double>) { return b; }, true};
  return assemble_form(h2, basis, grid);
}

}  // namespace hstab
