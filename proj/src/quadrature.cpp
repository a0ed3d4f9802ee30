#include "hstab/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

namespace hstab {

Rule1D gauss_legendre(std::size_t n) {
  if (n == 0) throw std::invalid_argument("gauss_legendre: need at least one node");
  Rule1D r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * static_cast<double>(k) - 1.0) * x * p1 - (static_cast<double>(k) - 1.0) * p0) /
                          static_cast<double>(k);
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

Rule1D periodic_trapezoid(std::size_t n, double length) {
  if (n == 0) throw std::invalid_argument("periodic_trapezoid: need at least one node");
  Rule1D r;
  const double h = length / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    r.nodes.push_back(h * static_cast<double>(i));
    r.weights.push_back(h);
  }
  return r;
}

std::size_t TensorGrid::size() const {
  std::size_t total = 1;
  for (const Rule1D& a : axes) total *= a.nodes.size();
  return total;
}

double TensorGrid::node(std::size_t flat, std::span<double> s) const {
  double w = 1.0;
  for (std::size_t a = axes.size(); a-- > 0;) {
    const std::size_t m = axes[a].nodes.size();
    const std::size_t i = flat % m;
    flat /= m;
    s[a] = axes[a].nodes[i];
    w *= axes[a].weights[i];
  }
  return w;
}

TensorGrid make_grid(const std::vector<AxisDomain>& domains, const GridSpec& spec,
                     const std::vector<double>& halfwidth) {
  const std::size_t n = domains.size();
  std::size_t circle_total = 1, lines = 0;
  for (const AxisDomain& d : domains) {
    if (d.is_circle()) {
      circle_total *= spec.circle_nodes;
    } else {
      ++lines;
    }
  }
  std::size_t line_nodes = spec.line_nodes;
  if (lines > 0) {
    const double budget = static_cast<double>(spec.max_total_nodes) / static_cast<double>(circle_total);
    const auto cap = static_cast<std::size_t>(std::floor(std::pow(budget, 1.0 / static_cast<double>(lines)) + 1e-9));
    line_nodes = std::max<std::size_t>(std::min(line_nodes, cap), 8);
  }
  TensorGrid g;
  g.box.assign(n, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    const AxisDomain& d = domains[a];
    if (d.is_circle()) {
      g.axes.push_back(periodic_trapezoid(spec.circle_nodes, d.length));
      continue;
    }
    double box = 0.0;
    if (a < spec.line_box.size() && spec.line_box[a] > 0.0) {
      box = spec.line_box[a];
    } else if (a < halfwidth.size() && halfwidth[a] > 0.0) {
      box = halfwidth[a];
    } else {
      box = d.length;
    }
    Rule1D r = gauss_legendre(line_nodes);
    for (double& x : r.nodes) x *= box;
    for (double& w : r.weights) w *= box;
    g.axes.push_back(std::move(r));
    g.box[a] = box;
  }
  return g;
}

namespace {

std::size_t initial_threads() {
  if (const char* env = std::getenv("HSTAB_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

std::atomic<std::size_t>& thread_setting() {
  static std::atomic<std::size_t> value{initial_threads()};
  return value;
}

}  // namespace

void set_thread_count(std::size_t n) { thread_setting().store(n == 0 ? 1 : n); }

std::size_t thread_count() { return thread_setting().load(); }

void parallel_blocks(std::size_t blocks, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min(thread_count(), blocks);
  if (workers <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) body(b);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  std::size_t err_block = blocks;
  std::exception_ptr err;
  auto run = [&] {
    for (std::size_t b = next++; b < blocks; b = next++) {
      try {
        body(b);
      } catch (...) {
        // keep the error of the lowest block so reports are reproducible
        std::lock_guard<std::mutex> lock(err_mutex);
        if (b < err_block) {
          err_block = b;
          err = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(run);
  run();
  for (std::thread& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

double face_maximum(const std::function<double(std::span<const double>)>& field, const TensorGrid& grid,
                    const std::vector<AxisDomain>& domains) {
  const std::size_t n = grid.dim();
  double worst = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    if (domains[a].is_circle()) continue;
    // walk the face grid with axis a pinned to either end of the box
    std::vector<std::size_t> sizes(n);
    for (std::size_t b = 0; b < n; ++b) sizes[b] = b == a ? 1 : grid.axes[b].nodes.size();
    // subsample dense faces to keep the check cheap
    std::vector<std::size_t> stride(n, 1);
    for (std::size_t b = 0; b < n; ++b) {
      if (b != a && n > 2) stride[b] = std::max<std::size_t>(1, sizes[b] / 24);
    }
    for (double side : {-1.0, 1.0}) {
      std::vector<std::size_t> idx(n, 0);
      std::vector<double> s(n);
      while (true) {
        for (std::size_t b = 0; b < n; ++b) s[b] = b == a ? side * grid.box[a] : grid.axes[b].nodes[idx[b]];
        worst = std::max(worst, std::abs(field(s)));
        std::size_t b = 0;
        while (b < n) {
          idx[b] += stride[b];
          if (idx[b] < sizes[b]) break;
          idx[b++] = 0;
        }
        if (b == n) break;
      }
    }
  }
  return worst;
}

void check_support(const std::function<double(std::span<const double>)>& magnitude, const TensorGrid& grid,
                   const std::vector<AxisDomain>& domains, double tolerance) {
  const std::size_t n = grid.dim();
  // interior scale: max over the axis-aligned lines through the origin
  double interior = 1.0;
  {
    std::vector<double> s(n, 0.0);
    interior = std::max(interior, std::abs(magnitude(s)));
    for (std::size_t a = 0; a < n; ++a) {
      for (double x : grid.axes[a].nodes) {
        s[a] = x;
        interior = std::max(interior, std::abs(magnitude(s)));
      }
      s[a] = 0.0;
    }
  }
  const double leak = face_maximum(magnitude, grid, domains);
  if (leak > tolerance * interior) {
    throw SupportError("test function does not vanish on the line box (face magnitude " + std::to_string(leak) + ")");
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (!domains[a].is_circle()) continue;
    const double period = domains[a].length;
    std::vector<double> s(n, 0.0);
    for (std::size_t b = 0; b < n; ++b) {
      if (b != a && !grid.axes[b].nodes.empty()) s[b] = grid.axes[b].nodes[grid.axes[b].nodes.size() / 3];
    }
    for (double frac : {0.0, 0.31, 0.77}) {
      s[a] = frac * period;
      const double v0 = magnitude(s);
      s[a] += period;
      const double v1 = magnitude(s);
      if (std::abs(v1 - v0) > 1e-8 * (1.0 + std::abs(v0))) {
        throw SupportError("test function is not periodic along a circle axis");
      }
    }
  }
}

double integrate(const std::function<double(std::span<const double>)>& field, const std::vector<AxisDomain>& domains,
                 const GridSpec& spec, const std::vector<double>& halfwidth) {
  const TensorGrid grid = make_grid(domains, spec, halfwidth);
  check_support(field, grid, domains, spec.support_tolerance);
  const std::size_t n = grid.dim();
  return reduce_blocks<double>(
      grid.size(),
      [&](std::size_t begin, std::size_t end) {
        std::vector<double> s(n);
        double acc = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
          const double w = grid.node(i, s);
          acc += w * field(s);
        }
        return acc;
      },
      0.0);
}

}  // namespace hstab
