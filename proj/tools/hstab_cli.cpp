// hstab: reproduction suite, catalog analysis, parameter sweeps and the tube table.

#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "hstab/analyzer.hpp"
#include "hstab/catalog.hpp"
#include "hstab/variation.hpp"
#include "hstab/verify.hpp"

namespace {

using namespace hstab;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Common {
  std::size_t grid = 0;
  double box = 0.0;
  std::string format = "json";
  std::string out;
  std::size_t threads = 0;
  unsigned seed = 7;

  [[nodiscard]] GridSpec grid_spec() const {
    GridSpec g;
    if (grid > 0) {
      g.circle_nodes = grid;
      g.line_nodes = grid;
    }
    if (box > 0.0) g.line_box.assign(kMaxDim, box);
    return g;
  }
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--grid", c.grid, "Nodes per axis (circles and lines)")->check(CLI::PositiveNumber);
  app->add_option("--box", c.box, "Half-width of the truncation box on line axes")->check(CLI::PositiveNumber);
  app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app->add_option("--out", c.out, "Output path (stdout when omitted)");
  app->add_option("--threads", c.threads, "Worker threads for quadrature")->check(CLI::PositiveNumber);
  app->add_option("--seed", c.seed, "Seed for random probes");
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + c.out);
  f << text;
  if (!f) throw std::runtime_error("cannot write " + c.out);
}

std::string csv_quote(const std::string& s) {
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

int run_verify_paper(const Common& c) {
  VerifyOptions o;
  o.grid = c.grid_spec();
  o.seed = c.seed;
  const VerifyReport r = run_verify(o);
  emit(c, c.format == "csv" ? to_csv(r) : to_json(r).dump(2) + "\n");
  for (const CheckResult& ch : r.checks) {
    std::cerr << (ch.pass ? "PASS " : "FAIL ") << ch.id << "  " << ch.topic << ": " << ch.actual << "\n";
  }
  return r.all_pass() ? 0 : kExitFailure;
}

int run_analyze(const Common& c, const std::string& id, const std::string& strategy) {
  const CatalogEntry e = resolve(id);
  const StabilityVerdict v = classify(e, parse_strategy(strategy), c.grid_spec());
  if (c.format == "csv") {
    std::ostringstream os;
    os << "catalog_id,label,strategy,probe_id,value,norm2\n";
    os << std::setprecision(17);
    for (const Witness& w : v.witnesses) {
      os << csv_quote(v.catalog_id) << ',' << to_string(v.label) << ',' << v.strategy << ',' << csv_quote(w.probe_id)
         << ',' << w.value << ',' << w.norm2 << '\n';
    }
    emit(c, os.str());
  } else {
    emit(c, to_json(v).dump(2) + "\n");
  }
  return 0;
}

struct SweepArgs {
  std::string axis;
  std::string catalog_id;
  double from = 0.0;
  double to = 0.0;
  std::size_t steps = 0;
  double length = 2.0 * std::numbers::pi;
};

int run_sweep(const Common& c, const SweepArgs& a) {
  const GridSpec grid = c.grid_spec();
  nlohmann::json rows = nlohmann::json::array();
  std::vector<std::string> header;
  auto linspace = [&](double lo, double hi, std::size_t n) {
    std::vector<double> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (n - 1));
    return out;
  };
  if (a.axis == "ratio") {
    // torus n=2, p=1 with r2 = 1 and the wave witness cos(s1/r1 + s2/r2)
    header = {"ratio", "r1", "r2", "value", "closed_form"};
    for (double ratio : linspace(a.from > 0 ? a.from : 0.5, a.to > 0 ? a.to : 2.0, a.steps ? a.steps : 16)) {
      const std::vector<double> r = {ratio, 1.0};
      const CatalogEntry e = torus_entry(r, 1);
      const double v = evaluate(e.functional, fourier_mode("wave:F=cos,a=1,b=1", {1, 1}, r), grid);
      rows.push_back({ratio, r[0], r[1], v, torus_mode_value(r, 1, {1, 1})});
    }
  } else if (a.axis == "mode") {
    const CatalogEntry e = resolve(a.catalog_id.empty() ? "torus:n=1,r=1,p=0" : a.catalog_id);
    if (!e.id.starts_with("torus:")) throw CatalogError("mode sweeps need a torus catalog id");
    const std::vector<double> radii = [&] {
      std::vector<double> r;
      for (const AxisDomain& d : e.functional.domains) r.push_back(d.scale());
      return r;
    }();
    const std::size_t p = e.chart->ambient().p();
    header = {"k", "value", "closed_form"};
    const int lo = a.from > 0 ? static_cast<int>(a.from) : 1;
    const int hi = a.to > 0 ? static_cast<int>(a.to) : 6;
    for (int k = lo; k <= hi; ++k) {
      std::vector<int> mode(radii.size(), 0);
      mode[0] = k;
      const double v = evaluate(e.functional, fourier_mode("cos", mode, radii), grid);
      rows.push_back({k, v, torus_mode_value(radii, p, mode)});
    }
  } else if (a.axis == "kappa") {
    header = {"kappa", "sup_potential", "threshold", "verdict", "branch"};
    for (double kappa : linspace(a.from, a.to > 0 ? a.to : 3.0, a.steps ? a.steps : 13)) {
      const WirtingerResult w = wirtinger_bound(CurveData::constant(kappa, 0.0, a.length));
      rows.push_back({kappa, w.sup_potential, *w.threshold, w.verdict, w.branch});
    }
  } else {
    throw CLI::ValidationError("--axis", "must be ratio, mode or kappa");
  }
  if (c.format == "json") {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& row : rows) {
      nlohmann::json o;
      for (std::size_t i = 0; i < header.size(); ++i) o[header[i]] = row[i];
      out.push_back(o);
    }
    emit(c, out.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << std::setprecision(17) << join(header, ",") << "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) os << ',';
        if (row[i].is_string()) {
          os << row[i].get<std::string>();
        } else {
          os << row[i].get<double>();
        }
      }
      os << "\n";
    }
    emit(c, os.str());
  }
  return 0;
}

int run_tube_table(const Common& c) {
  const std::vector<TubeTableLine> table = tube_table(c.grid_spec());
  bool all = true;
  for (const TubeTableLine& l : table) all = all && l.matches();
  if (c.format == "json") {
    nlohmann::json out = nlohmann::json::array();
    for (const TubeTableLine& l : table) out.push_back(to_json(l));
    emit(c, out.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "space,row,eps,topology,G_expected,G_actual,Gprime_expected,Gprime_actual,match,G_evidence,Gprime_evidence\n";
    for (const TubeTableLine& l : table) {
      std::string eps;
      for (std::size_t i = 0; i < 4; ++i) eps += (i ? " " : "") + std::to_string(l.eps[i]);
      os << l.space << ',' << l.row << ',' << csv_quote(eps) << ',' << csv_quote(l.topology) << ',' << l.g_expected
         << ',' << l.g_actual << ',' << l.gprime_expected << ',' << l.gprime_actual << ','
         << (l.matches() ? "true" : "false") << ',' << csv_quote(join(l.g_evidence, " ")) << ','
         << csv_quote(join(l.gprime_evidence, " ")) << '\n';
    }
    emit(c, os.str());
  }
  return all ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hamiltonian stability of Lagrangian submanifolds in flat and curved model spaces"};
  app.require_subcommand(1);

  Common verify_c, analyze_c, sweep_c, table_c;
  std::string catalog_id, strategy = "auto";
  SweepArgs sweep_args;

  CLI::App* verify = app.add_subcommand("verify-paper", "Run the reproduction suite");
  add_common(verify, verify_c);

  CLI::App* analyze = app.add_subcommand("analyze", "Classify one catalog entry");
  add_common(analyze, analyze_c);
  analyze->add_option("--catalog-id", catalog_id, "Catalog entry ID")->required();
  analyze->add_option("--strategy", strategy, "Classification strategy")
      ->check(CLI::IsMember({"auto", "fourier_sweep", "scaling_probe", "sos_certificate", "spectral_criterion"}));

  CLI::App* sweep = app.add_subcommand("sweep", "Sweep a parameter and emit plot data");
  add_common(sweep, sweep_c);
  sweep_c.format = "csv";
  sweep->add_option("--axis", sweep_args.axis, "Sweep axis")->required()->check(CLI::IsMember({"ratio", "mode", "kappa"}));
  sweep->add_option("--catalog-id", sweep_args.catalog_id, "Base torus for mode sweeps");
  sweep->add_option("--from", sweep_args.from, "Lower end of the range");
  sweep->add_option("--to", sweep_args.to, "Upper end of the range");
  sweep->add_option("--steps", sweep_args.steps, "Number of sample points");
  sweep->add_option("--length", sweep_args.length, "Curve length for kappa sweeps")->check(CLI::PositiveNumber);

  CLI::App* table = app.add_subcommand("tube-table", "Recompute the geodesic-tube table");
  add_common(table, table_c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  auto apply_threads = [](const Common& c) {
    if (c.threads > 0) set_thread_count(c.threads);
  };
  try {
    if (verify->parsed()) {
      apply_threads(verify_c);
      return run_verify_paper(verify_c);
    }
    if (analyze->parsed()) {
      apply_threads(analyze_c);
      return run_analyze(analyze_c, catalog_id, strategy);
    }
    if (sweep->parsed()) {
      apply_threads(sweep_c);
      return run_sweep(sweep_c, sweep_args);
    }
    if (table->parsed()) {
      apply_threads(table_c);
      return run_tube_table(table_c);
    }
  } catch (const CatalogError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
