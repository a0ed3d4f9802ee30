// Python bindings: thin wrappers that hand JSON text back to the package layer.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hstab/analyzer.hpp"
#include "hstab/catalog.hpp"
#include "hstab/verify.hpp"

namespace py = pybind11;
using namespace hstab;

namespace {

GridSpec grid_of(std::size_t nodes) {
  GridSpec g;
  if (nodes > 0) {
    g.circle_nodes = nodes;
    g.line_nodes = nodes;
  }
  return g;
}

}  // namespace

PYBIND11_MODULE(_hstab, m) {
  m.doc() = "Hamiltonian stability of Lagrangian submanifolds";

  py::register_exception<CatalogError>(m, "CatalogError", PyExc_ValueError);

  m.def(
      "analyze",
      [](const std::string& id, const std::string& strategy, std::size_t grid) {
        const CatalogEntry e = resolve(id);
        py::gil_scoped_release release;
        return to_json(classify(e, parse_strategy(strategy), grid_of(grid))).dump();
      },
      py::arg("catalog_id"), py::arg("strategy") = "auto", py::arg("grid") = 0);

  m.def(
      "verify",
      [](std::size_t grid, bool determinism) {
        VerifyOptions o;
        o.grid = grid_of(grid);
        o.determinism = determinism;
        py::gil_scoped_release release;
        return to_json(run_verify(o)).dump();
      },
      py::arg("grid") = 0, py::arg("determinism") = false);

  m.def("tube_table", [](std::size_t grid) {
    nlohmann::json out = nlohmann::json::array();
    for (const TubeTableLine& l : tube_table(grid_of(grid))) out.push_back(to_json(l));
    return out.dump();
  }, py::arg("grid") = 0);

  m.def("torus_mode_value", &torus_mode_value, py::arg("radii"), py::arg("p"), py::arg("k"));

  m.def(
      "spectral_criterion",
      [](const std::vector<double>& radii, double c) {
        const SpectralResult r = spectral_criterion(radii, c);
        return py::make_tuple(r.lambda1, r.stable);
      },
      py::arg("radii"), py::arg("c"));

  m.def(
      "hyperbola_matrix",
      [](const std::vector<double>& radii, const std::vector<int>& signs) {
        const HyperbolaMatrixAnalysis a = hyperbola_matrix_analysis(radii, signs);
        std::vector<std::vector<double>> mq(static_cast<std::size_t>(a.m_q.rows()));
        for (Eigen::Index i = 0; i < a.m_q.rows(); ++i) {
          for (Eigen::Index j = 0; j < a.m_q.cols(); ++j) mq[i].push_back(a.m_q(i, j));
        }
        std::vector<double> eig(a.eigenvalues.data(), a.eigenvalues.data() + a.eigenvalues.size());
        py::dict d;
        d["m_q"] = mq;
        d["eigenvalues"] = eig;
        d["inertia"] = py::make_tuple(a.positive, a.negative, a.zero);
        d["w_value"] = a.w_value;
        d["e1_value"] = a.e1_value;
        return d;
      },
      py::arg("radii"), py::arg("signs"));

  m.def(
      "wirtinger_bound",
      [](double kappa, double K, std::optional<double> length) {
        const WirtingerResult w = wirtinger_bound(CurveData::constant(kappa, K, length));
        py::dict d;
        d["sup_potential"] = w.sup_potential;
        d["threshold"] = w.threshold ? py::object(py::float_(*w.threshold)) : py::object(py::none());
        d["verdict"] = w.verdict;
        d["branch"] = w.branch;
        return d;
      },
      py::arg("kappa"), py::arg("K"), py::arg("length") = py::none());

  m.def("tube_ids", &tube_ids);
  m.def("set_threads", &set_thread_count, py::arg("count"));
}
