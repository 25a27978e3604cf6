#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ipvem/adapt.hpp"
#include "ipvem/driver.hpp"
#include "ipvem/errors.hpp"
#include "ipvem/estimator.hpp"
#include "ipvem/mesh.hpp"
#include "ipvem/problems.hpp"
#include "ipvem/quadrature.hpp"
#include "ipvem/system.hpp"

namespace py = pybind11;
using namespace ipvem;

namespace {

Domain domain_from(const std::string& name) {
  if (name == "square") return Domain::UnitSquare;
  if (name == "lshape") return Domain::LShape;
  throw ConfigError("domain must be 'square' or 'lshape'");
}

std::pair<SchemeVariant, EstimatorVariant> variants_from(const std::string& name) {
  if (name == "grad") return {SchemeVariant::Grad, EstimatorVariant::Grad};
  if (name == "hess") return {SchemeVariant::Hess, EstimatorVariant::Hess};
  throw ConfigError("estimator must be 'grad' or 'hess'");
}

PolygonalMesh make_mesh(const std::vector<std::pair<double, double>>& vertices,
                        const std::vector<std::vector<int>>& cells) {
  std::vector<Point2> pts;
  pts.reserve(vertices.size());
  for (const auto& [x, y] : vertices) pts.push_back({x, y});
  return PolygonalMesh(std::move(pts), cells);
}

py::list vertex_list(const PolygonalMesh& mesh) {
  py::list out;
  for (const Point2& p : mesh.vertices()) out.append(py::make_tuple(p.x, p.y));
  return out;
}

py::dict record_dict(const IterationRecord& r) {
  py::dict d;
  d["iteration"] = r.iteration;
  d["n_cells"] = r.n_cells;
  d["n_dofs"] = r.n_dofs;
  d["h_max"] = r.h_max;
  d["errh2"] = r.errh2;
  d["eta"] = r.eta;
  d["eta_components"] = std::vector<double>(r.components.begin(), r.components.end());
  d["effectivity"] = r.effectivity;
  d["wall_seconds"] = r.wall_seconds;
  return d;
}

py::dict result_dict(const RunResult& res) {
  py::dict d;
  d["mode"] = res.log.mode;
  py::list records;
  for (const auto& r : res.log.records) records.append(record_dict(r));
  d["records"] = records;
  d["slope_errh2"] = res.slope_errh2;
  d["slope_eta"] = res.slope_eta;
  d["slopes_valid"] = res.slopes_valid;
  if (res.mesh) d["mesh"] = *res.mesh;
  if (res.estimate) {
    py::dict est;
    est["eta"] = res.estimate->eta;
    est["components"] =
        std::vector<double>(res.estimate->components.begin(), res.estimate->components.end());
    std::vector<double> local(res.estimate->cells.size());
    for (std::size_t i = 0; i < local.size(); ++i) local[i] = res.estimate->cells[i].total();
    est["local"] = local;
    d["estimate"] = est;
  }
  return d;
}

RunConfig config_from(const std::string& problem, int k, double theta, double lambda,
                      int max_iters, long max_dofs, const std::string& estimator, double delta,
                      const std::string& mesh_path, int initial_n, const std::string& out_dir,
                      bool sequential, unsigned patch_seed) {
  RunConfig cfg;
  cfg.problem = problem;
  cfg.k = k;
  cfg.theta = theta;
  cfg.lambda = lambda;
  cfg.max_iters = max_iters;
  cfg.max_dofs = max_dofs;
  cfg.estimator = estimator;
  cfg.delta = delta;
  cfg.mesh_path = mesh_path;
  cfg.initial_n = initial_n;
  cfg.out_dir = out_dir;
  cfg.sequential = sequential;
  cfg.patch_seed = patch_seed;
  return cfg;
}

py::dict solve_once(const PolygonalMesh& mesh, const std::string& problem, int k, double lambda,
                    const std::string& estimator, double delta, unsigned patch_seed) {
  const BenchmarkProblem prob = make_problem(problem, delta, patch_seed);
  const EdgeTable edges = build_edge_table(mesh);
  const GlobalDofMap dofs = number_dofs(mesh, edges, k);
  const auto ops = build_all_operators(mesh, k);
  const auto [scheme, est_variant] = variants_from(estimator);

  AssemblyOptions aopt;
  aopt.lambda = lambda;
  aopt.variant = scheme;
  const auto f = [&](Point2 p) { return prob.f(p); };
  const auto gD = [&](Point2 p) { return prob.gD(p); };
  const auto gN = [&](Point2 p, Point2 n) { return prob.gN(p, n); };
  const GlobalSystem sys = assemble(mesh, edges, dofs, ops, f, gD, gN, aopt);
  const Solution sol = solve_system(sys, dofs, ops, SolveOptions{});
  const EstimatorResult est = estimate(mesh, edges, dofs, ops, sol, f, gN, est_variant);
  const double errh2 =
      compute_errh2(ops, sol, [&](Point2 p) { return prob.hess(p); });

  py::dict out;
  out["n_dofs"] = dofs.size();
  out["dofs"] = std::vector<double>(sol.dofs.data(), sol.dofs.data() + sol.dofs.size());
  out["residual"] = sol.residual;
  out["solver"] = sol.solver;
  out["errh2"] = errh2;
  out["eta"] = est.eta;
  out["eta_components"] = std::vector<double>(est.components.begin(), est.components.end());
  std::vector<double> local(est.cells.size());
  for (std::size_t i = 0; i < local.size(); ++i) local[i] = est.cells[i].total();
  out["local"] = local;
  return out;
}

}  // namespace

PYBIND11_MODULE(_ipvem, m) {
  m.doc() = "interior-penalty virtual element method for plate bending";

  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<SolveError>(m, "SolveError", PyExc_RuntimeError);
  auto mesh_error = py::register_exception<MeshError>(m, "MeshError", PyExc_ValueError);
  py::register_exception<TopologyError>(m, "TopologyError", mesh_error.ptr());
  py::register_exception<GeometryError>(m, "GeometryError", mesh_error.ptr());

  py::class_<PolygonalMesh>(m, "Mesh")
      .def(py::init(&make_mesh), py::arg("vertices"), py::arg("cells"))
      .def_property_readonly("n_vertices", &PolygonalMesh::vertex_count)
      .def_property_readonly("n_cells", &PolygonalMesh::cell_count)
      .def("vertices", &vertex_list)
      .def("cells", [](const PolygonalMesh& mesh) { return mesh.cells(); })
      .def("area", &PolygonalMesh::area, py::arg("cell"))
      .def("diameter", &PolygonalMesh::diameter, py::arg("cell"))
      .def("centroid",
           [](const PolygonalMesh& mesh, int c) {
             const Point2 g = mesh.centroid(c);
             return py::make_tuple(g.x, g.y);
           },
           py::arg("cell"))
      .def("total_area", &PolygonalMesh::total_area)
      .def("max_diameter", &PolygonalMesh::max_diameter)
      .def("__repr__", [](const PolygonalMesh& mesh) {
        return "Mesh(" + std::to_string(mesh.vertex_count()) + " vertices, " +
               std::to_string(mesh.cell_count()) + " cells)";
      });

  m.def(
      "generate_mesh",
      [](int n, const std::string& domain) { return generate_square_mesh(n, domain_from(domain)); },
      py::arg("n"), py::arg("domain") = "square");
  m.def("load_mesh", [](const std::string& text) { return load_mesh(text); }, py::arg("text"));
  m.def("load_mesh_file", &load_mesh_file, py::arg("path"));
  m.def("save_mesh", &save_mesh, py::arg("mesh"));
  m.def("save_mesh_json", &save_mesh_json, py::arg("mesh"));

  m.def(
      "validate_mesh",
      [](const PolygonalMesh& mesh) {
        const MeshDiagnostics diag = validate_mesh(mesh);
        py::dict d;
        d["all_star_shaped"] = diag.all_star_shaped;
        d["max_edge_ratio"] = diag.max_edge_ratio;
        d["min_fan_angle_deg"] = diag.min_fan_angle_deg;
        d["shape_warnings"] = diag.shape_warnings;
        d["reoriented"] = diag.reoriented;
        return d;
      },
      py::arg("mesh"));
  m.def("audit_one_hanging_node",
        [](const PolygonalMesh& mesh) { return audit_one_hanging_node(mesh); }, py::arg("mesh"));

  m.def(
      "gauss_lobatto",
      [](int k) {
        const GaussLobattoRule rule = gauss_lobatto_rule(k);
        return py::make_tuple(rule.nodes, rule.weights);
      },
      py::arg("k"));

  m.def(
      "dorfler_mark",
      [](const std::vector<double>& local_squared, double theta) {
        const MarkSet set = dorfler_mark(local_squared, theta);
        return py::make_tuple(set.cells, set.achieved_fraction);
      },
      py::arg("local_squared"), py::arg("theta"));
  m.def(
      "refine",
      [](const PolygonalMesh& mesh, const std::vector<int>& marked) {
        const EdgeTable edges = build_edge_table(mesh);
        return refine_mesh(mesh, edges, expand_plan(mesh, edges, marked));
      },
      py::arg("mesh"), py::arg("marked"));

  m.def("solve", &solve_once, py::arg("mesh"), py::arg("problem") = "ex1", py::arg("k") = 2,
        py::arg("lam") = 1.0, py::arg("estimator") = "grad", py::arg("delta") = 1e-6,
        py::arg("patch_seed") = 20240901u);

  m.def(
      "run_adaptive",
      [](const std::string& problem, int k, double theta, double lambda, int max_iters,
         long max_dofs, const std::string& estimator, double delta, const std::string& mesh_path,
         int initial_n, const std::string& out_dir, bool sequential, unsigned patch_seed) {
        return result_dict(run_adaptive(
            config_from(problem, k, theta, lambda, max_iters, max_dofs, estimator, delta,
                        mesh_path, initial_n, out_dir, sequential, patch_seed)));
      },
      py::arg("problem") = "ex1", py::arg("k") = 2, py::arg("theta") = 0.4,
      py::arg("lam") = 1.0, py::arg("max_iters") = 15, py::arg("max_dofs") = 20000L,
      py::arg("estimator") = "grad", py::arg("delta") = 1e-6, py::arg("mesh_path") = "",
      py::arg("initial_n") = 8, py::arg("out_dir") = "", py::arg("sequential") = false,
      py::arg("patch_seed") = 20240901u);

  m.def(
      "run_uniform",
      [](const std::vector<int>& ns, const std::string& problem, int k, double lambda,
         const std::string& estimator, double delta, const std::string& out_dir, bool sequential,
         unsigned patch_seed) {
        RunConfig cfg = config_from(problem, k, 0.4, lambda, 15, 1L << 40, estimator, delta, "",
                                    8, out_dir, sequential, patch_seed);
        return result_dict(run_uniform(cfg, std::span<const int>(ns)));
      },
      py::arg("ns"), py::arg("problem") = "ex1", py::arg("k") = 2, py::arg("lam") = 1.0,
      py::arg("estimator") = "grad", py::arg("delta") = 1e-6, py::arg("out_dir") = "",
      py::arg("sequential") = false, py::arg("patch_seed") = 20240901u);

  m.def("fit_loglog_slope",
        [](const std::vector<double>& x, const std::vector<double>& y) {
          return fit_loglog_slope(x, y);
        },
        py::arg("x"), py::arg("y"));
}
