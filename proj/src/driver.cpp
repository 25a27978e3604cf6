#include "ipvem/driver.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include <json.hpp>

#include "ipvem/adapt.hpp"
#include "ipvem/errors.hpp"

namespace ipvem {

namespace {

const std::set<std::string> kProblems = {"ex1", "ex1-inhom", "ex2", "ex3", "patch"};

EstimatorVariant estimator_variant(const std::string& name) {
  if (name == "grad") return EstimatorVariant::Grad;
  if (name == "hess") return EstimatorVariant::Hess;
  throw ConfigError("estimator must be 'grad' or 'hess'");
}

SchemeVariant scheme_variant(const std::string& name) {
  return name == "hess" ? SchemeVariant::Hess : SchemeVariant::Grad;
}

struct Level {
  EdgeTable edges;
  GlobalDofMap dofs;
  std::vector<ElementOperators> ops;
  Solution sol;
  EstimatorResult est;
  double errh2 = 0.0;
};

Level solve_level(const PolygonalMesh& mesh, const BenchmarkProblem& problem,
                  const RunConfig& config) {
  Level level;
  level.edges = build_edge_table(mesh);
  level.dofs = number_dofs(mesh, level.edges, config.k);
  level.ops = build_all_operators(mesh, config.k, -1, !config.sequential);
  AssemblyOptions opts;
  opts.lambda = config.lambda;
  opts.variant = scheme_variant(config.estimator);
  opts.parallel = !config.sequential;
  const auto f = [&](Point2 p) { return problem.f(p); };
  const auto gD = [&](Point2 p) { return problem.gD(p); };
  const auto gN = [&](Point2 p, Point2 n) { return problem.gN(p, n); };
  const GlobalSystem sys = assemble(mesh, level.edges, level.dofs, level.ops, f, gD, gN, opts);
  level.sol = solve_system(sys, level.dofs, level.ops);
  level.est = estimate(mesh, level.edges, level.dofs, level.ops, level.sol, f, gN,
                       estimator_variant(config.estimator));
  level.errh2 =
      compute_errh2(level.ops, level.sol, [&](Point2 p) { return problem.hess(p); });
  return level;
}

IterationRecord make_record(int iteration, const PolygonalMesh& mesh, const Level& level,
                            double wall_seconds) {
  IterationRecord rec;
  rec.iteration = iteration;
  rec.n_cells = mesh.cell_count();
  rec.n_dofs = level.dofs.size();
  rec.h_max = mesh.max_diameter();
  rec.errh2 = level.errh2;
  rec.eta = level.est.eta;
  for (int i = 0; i < 6; ++i) rec.components[i] = level.est.components[i];
  rec.effectivity = level.errh2 > 0.0 ? level.est.eta / level.errh2 : 0.0;
  rec.wall_seconds = wall_seconds;
  return rec;
}

PolygonalMesh initial_mesh(const RunConfig& config, const BenchmarkProblem& problem) {
  if (!config.mesh_path.empty()) return load_mesh_file(config.mesh_path);
  return generate_square_mesh(config.initial_n, problem.domain);
}

void write_mesh_snapshot(const std::string& out_dir, int iteration, const PolygonalMesh& mesh) {
  char name[32];
  std::snprintf(name, sizeof(name), "mesh_%03d.txt", iteration);
  std::ofstream os(std::filesystem::path(out_dir) / name);
  os << save_mesh(mesh);
}

void fit_slopes(RunResult& result, bool against_dofs) {
  const auto& records = result.log.records;
  if (records.size() < 2) return;
  std::vector<double> x, eta, err;
  for (const auto& r : records) {
    x.push_back(against_dofs ? static_cast<double>(r.n_dofs) : r.h_max);
    eta.push_back(r.eta);
    err.push_back(r.errh2);
  }
  const double eta_max = *std::max_element(eta.begin(), eta.end());
  const double err_max = *std::max_element(err.begin(), err.end());
  if (eta_max < 1e-10 || err_max < 1e-10) return;  // nothing meaningful to fit
  result.slope_eta = fit_loglog_slope(x, eta);
  result.slope_errh2 = fit_loglog_slope(x, err);
  result.slopes_valid = true;
}

}  // namespace

void validate_config(const RunConfig& config) {
  if (!kProblems.contains(config.problem))
    throw ConfigError("unknown problem: " + config.problem);
  if (config.k < 2 || config.k > 3) throw ConfigError("order k must be 2 or 3");
  if (!(config.theta > 0.0 && config.theta < 1.0))
    throw ConfigError("marking fraction theta must lie in (0, 1)");
  if (!(config.lambda > 0.0)) throw ConfigError("penalty lambda must be positive");
  if (config.max_iters < 1) throw ConfigError("max_iters must be at least 1");
  if (config.max_dofs < 1) throw ConfigError("max_dofs must be at least 1");
  estimator_variant(config.estimator);
  if (config.delta < 0.0) throw ConfigError("delta must be non-negative");
  if (config.mesh_path.empty()) {
    if (config.initial_n < 1) throw ConfigError("initial mesh subdivision must be positive");
    if (config.problem == "ex3" && config.initial_n % 2 != 0)
      throw ConfigError("ex3 runs on the L-shape and needs an even subdivision count");
  }
}

double fit_loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw ConfigError("slope fit needs two or more samples");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

RunResult run_adaptive(const RunConfig& config) {
  validate_config(config);
  const BenchmarkProblem problem = make_problem(config.problem, config.delta, config.patch_seed);
  PolygonalMesh mesh = initial_mesh(config, problem);
  if (!config.out_dir.empty()) std::filesystem::create_directories(config.out_dir);

  RunResult result;
  result.log.config = config;
  result.log.mode = "adapt";
  for (int it = 0; it < config.max_iters; ++it) {
    const auto t0 = std::chrono::steady_clock::now();
    Level level = solve_level(mesh, problem, config);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    result.log.records.push_back(make_record(it, mesh, level, wall));
    if (!config.out_dir.empty()) write_mesh_snapshot(config.out_dir, it, mesh);

    result.estimate = level.est;
    const bool last = it + 1 == config.max_iters;
    if (last) break;
    const MarkSet marked = dorfler_mark(level.est.local_squared(), config.theta);
    if (marked.cells.empty()) break;  // estimator vanished: converged
    const auto plan = expand_plan(mesh, level.edges, marked.cells);
    PolygonalMesh refined = refine_mesh(mesh, level.edges, plan);
    const long next_dofs = number_dofs(refined, build_edge_table(refined), config.k).size();
    if (next_dofs > config.max_dofs) break;  // budget reached
    mesh = std::move(refined);
  }
  result.mesh = std::move(mesh);
  fit_slopes(result, /*against_dofs=*/true);
  if (!config.out_dir.empty()) emit_reports(result, config.out_dir);
  return result;
}

RunResult run_uniform(const RunConfig& config, std::span<const int> ns) {
  validate_config(config);
  if (ns.empty()) throw ConfigError("uniform run needs at least one mesh size");
  const BenchmarkProblem problem = make_problem(config.problem, config.delta, config.patch_seed);
  if (!config.out_dir.empty()) std::filesystem::create_directories(config.out_dir);

  RunResult result;
  result.log.config = config;
  result.log.mode = "uniform";
  int it = 0;
  for (int n : ns) {
    PolygonalMesh mesh = generate_square_mesh(n, problem.domain);
    const auto t0 = std::chrono::steady_clock::now();
    Level level = solve_level(mesh, problem, config);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    result.log.records.push_back(make_record(it, mesh, level, wall));
    if (!config.out_dir.empty()) write_mesh_snapshot(config.out_dir, it, mesh);
    result.estimate = level.est;
    result.mesh = std::move(mesh);
    ++it;
  }
  fit_slopes(result, /*against_dofs=*/false);
  if (!config.out_dir.empty()) emit_reports(result, config.out_dir);
  return result;
}

void emit_reports(const RunResult& result, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const auto& records = result.log.records;

  {
    std::ofstream os(fs::path(out_dir) / "convergence.csv");
    os.precision(12);
    os << "iteration,n_cells,n_dofs,h_max,errh2,eta,eta1,eta2,eta3,eta4,eta5,eta6,"
          "effectivity,wall_seconds\n";
    for (const auto& r : records) {
      os << r.iteration << ',' << r.n_cells << ',' << r.n_dofs << ',' << r.h_max << ','
         << r.errh2 << ',' << r.eta;
      for (double c : r.components) os << ',' << c;
      os << ',' << r.effectivity << ',' << r.wall_seconds << '\n';
    }
  }

  {
    nlohmann::json j;
    j["mode"] = result.log.mode;
    const RunConfig& c = result.log.config;
    j["config"] = {{"problem", c.problem},   {"k", c.k},
                   {"theta", c.theta},       {"lambda", c.lambda},
                   {"max_iters", c.max_iters}, {"max_dofs", c.max_dofs},
                   {"estimator", c.estimator}, {"delta", c.delta},
                   {"mesh_path", c.mesh_path}, {"initial_n", c.initial_n},
                   {"sequential", c.sequential}};
    j["records"] = nlohmann::json::array();
    for (const auto& r : records) {
      j["records"].push_back({{"iteration", r.iteration},
                              {"n_cells", r.n_cells},
                              {"n_dofs", r.n_dofs},
                              {"h_max", r.h_max},
                              {"errh2", r.errh2},
                              {"eta", r.eta},
                              {"eta_components", r.components},
                              {"effectivity", r.effectivity},
                              {"wall_seconds", r.wall_seconds}});
    }
    if (result.slopes_valid)
      j["slopes"] = {{"eta", result.slope_eta}, {"errh2", result.slope_errh2}};
    std::ofstream os(fs::path(out_dir) / "run.json");
    os << j.dump(2) << "\n";
  }

  if (!records.empty()) {
    const double p = -(result.log.config.k - 1) / 2.0;
    const auto write_plot = [&](const std::string& name, auto pick) {
      std::ofstream os(fs::path(out_dir) / name);
      os.precision(12);
      os << "# n_dofs value reference\n";
      const double y0 = pick(records.front());
      const double n0 = static_cast<double>(records.front().n_dofs);
      for (const auto& r : records) {
        const double ref = y0 * std::pow(static_cast<double>(r.n_dofs) / n0, p);
        os << r.n_dofs << ' ' << pick(r) << ' ' << ref << '\n';
      }
    };
    write_plot("eta_vs_dofs.dat", [](const IterationRecord& r) { return r.eta; });
    write_plot("errh2_vs_dofs.dat", [](const IterationRecord& r) { return r.errh2; });
  }

  if (result.estimate) {
    std::ofstream os(fs::path(out_dir) / "breakdown.csv");
    write_breakdown_csv(os, *result.estimate);
  }
  if (result.mesh) {
    std::ofstream os(fs::path(out_dir) / "mesh_final.txt");
    os << save_mesh(*result.mesh);
  }
}

}  // namespace ipvem
