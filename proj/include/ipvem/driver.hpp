#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ipvem/estimator.hpp"
#include "ipvem/problems.hpp"

namespace ipvem {

struct RunConfig {
  std::string problem = "ex1";
  int k = 2;
  double theta = 0.4;
  double lambda = 1.0;
  int max_iters = 15;
  long max_dofs = 20000;
  std::string estimator = "grad";  // grad | hess
  double delta = 1e-6;             // ex3 regularization
  std::string mesh_path;           // optional initial mesh file
  int initial_n = 8;               // grid subdivisions when mesh_path is empty
  std::string out_dir;             // reports land here when non-empty
  bool sequential = false;
  unsigned patch_seed = 20240901;
};

/// Throws ConfigError on out-of-range parameters before anything is solved.
void validate_config(const RunConfig& config);

struct IterationRecord {
  int iteration = 0;
  int n_cells = 0;
  long n_dofs = 0;
  double h_max = 0.0;
  double errh2 = 0.0;
  double eta = 0.0;
  std::array<double, 6> components{};
  double effectivity = 0.0;
  double wall_seconds = 0.0;
};

struct ConvergenceLog {
  RunConfig config;
  std::string mode;  // "adapt" | "uniform"
  std::vector<IterationRecord> records;
};

struct RunResult {
  ConvergenceLog log;
  std::optional<PolygonalMesh> mesh;      // final mesh
  std::optional<EstimatorResult> estimate;  // on the final mesh
  double slope_errh2 = 0.0;
  double slope_eta = 0.0;
  bool slopes_valid = false;
};

/// Solve -> estimate -> mark -> refine until max_iters, the DoF budget, or a
/// zero estimate.
RunResult run_adaptive(const RunConfig& config);

/// One solve per subdivision count; slopes are fitted against h_max.
RunResult run_uniform(const RunConfig& config, std::span<const int> ns);

/// Least-squares slope of log(y) against log(x); NaN-free inputs required.
double fit_loglog_slope(std::span<const double> x, std::span<const double> y);

/// convergence.csv, run.json, plot data, per-cell breakdown and mesh
/// snapshots. Also called internally when config.out_dir is set.
void emit_reports(const RunResult& result, const std::string& out_dir);

}  // namespace ipvem
