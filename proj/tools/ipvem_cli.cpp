#include <cstdio>
#include <exception>
#include <vector>

#include <CLI11.hpp>

#include "ipvem/driver.hpp"
#include "ipvem/errors.hpp"

namespace {

void add_common_flags(CLI::App* cmd, ipvem::RunConfig& config) {
  cmd->add_option("--problem", config.problem, "benchmark: ex1, ex1-inhom, ex2, ex3, patch")
      ->capture_default_str();
  cmd->add_option("--k", config.k, "polynomial order (2 or 3)")->capture_default_str();
  cmd->add_option("--lambda", config.lambda, "penalty parameter")->capture_default_str();
  cmd->add_option("--estimator", config.estimator, "projector variant: grad or hess")
      ->capture_default_str();
  cmd->add_option("--delta", config.delta, "ex3 corner regularization")->capture_default_str();
  cmd->add_option("--mesh", config.mesh_path, "initial mesh file (text or JSON)");
  cmd->add_option("--n0", config.initial_n, "initial grid subdivisions when no mesh file")
      ->capture_default_str();
  cmd->add_option("--out", config.out_dir, "report output directory");
  cmd->add_flag("--seq", config.sequential, "deterministic sequential assembly");
}

void print_summary(const ipvem::RunResult& result) {
  for (const auto& r : result.log.records)
    std::printf("iter %2d  cells %6d  dofs %7ld  h %.4e  errh2 %.6e  eta %.6e  eff %.3f\n",
                r.iteration, r.n_cells, r.n_dofs, r.h_max, r.errh2, r.eta, r.effectivity);
  if (result.slopes_valid)
    std::printf("slopes: eta %.3f  errh2 %.3f\n", result.slope_eta, result.slope_errh2);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"interior-penalty virtual elements for the clamped plate"};
  app.require_subcommand(1);

  ipvem::RunConfig config;
  std::vector<int> sizes = {8, 16, 32};

  CLI::App* adapt = app.add_subcommand("adapt", "adaptive solve-estimate-mark-refine loop");
  add_common_flags(adapt, config);
  adapt->add_option("--theta", config.theta, "marking fraction")->capture_default_str();
  adapt->add_option("--max-iters", config.max_iters, "iteration cap")->capture_default_str();
  adapt->add_option("--max-dofs", config.max_dofs, "DoF budget")->capture_default_str();

  CLI::App* uniform = app.add_subcommand("uniform", "uniform refinement study");
  add_common_flags(uniform, config);
  uniform->add_option("--sizes", sizes, "grid subdivision counts")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(adapt)) {
      print_summary(ipvem::run_adaptive(config));
    } else {
      print_summary(ipvem::run_uniform(config, sizes));
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
