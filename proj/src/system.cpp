#include "ipvem/system.hpp"

#include <sstream>
#include <thread>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>

#include "ipvem/errors.hpp"

namespace ipvem {

GlobalDofMap number_dofs(const PolygonalMesh& mesh, const EdgeTable& edges, int k) {
  if (k < 2 || k > 3) throw ConfigError("order k must be 2 or 3");
  GlobalDofMap dofs;
  dofs.k = k;
  dofs.n_vertices = mesh.vertex_count();
  dofs.n_edges = edges.edge_count();
  dofs.n_cells = mesh.cell_count();
  dofs.boundary.assign(dofs.size(), 0);
  for (int e = 0; e < edges.edge_count(); ++e) {
    const Edge& edge = edges.edge(e);
    if (!edge.boundary()) continue;
    dofs.boundary[dofs.vertex_dof(edge.v0)] = 1;
    dofs.boundary[dofs.vertex_dof(edge.v1)] = 1;
    for (int j = 0; j < dofs.edge_interior(); ++j) dofs.boundary[dofs.edge_dof(e, j)] = 1;
  }
  dofs.cell_dofs.resize(mesh.cell_count());
  for (int c = 0; c < mesh.cell_count(); ++c) {
    const auto& cell = mesh.cell(c);
    const int nv = static_cast<int>(cell.size());
    auto& map = dofs.cell_dofs[c];
    map.reserve(nv * k + dofs.moment_count());
    for (int i = 0; i < nv; ++i) map.push_back(dofs.vertex_dof(cell[i]));
    for (int j = 0; j < nv; ++j) {
      const int e = edges.cell_edges(c)[j];
      const bool fwd = edges.cell_edge_forward(c, j);
      for (int m = 0; m < k - 1; ++m)
        map.push_back(dofs.edge_dof(e, fwd ? m : k - 2 - m));
    }
    for (int m = 0; m < dofs.moment_count(); ++m) map.push_back(dofs.cell_dof(c, m));
  }
  return dofs;
}

std::vector<ElementOperators> build_all_operators(const PolygonalMesh& mesh, int k,
                                                  int quad_degree, bool parallel) {
  const int nc = mesh.cell_count();
  std::vector<ElementOperators> ops(nc);
  const auto work = [&](int c) { ops[c] = build_element_operators(mesh, c, k, quad_degree); };
  if (parallel && nc > 8) {
    const unsigned nt = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nt; ++t)
      pool.emplace_back([&, t] {
        for (int c = static_cast<int>(t); c < nc; c += static_cast<int>(nt)) work(c);
      });
    for (auto& th : pool) th.join();
  } else {
    for (int c = 0; c < nc; ++c) work(c);
  }
  return ops;
}

namespace {

void scatter_block(std::vector<Eigen::Triplet<double>>& triplets, const Eigen::MatrixXd& block,
                   const std::vector<int>& rows, const std::vector<int>& cols) {
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      triplets.emplace_back(rows[i], cols[j], block(static_cast<long>(i), static_cast<long>(j)));
}

}  // namespace

GlobalSystem assemble(const PolygonalMesh& mesh, const EdgeTable& edges,
                      const GlobalDofMap& dofs, const std::vector<ElementOperators>& ops,
                      const std::function<double(Point2)>& f,
                      const std::function<double(Point2)>& gD,
                      const std::function<double(Point2, Point2)>& gN,
                      const AssemblyOptions& options) {
  const long n = dofs.size();
  GlobalSystem sys;
  sys.b = Eigen::VectorXd::Zero(n);
  sys.is_dirichlet.assign(dofs.boundary.begin(), dofs.boundary.end());
  sys.dirichlet_values = Eigen::VectorXd::Zero(n);

  const int nc = mesh.cell_count();
  std::vector<Eigen::MatrixXd> cell_blocks(nc);
  std::vector<Eigen::VectorXd> cell_loads(nc);
  const auto cell_work = [&](int c) {
    cell_blocks[c] = local_stiffness(ops[c]);
    cell_loads[c] = local_load(ops[c], f);
  };
  if (options.parallel && nc > 8) {
    const unsigned nt = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nt; ++t)
      pool.emplace_back([&, t] {
        for (int c = static_cast<int>(t); c < nc; c += static_cast<int>(nt)) cell_work(c);
      });
    for (auto& th : pool) th.join();
  } else {
    for (int c = 0; c < nc; ++c) cell_work(c);
  }

  std::vector<Eigen::Triplet<double>> triplets;
  for (int c = 0; c < nc; ++c) {
    scatter_block(triplets, cell_blocks[c], dofs.cell_dofs[c], dofs.cell_dofs[c]);
    for (std::size_t i = 0; i < dofs.cell_dofs[c].size(); ++i)
      sys.b(dofs.cell_dofs[c][i]) += cell_loads[c](static_cast<long>(i));
  }

  const int ne = edges.edge_count();
  std::vector<EdgeCoupling> couplings(ne);
  const auto edge_work = [&](int e) {
    const Edge& edge = edges.edge(e);
    couplings[e] = assemble_penalty_blocks(edge, e, ops[edge.left],
                                           edge.boundary() ? nullptr : &ops[edge.right],
                                           options.lambda, options.variant);
  };
  if (options.parallel && ne > 8) {
    const unsigned nt = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nt; ++t)
      pool.emplace_back([&, t] {
        for (int e = static_cast<int>(t); e < ne; e += static_cast<int>(nt)) edge_work(e);
      });
    for (auto& th : pool) th.join();
  } else {
    for (int e = 0; e < ne; ++e) edge_work(e);
  }
  for (int e = 0; e < ne; ++e) {
    const Edge& edge = edges.edge(e);
    std::vector<int> stacked = dofs.cell_dofs[edge.left];
    if (!edge.boundary())
      stacked.insert(stacked.end(), dofs.cell_dofs[edge.right].begin(),
                     dofs.cell_dofs[edge.right].end());
    scatter_block(triplets, couplings[e].block, stacked, stacked);
  }

  // boundary data
  const GaussLobattoRule gl = gauss_lobatto_rule(dofs.k);
  for (int e = 0; e < ne; ++e) {
    const Edge& edge = edges.edge(e);
    if (!edge.boundary()) continue;
    if (gD) {
      sys.dirichlet_values(dofs.vertex_dof(edge.v0)) = gD(mesh.vertex(edge.v0));
      sys.dirichlet_values(dofs.vertex_dof(edge.v1)) = gD(mesh.vertex(edge.v1));
      const Point2 a = mesh.vertex(edge.v0);
      const Point2 b = mesh.vertex(edge.v1);
      for (int j = 0; j < dofs.edge_interior(); ++j) {
        const Point2 p = a + (0.5 * (gl.nodes[j + 1] + 1.0)) * (b - a);
        sys.dirichlet_values(dofs.edge_dof(e, j)) = gD(p);
      }
    }
    if (gN) {
      const Point2 ne_out = edge.normal;  // boundary edge: outward for the left cell
      const Eigen::VectorXd load = boundary_neumann_load(
          edge, ops[edge.left], [&](Point2 p) { return gN(p, ne_out); }, options.lambda,
          options.variant);
      const auto& rows = dofs.cell_dofs[edge.left];
      for (std::size_t i = 0; i < rows.size(); ++i) sys.b(rows[i]) += load(static_cast<long>(i));
    }
  }

  sys.A.resize(n, n);
  sys.A.setFromTriplets(triplets.begin(), triplets.end());
  return sys;
}

Solution solve_system(const GlobalSystem& system, const GlobalDofMap& dofs,
                      const std::vector<ElementOperators>& ops, const SolveOptions& options) {
  const long n = system.A.rows();
  std::vector<long> free_index(n, -1);
  long n_free = 0;
  for (long i = 0; i < n; ++i)
    if (!system.is_dirichlet[i]) free_index[i] = n_free++;

  // reduced right side: b_f - A_fc x_c
  Eigen::VectorXd full = Eigen::VectorXd::Zero(n);
  for (long i = 0; i < n; ++i)
    if (system.is_dirichlet[i]) full(i) = system.dirichlet_values(i);
  const Eigen::VectorXd lifted = system.A * full;
  Eigen::VectorXd rhs(n_free);
  for (long i = 0; i < n; ++i)
    if (free_index[i] >= 0) rhs(free_index[i]) = system.b(i) - lifted(i);

  std::vector<Eigen::Triplet<double>> triplets;
  for (long col = 0; col < system.A.outerSize(); ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(system.A, col); it; ++it)
      if (free_index[it.row()] >= 0 && free_index[it.col()] >= 0)
        triplets.emplace_back(free_index[it.row()], free_index[it.col()], it.value());
  Eigen::SparseMatrix<double> A(n_free, n_free);
  A.setFromTriplets(triplets.begin(), triplets.end());

  Solution sol;
  Eigen::VectorXd x(n_free);
  const double rhs_norm = rhs.norm();
  Eigen::VectorXd row_abs_sum = Eigen::VectorXd::Zero(n_free);
  for (long col = 0; col < A.outerSize(); ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(A, col); it; ++it)
      row_abs_sum(it.row()) += std::abs(it.value());
  const double a_norm = n_free > 0 ? row_abs_sum.maxCoeff() : 0.0;
  // normwise backward error, attainable regardless of conditioning
  const auto residual_of = [&](const Eigen::VectorXd& v) {
    const double scale = a_norm * v.norm() + rhs_norm;
    const double r = (A * v - rhs).norm();
    return scale == 0.0 ? r : r / scale;
  };
  bool solved = false;
  if (!options.force_iterative) {
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(A);
    if (ldlt.info() == Eigen::Success) {
      x = ldlt.solve(rhs);
      sol.residual = residual_of(x);
      // iterative refinement with the existing factorization
      for (int pass = 0; pass < 4 && sol.residual > options.rel_tol; ++pass) {
        const Eigen::VectorXd dx = ldlt.solve(rhs - A * x);
        const Eigen::VectorXd candidate = x + dx;
        const double refined = residual_of(candidate);
        if (refined >= sol.residual) break;
        x = candidate;
        sol.residual = refined;
      }
      sol.solver = "ldlt";
      solved = sol.residual <= options.rel_tol;
    }
  }
  if (!solved) {
    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg(A);
    cg.setTolerance(options.rel_tol * 1e-2);
    cg.setMaxIterations(20 * n_free);
    if (options.force_iterative)
      x = cg.solve(rhs);
    else
      x = cg.solveWithGuess(rhs, x);
    sol.residual = residual_of(x);
    sol.solver = options.force_iterative ? "cg" : "ldlt+cg";
    solved = sol.residual <= options.rel_tol;
  }
  if (!solved) {
    std::ostringstream msg;
    msg << "linear solver stalled at relative residual " << sol.residual;
    throw SolveError(msg.str());
  }

  sol.dofs = full;
  for (long i = 0; i < n; ++i)
    if (free_index[i] >= 0) sol.dofs(i) = x(free_index[i]);

  sol.grad_coeffs.resize(ops.size());
  sol.hess_coeffs.resize(ops.size());
  for (std::size_t c = 0; c < ops.size(); ++c) {
    const auto& map = dofs.cell_dofs[c];
    Eigen::VectorXd local(map.size());
    for (std::size_t i = 0; i < map.size(); ++i) local(static_cast<long>(i)) = sol.dofs(map[i]);
    sol.grad_coeffs[c] = ops[c].Pgrad * local;
    sol.hess_coeffs[c] = ops[c].Phess * local;
  }
  return sol;
}

Eigen::VectorXd interpolate(const PolygonalMesh& mesh, const EdgeTable& edges,
                            const GlobalDofMap& dofs, const std::vector<ElementOperators>& ops,
                            const std::function<double(Point2)>& u) {
  Eigen::VectorXd chi = Eigen::VectorXd::Zero(dofs.size());
  for (int v = 0; v < mesh.vertex_count(); ++v) chi(dofs.vertex_dof(v)) = u(mesh.vertex(v));
  const GaussLobattoRule gl = gauss_lobatto_rule(dofs.k);
  for (int e = 0; e < edges.edge_count(); ++e) {
    const Edge& edge = edges.edge(e);
    const Point2 a = mesh.vertex(edge.v0);
    const Point2 b = mesh.vertex(edge.v1);
    for (int j = 0; j < dofs.edge_interior(); ++j) {
      const Point2 p = a + (0.5 * (gl.nodes[j + 1] + 1.0)) * (b - a);
      chi(dofs.edge_dof(e, j)) = u(p);
    }
  }
  for (int c = 0; c < mesh.cell_count(); ++c) {
    const auto& quad = ops[c].quad;
    for (int m = 0; m < dofs.moment_count(); ++m) {
      double s = 0.0;
      for (std::size_t q = 0; q < quad.points.size(); ++q)
        s += quad.weights[q] * u(quad.points[q]) * ops[c].basis.value(m, quad.points[q]);
      chi(dofs.cell_dof(c, m)) = s / mesh.area(c);
    }
  }
  return chi;
}

double compute_errh2(const std::vector<ElementOperators>& ops, const Solution& sol,
                     const std::function<Eigen::Matrix2d(Point2)>& exact_hess) {
  double err2 = 0.0;
  for (std::size_t c = 0; c < ops.size(); ++c) {
    const auto& basis = ops[c].basis;
    const Eigen::VectorXd cxx = basis.dx() * (basis.dx() * sol.hess_coeffs[c]);
    const Eigen::VectorXd cxy = basis.dy() * (basis.dx() * sol.hess_coeffs[c]);
    const Eigen::VectorXd cyy = basis.dy() * (basis.dy() * sol.hess_coeffs[c]);
    for (std::size_t q = 0; q < ops[c].quad.points.size(); ++q) {
      const Point2 p = ops[c].quad.points[q];
      const Eigen::VectorXd vals = basis.values(p);
      const Eigen::Matrix2d h = exact_hess(p);
      const double dxx = h(0, 0) - vals.dot(cxx);
      const double dxy = h(0, 1) - vals.dot(cxy);
      const double dyy = h(1, 1) - vals.dot(cyy);
      err2 += ops[c].quad.weights[q] * (dxx * dxx + 2.0 * dxy * dxy + dyy * dyy);
    }
  }
  return std::sqrt(err2);
}

}  // namespace ipvem
