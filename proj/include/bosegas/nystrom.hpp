#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "bosegas/quadrature.hpp"
#include "bosegas/solvers.hpp"

namespace bosegas {

// Discretized Fredholm equation of the second kind,
//   phi(x_i) - sum_j K(x_i, x_j) w_j phi(x_j) = rhs(x_i),
// i.e. (I - K) phi = rhs with K_ij = kernel(x_i, x_j) * w_j.
struct NystromSystem {
  QuadratureGrid grid;
  Eigen::MatrixXd kernel_matrix;
  Eigen::VectorXd inhomogeneity;
};

template <class Kernel, class Rhs>
NystromSystem make_nystrom(QuadratureGrid grid, Kernel&& kernel, Rhs&& rhs) {
  const auto n = static_cast<Eigen::Index>(grid.size());
  NystromSystem sys;
  sys.kernel_matrix.resize(n, n);
  sys.inhomogeneity.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j)
      sys.kernel_matrix(i, j) = kernel(grid.nodes[i], grid.nodes[j]) * grid.weights[j];
    sys.inhomogeneity(i) = rhs(grid.nodes[i]);
  }
  sys.grid = std::move(grid);
  return sys;
}

// Dense LU with partial pivoting; the systems here are small (n <= a few
// hundred). A singular or badly conditioned system is an error, never
// silent garbage.
inline std::pair<Eigen::VectorXd, SolverReport> nystrom_solve(const NystromSystem& sys,
                                                              double tol = 1e-12) {
  const Eigen::Index n = sys.kernel_matrix.rows();
  if (!sys.kernel_matrix.allFinite() || !sys.inhomogeneity.allFinite())
    throw std::invalid_argument("nystrom_solve: non-finite system entries");

  const Eigen::MatrixXd system =
      Eigen::MatrixXd::Identity(n, n) - sys.kernel_matrix;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
  if (lu.rcond() < 1e-14) {
    SolverReport report;
    report.nodes_used = static_cast<int>(n);
    throw ConvergenceError("nystrom_solve: singular system (I - K)", report);
  }
  Eigen::VectorXd phi = lu.solve(sys.inhomogeneity);

  SolverReport report;
  report.nodes_used = static_cast<int>(n);
  report.iterations = 1;
  report.residual = (system * phi - sys.inhomogeneity).lpNorm<Eigen::Infinity>();
  const double scale = std::max(1.0, sys.inhomogeneity.lpNorm<Eigen::Infinity>());
  report.converged = report.residual <= tol * scale;
  if (!phi.allFinite())
    throw ConvergenceError("nystrom_solve: non-finite solution", report);
  return {std::move(phi), report};
}

}  // namespace bosegas
