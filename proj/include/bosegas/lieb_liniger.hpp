#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "bosegas/nystrom.hpp"
#include "bosegas/quadrature.hpp"
#include "bosegas/solvers.hpp"
#include "bosegas/thermo.hpp"

namespace bosegas {

// Dimensionless ground-state solution. With k = K x, c = K lambda,
// f(K x) = g(x), the Fredholm system becomes
//   2 pi g(y) = 1 + 2 lambda Int_{-1}^{1} g(x) / (lambda^2 + (x-y)^2) dx,
//   gamma Int g dx = lambda,
//   e(gamma) = (gamma^3 / lambda^3) Int g(x) x^2 dx,  E0/N = rho^2 e(gamma).
struct LiebGroundSolution {
  double lambda = 0.0;
  double K_cutoff = 0.0;  // Fermi-like momentum, K = c/lambda (at rho = 1)
  double gamma = 0.0;
  double e_dimensionless = 0.0;
  std::vector<double> x_nodes;
  std::vector<double> g_values;
  SolverReport report;
};

class LiebLinigerSolver {
 public:
  static constexpr double kGammaMin = 1e-4;
  static constexpr double kGammaMax = 1e5;

  explicit LiebLinigerSolver(int n_nodes = 128) : n_nodes_(n_nodes) {
    if (n_nodes < 16) throw std::invalid_argument("LiebLinigerSolver: n_nodes >= 16");
  }

  int nodes() const { return n_nodes_; }

  // The Lorentzian kernel has width lambda; for small lambda the node count
  // is raised so the diagonal peak stays resolved.
  int effective_nodes(double lambda) const {
    const int needed = static_cast<int>(std::ceil(12.0 / lambda));
    return std::max(n_nodes_, std::min(2000, needed));
  }

  LiebGroundSolution solve_dimensionless(double lambda) const {
    return solve_dimensionless(lambda, effective_nodes(lambda));
  }

  LiebGroundSolution solve_dimensionless(double lambda, int n) const {
    if (!(lambda > 0.0)) throw std::invalid_argument("solve_dimensionless: lambda > 0");
    if (n < 16) throw std::invalid_argument("solve_dimensionless: n_nodes >= 16");

    QuadratureGrid grid = gauss_legendre(n, -1.0, 1.0);
    auto kernel = [lambda](double y, double x) {
      return (lambda / M_PI) / (lambda * lambda + (x - y) * (x - y));
    };
    auto rhs = [](double) { return 1.0 / (2.0 * M_PI); };
    NystromSystem sys = make_nystrom(std::move(grid), kernel, rhs);
    auto [g, report] = nystrom_solve(sys);

    double norm = 0.0, second_moment = 0.0;
    for (std::size_t i = 0; i < sys.grid.size(); ++i) {
      norm += sys.grid.weights[i] * g[static_cast<Eigen::Index>(i)];
      second_moment += sys.grid.weights[i] * sys.grid.nodes[i] * sys.grid.nodes[i] *
                       g[static_cast<Eigen::Index>(i)];
    }

    LiebGroundSolution sol;
    sol.lambda = lambda;
    sol.gamma = lambda / norm;
    sol.K_cutoff = sol.gamma / lambda;  // c/lambda at rho = 1
    const double ratio = sol.gamma / lambda;
    sol.e_dimensionless = ratio * ratio * ratio * second_moment;
    sol.x_nodes = sys.grid.nodes;
    sol.g_values.assign(g.data(), g.data() + g.size());
    sol.report = report;
    return sol;
  }

  // Inverts gamma(lambda) by bracketing from the strong-coupling estimate
  // lambda0 = gamma/pi and Brent iteration. gamma(lambda) is monotone.
  double gamma_to_lambda(double gamma, double tol = 1e-12) const {
    check_gamma(gamma);
    const double ftol = tol * std::max(1.0, gamma);
    double lo = gamma / M_PI, hi = lo;
    auto f = [&](double lambda) { return solve_dimensionless(lambda).gamma - gamma; };
    int expansions = 0;
    while (f(lo) > 0.0) {
      lo *= 0.25;
      if (++expansions > 60)
        throw std::runtime_error("gamma_to_lambda: bracketing failed (gamma too small)");
    }
    expansions = 0;
    while (f(hi) < 0.0) {
      hi *= 4.0;
      if (++expansions > 60)
        throw std::runtime_error("gamma_to_lambda: bracketing failed (gamma too large)");
    }
    return brent_root(f, lo, hi, ftol);
  }

  // e(gamma); cached, each miss re-solves the Fredholm system.
  double ground_energy(double gamma) const {
    check_gamma(gamma);
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = energy_cache_.find(gamma);
      if (it != energy_cache_.end()) return it->second;
    }
    const double lambda = gamma_to_lambda(gamma);
    const double e = solve_dimensionless(lambda).e_dimensionless;
    std::lock_guard<std::mutex> lock(mutex_);
    energy_cache_.emplace(gamma, e);
    return e;
  }

  // mu/rho^2 and v_s/rho via the shared derivative pipeline.
  double chemical_potential(double gamma) const {
    check_gamma(gamma);
    return mu_from_energy([this](double g) { return ground_energy(g); }, gamma, kGammaMin);
  }

  double sound_velocity(double gamma) const {
    check_gamma(gamma);
    return vs_from_energy([this](double g) { return ground_energy(g); }, gamma, kGammaMin);
  }

  ThermoCurve sweep_ground(const std::vector<double>& gamma_grid) const {
    if (gamma_grid.empty()) throw std::invalid_argument("sweep_ground: empty grid");
    if (!std::is_sorted(gamma_grid.begin(), gamma_grid.end()))
      throw std::invalid_argument("sweep_ground: grid must be increasing");
    ThermoCurve curve;
    curve.method = "exact";
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < gamma_grid.size(); ++i) {
      const double g = gamma_grid[i];
      curve.gamma.push_back(g);
      try {
        curve.e.push_back(ground_energy(g));
        curve.mu.push_back(chemical_potential(g));
        curve.vs.push_back(sound_velocity(g));
      } catch (const std::exception& ex) {
        curve.e.resize(i + 1, nan);
        curve.mu.resize(i + 1, nan);
        curve.vs.resize(i + 1, nan);
        curve.failures.push_back({i, ex.what()});
      }
    }
    return curve;
  }

 private:
  static void check_gamma(double gamma) {
    if (!(gamma >= kGammaMin && gamma <= kGammaMax))
      throw std::domain_error("gamma outside supported range [1e-4, 1e5]");
  }

  int n_nodes_;
  mutable std::mutex mutex_;
  mutable std::map<double, double> energy_cache_;
};

}  // namespace bosegas
