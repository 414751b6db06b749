#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "bosegas/quadrature.hpp"
#include "bosegas/solvers.hpp"
#include "bosegas/thermo.hpp"

namespace bosegas {

enum class Phase { Condensed, NonCondensed };

// Self-consistent Gaussian solution. A is the anomalous-pairing integral,
// B the depletion integral, C the kinetic one:
//   A = (1/4pi) Int (1+2nu) sinh 2sigma dk
//   B = (1/4pi) Int [(1+2nu) cosh 2sigma - 1] dk
//   C = (1/4pi) Int k^2 [(1+2nu) cosh 2sigma - 1] dk
// (all over the real line; computed as 2 Int_0^inf).
struct GaussianSolution {
  CouplingPoint point;
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  double condensate_density = 0.0;  // rho - B
  double mu = 0.0;
  double energy_per_particle = 0.0;
  double free_energy_density = 0.0;
  double residual = 0.0;  // max gap-equation defect
  Phase phase = Phase::Condensed;
  SolverReport report;
};

// Bogolyubov transformation parameters on the k-grid.
struct BogolyubovParams {
  std::vector<double> k;
  std::vector<double> tanh_2sigma;
  std::vector<double> nu;
};

struct SpectrumSample {
  double k;
  double energy;
};

namespace detail {

// Bose occupation 1/(e^x - 1) with overflow guard.
inline double occupancy(double x) {
  if (x > 700.0) return 0.0;
  return 1.0 / std::expm1(x);
}

inline double entropy_term(double nu) {
  if (nu < 0.0) throw std::invalid_argument("entropy_term: nu must be >= 0");
  if (nu == 0.0) return 0.0;
  return (1.0 + nu) * std::log1p(nu) - nu * std::log(nu);
}

}  // namespace detail

// Quasiparticle spectrum e_g(k)^2 = e^2 + 4 c e (rho-B+A) + 16 c^2 (rho-B) A,
// in the numerically stable factored form (k^2 + 4cA)(k^2 + 4c(rho-B)).
inline double gaussian_spectrum_at(const CouplingPoint& pt, double A, double B, double k) {
  const double e = k * k;
  const double radicand = (e + 4.0 * pt.c * A) * (e + 4.0 * pt.c * (pt.rho - B));
  if (radicand < 0.0)
    throw std::domain_error("gaussian_spectrum_at: negative radicand (invalid A, B)");
  return std::sqrt(radicand);
}

inline std::vector<SpectrumSample> gaussian_spectrum(const CouplingPoint& pt, double A,
                                                     double B,
                                                     const std::vector<double>& k_grid) {
  std::vector<SpectrumSample> samples;
  samples.reserve(k_grid.size());
  for (double k : k_grid) samples.push_back({k, gaussian_spectrum_at(pt, A, B, k)});
  return samples;
}

// T=0 ground-state energy per particle in terms of the converged integrals.
inline double gaussian_energy(const CouplingPoint& pt, double A, double B, double C) {
  const double rho = pt.rho, c = pt.c;
  return C / rho - 2.0 * c * (A - B) + (c / rho) * (rho * rho + A * A - B * B) +
         2.0 * (c / rho) * A * B;
}

// Free energy per unit length; the entropy integral vanishes at T=0 and the
// result then equals rho * (E/N).
inline double gaussian_free_energy(const CouplingPoint& pt, double A, double B, double C,
                                   const QuadratureGrid& grid,
                                   const std::vector<double>& nu) {
  if (nu.size() != grid.size())
    throw std::invalid_argument("gaussian_free_energy: nu/grid size mismatch");
  const double rho = pt.rho, c = pt.c;
  double entropy = 0.0;
  for (std::size_t i = 0; i < nu.size(); ++i)
    entropy += grid.weights[i] * detail::entropy_term(nu[i]);
  return C - 2.0 * c * rho * (A - B) + c * (rho * rho + A * A - B * B) + 2.0 * c * A * B -
         (pt.temperature / M_PI) * entropy;
}

// Particle-number variance of the Gaussian state, assembled from the zero
// mode and the precomputed k-sums (real transformation parameters).
inline double number_variance(double gamma0, double x0, double y0, double nu0,
                              double sum_linear, double sum_quadratic) {
  if (std::abs(x0 * x0 - y0 * y0 - 1.0) > 1e-10)
    throw std::invalid_argument("number_variance: canonicity x0^2 - y0^2 = 1 violated");
  if (nu0 < 0.0) throw std::invalid_argument("number_variance: nu0 must be >= 0");
  const double g2 = gamma0 * gamma0;
  return 2.0 * g2 * (x0 * x0 * nu0 + y0 * y0 * (1.0 + nu0)) -
         4.0 * g2 * x0 * y0 * (1.0 + 2.0 * nu0) + g2 + sum_linear + sum_quadratic;
}

class GaussianSolver {
 public:
  explicit GaussianSolver(int n_nodes = 128, double tol = 1e-11)
      : n_nodes_(n_nodes), tol_(tol) {
    if (n_nodes < 8) throw std::invalid_argument("GaussianSolver: n_nodes >= 8");
  }

  // The gap-equation integrands decay like 1/k^2, so the truncation must sit
  // far out; the log-mapped outer panel makes the large k_max cheap.
  QuadratureGrid make_grid(const CouplingPoint& pt) const { return make_grid(pt, n_nodes_); }

  QuadratureGrid make_grid(const CouplingPoint& pt, int n) const {
    const double scale = std::sqrt(pt.c * pt.rho);
    return halfline_grid(n, scale, 1e9 * scale);
  }

  // Self-consistent (A, B) at fixed rho, T by damped fixed-point iteration.
  // Started from A0 = rho sqrt(gamma)/(2pi), B0 = A0/2: any A0 > 0 keeps the
  // spectrum gapped so the A-integrand stays bounded at k = 0.
  GaussianSolution solve_condensed(const CouplingPoint& pt) const {
    if (pt.temperature < 0.0) throw std::invalid_argument("solve_condensed: T >= 0");
    if (pt.c == 0.0) return free_gas_solution(pt);
    if (!(pt.c > 0.0)) throw std::invalid_argument("solve_condensed: c >= 0");

    const QuadratureGrid grid = make_grid(pt);
    auto map = [&](const std::vector<double>& x) { return gap_map(pt, grid, x); };

    std::vector<double> x0 = {pt.rho * std::sqrt(pt.gamma) / (2.0 * M_PI), 0.0};
    x0[1] = 0.5 * x0[0];

    SolverReport report;
    std::vector<double> x;
    for (double alpha : {0.5, 0.25, 0.125, 0.0625}) {
      std::tie(x, report) = damped_fixed_point(map, x0, alpha, tol_, 5000);
      if (report.converged) break;
    }
    if (!report.converged)
      throw ConvergenceError("solve_condensed: gap equations did not converge", report);

    const double A = x[0], B = x[1];
    if (!(A > 0.0) || !(B < pt.rho))
      throw ConvergenceError("solve_condensed: converged to an invalid phase", report);

    GaussianSolution sol;
    sol.point = pt;
    sol.A = A;
    sol.B = B;
    sol.C = kinetic_integral(pt, grid, A, B);
    sol.condensate_density = pt.rho - B;
    sol.mu = 2.0 * pt.c * (pt.rho - A + B);
    sol.energy_per_particle = gaussian_energy(pt, A, B, sol.C);
    sol.residual = report.residual;
    sol.phase = Phase::Condensed;
    sol.report = report;

    const BogolyubovParams params = bogolyubov_params(pt, grid, A, B);
    sol.free_energy_density = gaussian_free_energy(pt, A, B, sol.C, grid, params.nu);
    return sol;
  }

  // Non-condensed phase: A = 0, sigma_k = 0, spectrum k^2 - mu + 4 c rho.
  // The density constraint
  //   rho = (1/2pi) Int dk / (exp[(k^2 - mu + 4 c rho)/T] - 1)
  // fixes mu; parametrized by the shift s = 4 c rho - mu > 0.
  GaussianSolution solve_noncondensed(const CouplingPoint& pt) const {
    if (!(pt.temperature > 0.0))
      throw std::invalid_argument(
          "solve_noncondensed: the non-condensed phase degenerates at T = 0");

    const double T = pt.temperature;
    const double scale = std::sqrt(T);
    const QuadratureGrid grid = halfline_grid(n_nodes_, scale, 1e6 * scale);
    auto density = [&](double s) {
      return (1.0 / M_PI) *
             grid.integrate([&](double k) { return detail::occupancy((k * k + s) / T); });
    };

    double s_lo = 1e-16, s_hi = T;
    int expansions = 0;
    while (density(s_hi) > pt.rho) {
      s_hi *= 4.0;
      if (++expansions > 200)
        throw std::runtime_error("solve_noncondensed: no root in bracket");
    }
    const double s =
        brent_root([&](double v) { return density(v) - pt.rho; }, s_lo, s_hi, 1e-13);

    GaussianSolution sol;
    sol.point = pt;
    sol.A = 0.0;
    sol.B = pt.rho;
    sol.condensate_density = 0.0;
    sol.mu = 4.0 * pt.c * pt.rho - s;
    sol.phase = Phase::NonCondensed;
    sol.residual = std::abs(density(s) - pt.rho);
    sol.report.converged = true;
    sol.report.residual = sol.residual;
    sol.report.nodes_used = static_cast<int>(grid.size());

    std::vector<double> nu(grid.size());
    double kinetic = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double k = grid.nodes[i];
      nu[i] = detail::occupancy((k * k + s) / T);
      kinetic += grid.weights[i] * k * k * nu[i];
    }
    sol.C = kinetic / M_PI;
    sol.energy_per_particle = sol.C / pt.rho + 2.0 * pt.c * pt.rho;
    sol.free_energy_density = gaussian_free_energy(pt, 0.0, pt.rho, sol.C, grid, nu);
    return sol;
  }

  BogolyubovParams bogolyubov_params(const CouplingPoint& pt, double A, double B) const {
    return bogolyubov_params(pt, make_grid(pt), A, B);
  }

  BogolyubovParams bogolyubov_params(const CouplingPoint& pt, const QuadratureGrid& grid,
                                     double A, double B) const {
    BogolyubovParams params;
    params.k = grid.nodes;
    params.tanh_2sigma.resize(grid.size());
    params.nu.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double k = grid.nodes[i];
      const double eg = gaussian_spectrum_at(pt, A, B, k);
      const double d = k * k + 2.0 * pt.c * (pt.rho - B + A);
      params.tanh_2sigma[i] = 2.0 * pt.c * (pt.rho - B - A) / d;
      params.nu[i] =
          pt.temperature > 0.0 ? detail::occupancy(eg / pt.temperature) : 0.0;
    }
    return params;
  }

  // e, mu (in units rho^2) and compressibility v_s over a gamma grid. The
  // v_s column reuses the exact-solution derivative pipeline on the
  // Gaussian e(gamma) curve.
  ThermoCurve sweep(const std::vector<double>& gamma_grid, double rho = 1.0,
                    double temperature = 0.0) const {
    if (gamma_grid.empty()) throw std::invalid_argument("sweep: empty grid");
    if (!std::is_sorted(gamma_grid.begin(), gamma_grid.end()))
      throw std::invalid_argument("sweep: grid must be increasing");

    std::map<double, double> cache;
    auto e_of_gamma = [&](double g) {
      auto it = cache.find(g);
      if (it != cache.end()) return it->second;
      const GaussianSolution s = solve_condensed(CouplingPoint::from_gamma(g, rho, temperature));
      const double e = s.energy_per_particle / (rho * rho);
      cache.emplace(g, e);
      return e;
    };

    ThermoCurve curve;
    curve.method = "gaussian";
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < gamma_grid.size(); ++i) {
      const double g = gamma_grid[i];
      curve.gamma.push_back(g);
      try {
        const GaussianSolution s =
            solve_condensed(CouplingPoint::from_gamma(g, rho, temperature));
        curve.e.push_back(s.energy_per_particle / (rho * rho));
        curve.mu.push_back(s.mu / (rho * rho));
        curve.vs.push_back(vs_from_energy(e_of_gamma, g) / rho);
      } catch (const std::exception& ex) {
        curve.e.resize(i + 1, nan);
        curve.mu.resize(i + 1, nan);
        curve.vs.resize(i + 1, nan);
        curve.failures.push_back({i, ex.what()});
      }
    }
    return curve;
  }

  // One application of the gap-equation map at (A, B); exposed so tests can
  // re-integrate on refined grids.
  std::vector<double> gap_map(const CouplingPoint& pt, const QuadratureGrid& grid,
                              const std::vector<double>& x) const {
    const double A = x[0], B = x[1];
    const double rho = pt.rho, c = pt.c, T = pt.temperature;
    if (!(A > 0.0))
      throw ConvergenceError("gap_map: A drifted to <= 0 (invalid phase)", SolverReport{});
    if (!(B < rho))
      throw ConvergenceError("gap_map: B drifted to >= rho (invalid phase)", SolverReport{});

    const double numer = 2.0 * c * (rho - B - A);   // tanh 2sigma numerator
    const double shift = 2.0 * c * (rho - B + A);   // denominator shift
    double a_int = 0.0, b_int = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double k = grid.nodes[i];
      const double e = k * k;
      const double d = e + shift;
      const double eg = std::sqrt((e + 4.0 * c * A) * (e + 4.0 * c * (rho - B)));
      const double nu = T > 0.0 ? detail::occupancy(eg / T) : 0.0;
      // cosh 2sigma - 1 without cancellation: n^2 / (eg (d + eg))
      const double cosh_m1 = numer * numer / (eg * (d + eg));
      a_int += grid.weights[i] * (numer / eg) * (1.0 + 2.0 * nu);
      b_int += grid.weights[i] * (cosh_m1 + 2.0 * nu * (d / eg));
    }
    return {a_int / (2.0 * M_PI), b_int / (2.0 * M_PI)};
  }

  double kinetic_integral(const CouplingPoint& pt, const QuadratureGrid& grid, double A,
                          double B) const {
    const double rho = pt.rho, c = pt.c, T = pt.temperature;
    const double numer = 2.0 * c * (rho - B - A);
    const double shift = 2.0 * c * (rho - B + A);
    double sum = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double k = grid.nodes[i];
      const double e = k * k;
      const double d = e + shift;
      const double eg = std::sqrt((e + 4.0 * c * A) * (e + 4.0 * c * (rho - B)));
      const double nu = T > 0.0 ? detail::occupancy(eg / T) : 0.0;
      const double cosh_m1 = numer * numer / (eg * (d + eg));
      sum += grid.weights[i] * e * (cosh_m1 + 2.0 * nu * (d / eg));
    }
    return sum / (2.0 * M_PI);
  }

 private:
  GaussianSolution free_gas_solution(const CouplingPoint& pt) const {
    GaussianSolution sol;
    sol.point = pt;
    sol.condensate_density = pt.rho;
    sol.phase = Phase::Condensed;
    sol.report.converged = true;
    return sol;
  }

  int n_nodes_;
  double tol_;
};

}  // namespace bosegas
