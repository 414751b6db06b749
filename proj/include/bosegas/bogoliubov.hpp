#pragma once

#include <cmath>
#include <stdexcept>

#include "bosegas/quadrature.hpp"

namespace bosegas {

// Closed-form perturbative (truncated Gaussian) results:
//   e = E/N / rho^2 = gamma (1 - 4 sqrt(gamma) / 3pi)
//   mu/rho^2        = 2 gamma (1 - sqrt(gamma)/pi)
//   v_s/rho         = 2 sqrt(gamma - gamma^{3/2}/2pi)   (compressibility)
//   v_s/rho         = 2 sqrt(gamma)                     (spectrum slope)
struct BogoliubovResult {
  double gamma = 0.0;
  double e = 0.0;
  double mu = 0.0;
  double vs_compressibility = 0.0;
  double vs_spectrum = 0.0;
};

inline BogoliubovResult perturbative(double gamma) {
  if (gamma < 0.0) throw std::invalid_argument("perturbative: gamma must be >= 0");
  const double root = std::sqrt(gamma);
  BogoliubovResult r;
  r.gamma = gamma;
  r.e = gamma * (1.0 - 4.0 * root / (3.0 * M_PI));
  r.mu = 2.0 * gamma * (1.0 - root / M_PI);
  r.vs_compressibility = 2.0 * std::sqrt(gamma - gamma * root / (2.0 * M_PI));
  r.vs_spectrum = 2.0 * root;
  return r;
}

// Phonon spectrum eps(p) = sqrt(p^4 + 4 c rho p^2), c = gamma rho.
inline double bogoliubov_dispersion(double p, double gamma, double rho) {
  const double c = gamma * rho;
  const double p2 = p * p;
  return std::sqrt(p2 * p2 + 4.0 * c * rho * p2);
}

// Numerical cross-check of the truncation. The truncated functional is only
// finite as a single combined integrand,
//   E/L = c rho^2 + (1/4pi) Int [eps(k) - k^2 - 2 c rho] dk,
// evaluated here through the cancellation-free identity
//   eps(k) - k^2 - 2 c rho = -4 c^2 rho^2 / (eps(k) + k^2 + 2 c rho).
// The result must match the closed-form e(gamma).
inline double truncated_functional_check(double gamma, double rho, int n_nodes = 128) {
  if (!(gamma > 0.0))
    throw std::invalid_argument("truncated_functional_check: gamma must be > 0");
  const double c = gamma * rho;
  const double scale = std::sqrt(c * rho);
  const double k_max = 1e9 * scale;
  const QuadratureGrid grid = halfline_grid(n_nodes, scale, k_max);

  const double coupling2 = 4.0 * c * c * rho * rho;
  const double integral = grid.integrate([&](double k) {
    const double eps = bogoliubov_dispersion(k, gamma, rho);
    return -coupling2 / (eps + k * k + 2.0 * c * rho);
  });
  // tail bound of the 1/k^2 integrand beyond k_max
  const double tail = coupling2 / ((2.0 * M_PI) * k_max);
  const double energy_density = c * rho * rho + integral / (2.0 * M_PI);
  if (tail > 1e-8 * std::max(1.0, std::abs(energy_density)))
    throw std::runtime_error("truncated_functional_check: quadrature tail not converged");
  return energy_density / rho;  // E/N
}

}  // namespace bosegas
