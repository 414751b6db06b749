#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bosegas/solvers.hpp"

namespace bosegas {

// Physical parameters in units hbar = 1, 2m = 1, so the free dispersion is
// e(k) = k^2. The interaction is 2c delta(x - x'), and gamma = c/rho is the
// only dimensionless intensive variable.
struct CouplingPoint {
  double rho = 1.0;
  double c = 0.0;
  double gamma = 0.0;
  double temperature = 0.0;  // Boltzmann constant set to 1

  static CouplingPoint from_gamma(double gamma, double rho = 1.0, double temperature = 0.0) {
    if (!(rho > 0.0)) throw std::invalid_argument("CouplingPoint: rho must be > 0");
    if (gamma < 0.0) throw std::invalid_argument("CouplingPoint: gamma must be >= 0");
    if (temperature < 0.0) throw std::invalid_argument("CouplingPoint: T must be >= 0");
    return {rho, gamma * rho, gamma, temperature};
  }
};

// Sampled e(gamma), mu(gamma)/rho^2, v_s(gamma)/rho for one method.
struct ThermoCurve {
  struct Failure {
    std::size_t index;
    std::string what;
  };
  std::vector<double> gamma;
  std::vector<double> e;
  std::vector<double> mu;
  std::vector<double> vs;
  std::string method;
  std::vector<Failure> failures;
};

// Thermodynamic pipeline shared by all three methods. With E0/N = rho^2 e(gamma)
// at fixed rho, the intensive form of mu = dE0/dN is
//   mu/rho^2 = 3 e(gamma) - gamma e'(gamma),
// and the compressibility sound velocity is
//   v_s/rho = 2 sqrt(mu~ - (gamma/2) dmu~/dgamma),  mu~ = mu/rho^2.
inline double mu_from_energy(const std::function<double(double)>& e_of_gamma, double gamma,
                             double gamma_min = 0.0) {
  const double h0 = 1e-3 * std::max(gamma, 1.0);
  const Derivative de = richardson_derivative(e_of_gamma, gamma, h0, gamma_min);
  return 3.0 * e_of_gamma(gamma) - gamma * de.value;
}

inline double vs_from_energy(const std::function<double(double)>& e_of_gamma, double gamma,
                             double gamma_min = 0.0) {
  auto mu = [&](double g) { return mu_from_energy(e_of_gamma, g, gamma_min); };
  const double h0 = 1e-3 * std::max(gamma, 1.0);
  const Derivative dmu = richardson_derivative(mu, gamma, h0, gamma_min);
  const double radicand = mu(gamma) - 0.5 * gamma * dmu.value;
  if (!(radicand > 0.0))
    throw std::domain_error("vs_from_energy: non-positive compressibility radicand");
  return 2.0 * std::sqrt(radicand);
}

}  // namespace bosegas
