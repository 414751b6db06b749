#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace bosegas {

// Quadrature rule: integrate(f) ~ sum_i w_i f(x_i) over [a, b].
// For half-line grids b is the truncation momentum.
struct QuadratureGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
  double a = 0.0;
  double b = 0.0;

  std::size_t size() const { return nodes.size(); }

  template <class F>
  double integrate(F&& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
    return sum;
  }
};

// Gauss-Legendre nodes/weights on [a, b]. Nodes by Newton iteration on P_n,
// starting from the Chebyshev-like initial guess.
inline QuadratureGrid gauss_legendre(int n, double a, double b) {
  if (n < 2) throw std::invalid_argument("gauss_legendre: need n >= 2");
  if (!(a < b)) throw std::invalid_argument("gauss_legendre: need a < b");

  QuadratureGrid grid;
  grid.a = a;
  grid.b = b;
  grid.nodes.resize(n);
  grid.weights.resize(n);

  const double mid = 0.5 * (b + a);
  const double half = 0.5 * (b - a);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    grid.nodes[i] = mid - half * z;
    grid.nodes[n - 1 - i] = mid + half * z;
    grid.weights[i] = 2.0 * half / ((1.0 - z * z) * pp * pp);
    grid.weights[n - 1 - i] = grid.weights[i];
  }
  return grid;
}

// Grid for integrals over [0, k_max] approximating 0..infinity.
// Two panels: a dense Gauss-Legendre panel on [0, 6*scale], where the
// integrands of interest vary fastest, and a log-mapped Gauss-Legendre
// panel k = k_break * exp(u) out to k_max, which resolves algebraically
// decaying tails with a handful of nodes. k_max must be picked so that
// the analytic tail bound of the target integrand is below tolerance.
inline QuadratureGrid halfline_grid(int n, double scale, double k_max) {
  if (n < 8) throw std::invalid_argument("halfline_grid: need n >= 8");
  if (!(scale > 0.0)) throw std::invalid_argument("halfline_grid: need scale > 0");
  const double k_break = 6.0 * scale;
  if (!(k_max > k_break)) throw std::invalid_argument("halfline_grid: need k_max > 6*scale");

  const int n_inner = n / 2;
  const int n_outer = n - n_inner;

  QuadratureGrid inner = gauss_legendre(n_inner, 0.0, k_break);
  QuadratureGrid mapped = gauss_legendre(n_outer, 0.0, std::log(k_max / k_break));

  QuadratureGrid grid;
  grid.a = 0.0;
  grid.b = k_max;
  grid.nodes = std::move(inner.nodes);
  grid.weights = std::move(inner.weights);
  grid.nodes.reserve(n);
  grid.weights.reserve(n);
  for (int i = 0; i < n_outer; ++i) {
    const double k = k_break * std::exp(mapped.nodes[i]);
    grid.nodes.push_back(k);
    grid.weights.push_back(mapped.weights[i] * k);  // dk = k du
  }
  return grid;
}

}  // namespace bosegas
