#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace bosegas {

struct SolverReport {
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
  int nodes_used = 0;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, SolverReport report)
      : std::runtime_error(what), report(report) {}
  SolverReport report;
};

// Brent's method. Requires a sign change on [lo, hi]; stops when |f| <= tol
// or the bracket shrinks below a machine-scaled bound.
inline double brent_root(const std::function<double(double)>& f, double lo, double hi,
                         double tol = 1e-12) {
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  if (fa * fb > 0.0)
    throw std::invalid_argument("brent_root: no sign change on bracket");
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;

  double c = a, fc = fa;
  double d = b - a, e = d;
  const double eps = std::numeric_limits<double>::epsilon();
  for (int iter = 0; iter < 200; ++iter) {
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * 1e-15;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || std::abs(fb) <= tol) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      // inverse quadratic interpolation, falling back to secant
      const double s = fb / fa;
      double p, q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
    fb = f(b);
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
  }
  return b;
}

// Damped iteration x <- (1-alpha) x + alpha map(x); converged when the
// max-norm of the update falls below tol. Non-convergence is reported, not
// thrown: the caller decides whether to retry with a smaller alpha.
inline std::pair<std::vector<double>, SolverReport> damped_fixed_point(
    const std::function<std::vector<double>(const std::vector<double>&)>& map,
    std::vector<double> x, double alpha, double tol, int max_iter) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("damped_fixed_point: alpha must be in (0,1]");
  if (max_iter < 1) throw std::invalid_argument("damped_fixed_point: max_iter >= 1");

  SolverReport report;
  report.nodes_used = static_cast<int>(x.size());
  for (int iter = 1; iter <= max_iter; ++iter) {
    const std::vector<double> fx = map(x);
    double defect = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
      defect = std::max(defect, std::abs(fx[i] - x[i]));
    report.iterations = iter;
    report.residual = defect;
    if (defect < tol) {
      report.converged = true;
      return {x, report};
    }
    for (std::size_t i = 0; i < x.size(); ++i)
      x[i] = (1.0 - alpha) * x[i] + alpha * fx[i];
  }
  return {x, report};
}

struct Derivative {
  double value = 0.0;
  double error = 0.0;  // estimate from the extrapolation step
};

// Central difference with one Richardson extrapolation level:
// D = (4 D(h/2) - D(h)) / 3. If x - 2h would leave [x_min, x_max] the step
// is shrunk; an empty admissible step is an error.
inline Derivative richardson_derivative(
    const std::function<double(double)>& f, double x, double h0,
    double x_min = -std::numeric_limits<double>::infinity(),
    double x_max = std::numeric_limits<double>::infinity()) {
  if (!(h0 > 0.0)) throw std::invalid_argument("richardson_derivative: h0 > 0");
  double h = h0;
  const double room = std::min(x - x_min, x_max - x);
  if (room <= 0.0)
    throw std::domain_error("richardson_derivative: x outside domain");
  if (2.0 * h >= room) h = 0.25 * room;
  if (!(h > 0.0))
    throw std::domain_error("richardson_derivative: no admissible step");

  const double d_h = (f(x + h) - f(x - h)) / (2.0 * h);
  const double d_h2 = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
  Derivative result;
  result.value = (4.0 * d_h2 - d_h) / 3.0;
  result.error = std::abs(d_h2 - d_h) / 3.0;
  return result;
}

}  // namespace bosegas
