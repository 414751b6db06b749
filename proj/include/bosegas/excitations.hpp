#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "bosegas/lieb_liniger.hpp"
#include "bosegas/nystrom.hpp"

namespace bosegas {

enum class BranchType { TypeI, TypeII };

inline const char* to_string(BranchType b) {
  return b == BranchType::TypeI ? "I" : "II";
}

// One branch of the exact spectrum, sampled parametrically in q. Everything
// is evaluated at rho = 1: p carries units rho, epsilon units rho^2.
struct ExcitationBranch {
  struct Sample {
    double q, p, epsilon;
  };
  struct Failure {
    double q;
    std::string what;
  };
  BranchType branch = BranchType::TypeI;
  double gamma = 0.0;
  std::vector<Sample> points;  // ordered by increasing p
  double K_cutoff = 0.0;
  double mu_used = 0.0;
  std::vector<Failure> failures;
};

// Solves the dressed integral equations for both excitation branches:
//   2 pi J(k) = 2c Int_{-K}^{K} J(r)/(c^2+(k-r)^2) dr - pi + 2 atan((q-k)/c),
//   p = q + Int J,   eps1 = -mu + q^2 + 2 Int k J     (particle branch, q > K)
// and the hole branch with the negated inhomogeneity,
//   p = -q + Int G,  eps2 = mu - q^2 + 2 Int k G      (|q| < K).
// mu is the exact chemical potential; atan is the principal branch. The
// atan argument is scaled by 1/c, matching the two-body phase shift whose
// derivative is the Lorentzian kernel: with this scaling both branches
// close at p -> 0, eps -> 0 as q -> K and the strong-coupling limit
// reduces to the free-fermion particle/hole branches.
class ExcitationSolver {
 public:
  explicit ExcitationSolver(const LiebLinigerSolver& ground, int n_nodes = 128)
      : ground_(ground), n_nodes_(n_nodes) {
    if (n_nodes < 16) throw std::invalid_argument("ExcitationSolver: n_nodes >= 16");
  }

  struct PointSolution {
    double p = 0.0;
    double epsilon = 0.0;
    std::vector<double> values;  // J or G on the k-grid
    std::vector<double> k_nodes;
    std::vector<double> k_weights;
    SolverReport report;
  };

  struct GammaContext {
    double lambda, K, mu, c;
  };

  GammaContext context(double gamma) const {
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = context_cache_.find(gamma);
      if (it != context_cache_.end()) return it->second;
    }
    GammaContext ctx;
    ctx.lambda = ground_.gamma_to_lambda(gamma);
    ctx.c = gamma;  // rho = 1
    ctx.K = ctx.c / ctx.lambda;
    ctx.mu = ground_.chemical_potential(gamma);
    std::lock_guard<std::mutex> lock(mutex_);
    context_cache_.emplace(gamma, ctx);
    return ctx;
  }

  PointSolution solve_type1(double gamma, double q) const {
    const GammaContext ctx = context(gamma);
    if (!(q > ctx.K))
      throw std::domain_error("solve_type1: particle branch requires q > K");
    PointSolution sol = solve_dressed(ctx, q, +1.0);
    sol.p = q + integral(sol, 0);
    sol.epsilon = -ctx.mu + q * q + 2.0 * integral(sol, 1);
    return sol;
  }

  PointSolution solve_type2(double gamma, double q) const {
    const GammaContext ctx = context(gamma);
    if (!(std::abs(q) < ctx.K))
      throw std::domain_error("solve_type2: hole branch requires |q| < K");
    PointSolution sol = solve_dressed(ctx, q, -1.0);
    sol.p = -q + integral(sol, 0);
    sol.epsilon = ctx.mu - q * q + 2.0 * integral(sol, 1);
    return sol;
  }

  // Branch domains (an implementation assumption, validated by the phonon
  // and endpoint invariants): type I samples q in (K, K + 3K], type II
  // q in [0, K), both clustered quadratically towards q = K where the
  // branch terminates with p -> 0, eps -> 0.
  ExcitationBranch branch(double gamma, BranchType type, int n_q = 32) const {
    if (n_q < 8) throw std::invalid_argument("branch: n_q >= 8");
    const GammaContext ctx = context(gamma);

    ExcitationBranch result;
    result.branch = type;
    result.gamma = gamma;
    result.K_cutoff = ctx.K;
    result.mu_used = ctx.mu;

    const double span = 3.0 * ctx.K;
    for (int i = 1; i <= n_q; ++i) {
      const double t = static_cast<double>(i) / n_q;
      double q;
      if (type == BranchType::TypeI) {
        q = ctx.K + span * t * t;
      } else {
        q = ctx.K * (1.0 - t * t);
        if (i == n_q) q = 0.0;
      }
      try {
        const PointSolution ps =
            type == BranchType::TypeI ? solve_type1(gamma, q) : solve_type2(gamma, q);
        result.points.push_back({q, ps.p, ps.epsilon});
      } catch (const std::exception& ex) {
        result.failures.push_back({q, ex.what()});
      }
    }
    if (result.failures.size() * 10 > static_cast<std::size_t>(n_q))
      throw std::runtime_error("branch: more than 10% of q-points failed");
    std::sort(result.points.begin(), result.points.end(),
              [](const auto& a, const auto& b) { return a.p < b.p; });
    return result;
  }

  // Linear extrapolation of the three samples closest to q = K down to the
  // branch endpoint; both p and epsilon should vanish there.
  static std::pair<double, double> endpoint_extrapolation(const ExcitationBranch& b) {
    if (b.points.size() < 3)
      throw std::invalid_argument("endpoint_extrapolation: need >= 3 samples");
    // points are ordered by p, and p -> 0 at q -> K for both branches
    const auto& s1 = b.points[0];
    const auto& s2 = b.points[1];
    const double d1 = std::abs(s1.q - b.K_cutoff);
    const double d2 = std::abs(s2.q - b.K_cutoff);
    const double p0 = s1.p - d1 * (s2.p - s1.p) / (d2 - d1);
    const double e0 = s1.epsilon - d1 * (s2.epsilon - s1.epsilon) / (d2 - d1);
    return {p0, e0};
  }

  // Small-p slope lim eps/p, linearly extrapolated to p = 0.
  static double phonon_slope(const ExcitationBranch& b) {
    if (b.points.size() < 2) throw std::invalid_argument("phonon_slope: need >= 2 samples");
    const auto& s1 = b.points[0];
    const auto& s2 = b.points[1];
    const double r1 = s1.epsilon / s1.p;
    const double r2 = s2.epsilon / s2.p;
    return r1 - s1.p * (r2 - r1) / (s2.p - s1.p);
  }

 private:
  PointSolution solve_dressed(const GammaContext& ctx, double q, double sign) const {
    const int n = ground_.effective_nodes(ctx.lambda);
    QuadratureGrid grid = gauss_legendre(std::max(n, n_nodes_), -ctx.K, ctx.K);
    const double c = ctx.c;
    auto kernel = [c](double k, double r) {
      return (c / M_PI) / (c * c + (k - r) * (k - r));
    };
    auto rhs = [q, sign, c](double k) {
      return sign * (-0.5 + std::atan((q - k) / c) / M_PI);
    };
    NystromSystem sys = make_nystrom(std::move(grid), kernel, rhs);
    auto [phi, report] = nystrom_solve(sys);

    PointSolution sol;
    sol.values.assign(phi.data(), phi.data() + phi.size());
    sol.k_nodes = std::move(sys.grid.nodes);
    sol.k_weights = std::move(sys.grid.weights);
    sol.report = report;
    return sol;
  }

  static double integral(const PointSolution& sol, int moment) {
    double sum = 0.0;
    for (std::size_t i = 0; i < sol.values.size(); ++i) {
      const double factor = moment == 0 ? 1.0 : sol.k_nodes[i];
      sum += sol.k_weights[i] * sol.values[i] * factor;
    }
    return sum;
  }

  const LiebLinigerSolver& ground_;
  int n_nodes_;
  mutable std::mutex mutex_;
  mutable std::map<double, GammaContext> context_cache_;
};

}  // namespace bosegas
