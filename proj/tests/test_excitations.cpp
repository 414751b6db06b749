#include <cmath>

#include "bosegas/excitations.hpp"
#include "catch_amalgamated.hpp"

using namespace bosegas;

namespace {
const LiebLinigerSolver& ground() {
  static LiebLinigerSolver s(128);
  return s;
}

const ExcitationSolver& solver() {
  static ExcitationSolver s(ground(), 128);
  return s;
}
}  // namespace

TEST_CASE("Tonks limit: dressed J reduces to the bare phase-shift profile") {
  const auto ctx = solver().context(1e4);
  const double q = 1.5 * ctx.K;
  const auto sol = solver().solve_type1(1e4, q);
  auto bare = [&](double k) { return -0.5 + std::atan((q - k) / ctx.c) / M_PI; };
  double p0 = q, e0 = -ctx.mu + q * q;
  for (std::size_t i = 0; i < sol.values.size(); ++i) {
    CHECK(std::abs(sol.values[i] - bare(sol.k_nodes[i])) < 1e-3);
    p0 += sol.k_weights[i] * bare(sol.k_nodes[i]);
    e0 += 2.0 * sol.k_weights[i] * sol.k_nodes[i] * bare(sol.k_nodes[i]);
  }
  CHECK(sol.p == Catch::Approx(p0).epsilon(2e-3));
  CHECK(sol.epsilon == Catch::Approx(e0).epsilon(1e-3));
  CHECK(sol.report.residual < 1e-10);
}

TEST_CASE("Tonks limit: hole branch tops out at the free-fermion value pi^2") {
  const ExcitationBranch b = solver().branch(1e4, BranchType::TypeII, 32);
  double emax = 0.0;
  for (const auto& s : b.points) emax = std::max(emax, s.epsilon);
  CHECK(emax == Catch::Approx(M_PI * M_PI).epsilon(0.02));
}

TEST_CASE("hole equation is the negated particle equation (linearity)") {
  const double gamma = 1.0;
  const auto ctx = solver().context(gamma);
  const double q = 0.5 * ctx.K;
  const auto hole = solver().solve_type2(gamma, q);
  // solve the particle-side Fredholm system directly on the same grid
  const int n = static_cast<int>(hole.values.size());
  auto sys = make_nystrom(
      gauss_legendre(n, -ctx.K, ctx.K),
      [&](double k, double r) {
        return (ctx.c / M_PI) / (ctx.c * ctx.c + (k - r) * (k - r));
      },
      [&](double k) { return -0.5 + std::atan((q - k) / ctx.c) / M_PI; });
  auto [j, report] = nystrom_solve(sys);
  REQUIRE(report.converged);
  for (std::size_t i = 0; i < hole.values.size(); ++i)
    CHECK(hole.values[i] == Catch::Approx(-j(static_cast<Eigen::Index>(i))).margin(1e-10));
}

TEST_CASE("branch endpoints close at q -> K") {
  for (double gamma : {0.787094, 3.07725}) {
    for (BranchType type : {BranchType::TypeI, BranchType::TypeII}) {
      const ExcitationBranch b = solver().branch(gamma, type, 32);
      const auto [p0, e0] = ExcitationSolver::endpoint_extrapolation(b);
      CHECK(std::abs(p0) < 1e-3);
      CHECK(std::abs(e0) < 1e-3);
    }
  }
}

TEST_CASE("both branches share the phonon slope with the thermodynamic v_s") {
  for (double gamma : {0.787094, 3.07725}) {
    const double vs = ground().sound_velocity(gamma);
    const double s1 =
        ExcitationSolver::phonon_slope(solver().branch(gamma, BranchType::TypeI, 32));
    const double s2 =
        ExcitationSolver::phonon_slope(solver().branch(gamma, BranchType::TypeII, 32));
    CHECK(s1 == Catch::Approx(vs).epsilon(0.02));
    CHECK(s2 == Catch::Approx(vs).epsilon(0.02));
    CHECK(s1 == Catch::Approx(s2).epsilon(0.02));
  }
}

TEST_CASE("branch sample invariants") {
  for (BranchType type : {BranchType::TypeI, BranchType::TypeII}) {
    const ExcitationBranch b = solver().branch(1.0, type, 32);
    CHECK(b.failures.empty());
    REQUIRE(b.points.size() == 32);
    for (std::size_t i = 0; i < b.points.size(); ++i) {
      CHECK(b.points[i].epsilon >= -1e-8);
      if (i > 0) {
        CHECK(b.points[i].p > b.points[i - 1].p);
        // p monotone in q: increasing for the particle branch, decreasing
        // in q for the hole branch (points are ordered by p)
        if (type == BranchType::TypeI)
          CHECK(b.points[i].q > b.points[i - 1].q);
        else
          CHECK(b.points[i].q < b.points[i - 1].q);
      }
    }
    CHECK(b.K_cutoff == Catch::Approx(solver().context(1.0).K).epsilon(1e-14));
    CHECK(b.mu_used == Catch::Approx(ground().chemical_potential(1.0)).epsilon(1e-14));
  }
}

TEST_CASE("hole branch maximum sits at q=0 and approaches mu in strong coupling") {
  // the hole branch tops out well above mu at weak coupling (its maximum
  // scales like sqrt(gamma) while mu scales like gamma) and only collapses
  // onto the free-fermion value mu in the Tonks regime
  for (double gamma : {1.0, 3.07725}) {
    const ExcitationBranch b = solver().branch(gamma, BranchType::TypeII, 32);
    double emax = 0.0, q_at_max = -1.0;
    for (const auto& s : b.points) {
      if (s.epsilon > emax) {
        emax = s.epsilon;
        q_at_max = s.q;
      }
    }
    CHECK(q_at_max == 0.0);
    CHECK(emax > b.mu_used);
    CHECK(emax < 2.0 * b.mu_used);
  }
  const ExcitationBranch tonks = solver().branch(1e4, BranchType::TypeII, 32);
  double emax = 0.0;
  for (const auto& s : tonks.points) emax = std::max(emax, s.epsilon);
  CHECK(emax == Catch::Approx(tonks.mu_used).epsilon(0.01));
}

TEST_CASE("branch domain validation") {
  const auto ctx = solver().context(1.0);
  CHECK_THROWS_AS(solver().solve_type1(1.0, 0.5 * ctx.K), std::domain_error);
  CHECK_THROWS_AS(solver().solve_type1(1.0, ctx.K), std::domain_error);
  CHECK_THROWS_AS(solver().solve_type2(1.0, 1.5 * ctx.K), std::domain_error);
  CHECK_THROWS_AS(solver().solve_type2(1.0, -ctx.K), std::domain_error);
  CHECK_THROWS_AS(solver().branch(1.0, BranchType::TypeI, 4), std::invalid_argument);
  CHECK_THROWS_AS(ExcitationSolver(ground(), 8), std::invalid_argument);
}

TEST_CASE("grid doubling stability in n_nodes and n_q") {
  const ExcitationSolver fine(ground(), 256);
  const auto ctx = solver().context(1.0);
  for (double q : {1.2 * ctx.K, 2.0 * ctx.K}) {
    const auto a = solver().solve_type1(1.0, q);
    const auto b = fine.solve_type1(1.0, q);
    CHECK(std::abs(a.p - b.p) < 1e-6);
    CHECK(std::abs(a.epsilon - b.epsilon) < 1e-6);
  }
  // doubling n_q revisits the original q values exactly
  const ExcitationBranch coarse_b = solver().branch(1.0, BranchType::TypeI, 16);
  const ExcitationBranch fine_b = solver().branch(1.0, BranchType::TypeI, 32);
  for (const auto& s : coarse_b.points) {
    bool found = false;
    for (const auto& t : fine_b.points) {
      if (t.q == s.q) {
        found = true;
        CHECK(std::abs(t.p - s.p) < 1e-12);
        CHECK(std::abs(t.epsilon - s.epsilon) < 1e-12);
      }
    }
    CHECK(found);
  }
}
