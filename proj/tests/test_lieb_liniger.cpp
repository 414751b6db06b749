#include <cmath>

#include "bosegas/bogoliubov.hpp"
#include "bosegas/lieb_liniger.hpp"
#include "catch_amalgamated.hpp"

using namespace bosegas;

namespace {
const LiebLinigerSolver& solver() {
  static LiebLinigerSolver s(128);
  return s;
}

double weak_coupling(double g) { return g - 4.0 * std::pow(g, 1.5) / (3.0 * M_PI); }
}  // namespace

TEST_CASE("strong-coupling dimensionless solution approaches the free-fermion form") {
  const LiebGroundSolution s = solver().solve_dimensionless(100.0);
  CHECK(s.gamma == Catch::Approx(M_PI * 100.0).epsilon(0.01));
  CHECK(s.e_dimensionless == Catch::Approx(M_PI * M_PI / 3.0).epsilon(0.02));
  for (double g : s.g_values) CHECK(std::abs(2.0 * M_PI * g - 1.0) < 0.05);
}

TEST_CASE("g(x) symmetry, positivity, and constraint residual") {
  for (double lambda : {0.05, 0.7, 13.0}) {
    const LiebGroundSolution s = solver().solve_dimensionless(lambda);
    const std::size_t n = s.g_values.size();
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(s.g_values[i] >= 1.0 / (2.0 * M_PI) - 1e-12);
      CHECK(s.g_values[i] == Catch::Approx(s.g_values[n - 1 - i]).margin(1e-10));
    }
    // gamma * Int g dx = lambda
    const QuadratureGrid grid = gauss_legendre(static_cast<int>(n), -1.0, 1.0);
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm += grid.weights[i] * s.g_values[i];
    CHECK(std::abs(s.gamma * norm - lambda) <= 1e-10 * std::max(1.0, lambda));
    CHECK(s.K_cutoff == Catch::Approx(s.gamma / lambda).epsilon(1e-14));
    CHECK(s.report.residual < 1e-10);
  }
}

TEST_CASE("node doubling leaves e unchanged at lambda=1") {
  const double e64 = solver().solve_dimensionless(1.0, 64).e_dimensionless;
  const double e128 = solver().solve_dimensionless(1.0, 128).e_dimensionless;
  CHECK(std::abs(e64 - e128) < 1e-9);
}

TEST_CASE("solve_dimensionless argument validation") {
  CHECK_THROWS_AS(solver().solve_dimensionless(0.0), std::invalid_argument);
  CHECK_THROWS_AS(solver().solve_dimensionless(1.0, 8), std::invalid_argument);
  CHECK_THROWS_AS(LiebLinigerSolver(4), std::invalid_argument);
}

TEST_CASE("gamma_to_lambda round trips") {
  for (double g : {0.01, 0.1, 1.0, 10.0, 100.0}) {
    const double lambda = solver().gamma_to_lambda(g);
    CHECK(std::abs(solver().solve_dimensionless(lambda).gamma - g) <=
          1e-8 * std::max(1.0, g));
  }
}

TEST_CASE("gamma_to_lambda asymptotics and monotonicity") {
  CHECK(solver().gamma_to_lambda(1e4) == Catch::Approx(1e4 / M_PI).epsilon(0.002));
  const double l001 = solver().gamma_to_lambda(0.01);
  const double l01 = solver().gamma_to_lambda(0.1);
  const double l1 = solver().gamma_to_lambda(1.0);
  CHECK(l001 < l01);
  CHECK(l01 < l1);
}

TEST_CASE("ground_energy limits") {
  CHECK(solver().ground_energy(0.01) == Catch::Approx(weak_coupling(0.01)).epsilon(0.02));
  CHECK(solver().ground_energy(1e4) == Catch::Approx(M_PI * M_PI / 3.0).epsilon(0.002));
}

TEST_CASE("gamma outside the supported range errors instead of extrapolating") {
  CHECK_THROWS_AS(solver().ground_energy(1e-5), std::domain_error);
  CHECK_THROWS_AS(solver().ground_energy(2e5), std::domain_error);
  CHECK_THROWS_AS(solver().chemical_potential(0.0), std::domain_error);
  CHECK_THROWS_AS(solver().sound_velocity(-1.0), std::domain_error);
}

TEST_CASE("chemical potential limits") {
  CHECK(solver().chemical_potential(1e4) == Catch::Approx(M_PI * M_PI).epsilon(0.005));
  const double mu = solver().chemical_potential(0.01);
  CHECK(mu / (2.0 * 0.01) == Catch::Approx(1.0).epsilon(0.05));
}

TEST_CASE("sound velocity limits") {
  CHECK(solver().sound_velocity(1e4) == Catch::Approx(2.0 * M_PI).epsilon(0.01));
  CHECK(solver().sound_velocity(0.01) == Catch::Approx(2.0 * std::sqrt(0.01)).epsilon(0.02));
  CHECK(solver().sound_velocity(1.0) ==
        Catch::Approx(perturbative(1.0).vs_compressibility).epsilon(0.02));
}

TEST_CASE("derivative pipeline reproduces the closed perturbative thermodynamics") {
  auto e = [](double g) { return perturbative(g).e; };
  for (double g : {0.5, 1.0, 4.0}) {
    CHECK(mu_from_energy(e, g) == Catch::Approx(perturbative(g).mu).epsilon(1e-6));
    CHECK(vs_from_energy(e, g) ==
          Catch::Approx(perturbative(g).vs_compressibility).epsilon(1e-6));
  }
}

TEST_CASE("sweep_ground monotone, bounded, and consistent with direct calls") {
  const ThermoCurve curve = solver().sweep_ground({0.1, 1.0, 10.0});
  REQUIRE(curve.failures.empty());
  REQUIRE(curve.e.size() == 3);
  CHECK(curve.method == "exact");
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(curve.e[i] > 0.0);
    CHECK(curve.e[i] < M_PI * M_PI / 3.0);
    if (i > 0) CHECK(curve.e[i] > curve.e[i - 1]);
  }
  const ThermoCurve single = solver().sweep_ground({1.0});
  CHECK(single.e[0] == solver().ground_energy(1.0));
  CHECK(single.mu[0] == solver().chemical_potential(1.0));
  CHECK(single.vs[0] == solver().sound_velocity(1.0));
}

TEST_CASE("sweep_ground rejects bad grids") {
  CHECK_THROWS_AS(solver().sweep_ground({}), std::invalid_argument);
  CHECK_THROWS_AS(solver().sweep_ground({1.0, 0.5}), std::invalid_argument);
}

TEST_CASE("grid doubling: staged stability of e, mu, vs") {
  const LiebLinigerSolver coarse(128), fine(256);
  for (double g : {0.1, 1.0, 10.0}) {
    CHECK(std::abs(coarse.ground_energy(g) - fine.ground_energy(g)) < 1e-8);
    CHECK(std::abs(coarse.chemical_potential(g) - fine.chemical_potential(g)) < 1e-6);
    CHECK(std::abs(coarse.sound_velocity(g) - fine.sound_velocity(g)) < 1e-5);
  }
}

TEST_CASE("ground_energy is deterministic across repeated solvers") {
  const LiebLinigerSolver a(128), b(128);
  CHECK(a.ground_energy(2.5) == b.ground_energy(2.5));
  CHECK(a.sound_velocity(2.5) == b.sound_velocity(2.5));
}
