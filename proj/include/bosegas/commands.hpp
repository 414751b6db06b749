#pragma once

#include <cmath>
#include <filesystem>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bosegas/bogoliubov.hpp"
#include "bosegas/config.hpp"
#include "bosegas/excitations.hpp"
#include "bosegas/gaussian.hpp"
#include "bosegas/lieb_liniger.hpp"
#include "bosegas/output.hpp"

namespace bosegas {

inline constexpr const char* kVersion = "0.1.0";

// Preset couplings for the two excitation-spectrum figures.
inline constexpr double kFigure3Gamma = 0.787094;
inline constexpr double kFigure4Gamma = 3.07725;

namespace detail {

inline std::vector<std::string> base_meta(const std::string& command, const RunConfig& cfg) {
  std::ostringstream tol;
  tol << cfg.tol;
  return {
      "command: " + command,
      std::string("version: ") + kVersion,
      "rho: " + format_cell(cfg.rho),
      "temperature: " + format_cell(cfg.temperature),
      "nodes: " + std::to_string(cfg.nodes),
      "tolerance: " + tol.str(),
  };
}

inline void require_some_success(const Table& table, std::size_t value_columns) {
  for (const auto& row : table.rows)
    for (std::size_t i = row.size() - value_columns; i < row.size(); ++i)
      if (!std::isnan(row[i])) return;
  throw std::runtime_error("all sweep points failed");
}

}  // namespace detail

// Ground-state energy comparison, one row per gamma.
inline Table cmd_ground(const RunConfig& cfg) {
  cfg.validate();
  const std::vector<double> grid = cfg.gamma_grid();
  const bool exact = cfg.methods.count("exact") > 0;
  const bool gauss = cfg.methods.count("gaussian") > 0;
  const bool bogo = cfg.methods.count("bogoliubov") > 0;

  Table table;
  table.meta = detail::base_meta("ground", cfg);
  table.columns = {"gamma"};
  if (exact) table.columns.push_back("e_exact");
  if (gauss) table.columns.push_back("e_gaussian");
  if (bogo) table.columns.push_back("e_bogoliubov");

  LiebLinigerSolver lieb(cfg.nodes);
  GaussianSolver gaussian(cfg.nodes, cfg.tol);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (double g : grid) {
    std::vector<double> row = {g};
    if (exact) {
      try {
        row.push_back(lieb.ground_energy(g));
      } catch (const std::exception&) {
        row.push_back(nan);
      }
    }
    if (gauss) {
      try {
        const auto s = gaussian.solve_condensed(
            CouplingPoint::from_gamma(g, cfg.rho, cfg.temperature));
        row.push_back(s.energy_per_particle / (cfg.rho * cfg.rho));
      } catch (const std::exception&) {
        row.push_back(nan);
      }
    }
    if (bogo) row.push_back(perturbative(g).e);
    table.rows.push_back(std::move(row));
  }
  detail::require_some_success(table, table.columns.size() - 1);
  return table;
}

// Sound-velocity comparison: compressibility pipeline for exact and Gaussian
// curves, both closed-form variants for the perturbative one.
inline Table cmd_sound(const RunConfig& cfg) {
  cfg.validate();
  const std::vector<double> grid = cfg.gamma_grid();
  const bool exact = cfg.methods.count("exact") > 0;
  const bool gauss = cfg.methods.count("gaussian") > 0;
  const bool bogo = cfg.methods.count("bogoliubov") > 0;

  Table table;
  table.meta = detail::base_meta("sound", cfg);
  table.columns = {"gamma"};
  if (exact) table.columns.push_back("vs_exact");
  if (gauss) table.columns.push_back("vs_gaussian");
  if (bogo) {
    table.columns.push_back("vs_bogo_compress");
    table.columns.push_back("vs_bogo_spectrum");
  }

  LiebLinigerSolver lieb(cfg.nodes);
  GaussianSolver gaussian(cfg.nodes, cfg.tol);
  ThermoCurve gauss_curve;
  if (gauss) gauss_curve = gaussian.sweep(grid, cfg.rho, cfg.temperature);

  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double g = grid[i];
    std::vector<double> row = {g};
    if (exact) {
      try {
        row.push_back(lieb.sound_velocity(g));
      } catch (const std::exception&) {
        row.push_back(nan);
      }
    }
    if (gauss) row.push_back(gauss_curve.vs[i]);
    if (bogo) {
      const BogoliubovResult r = perturbative(g);
      row.push_back(r.vs_compressibility);
      row.push_back(r.vs_spectrum);
    }
    table.rows.push_back(std::move(row));
  }
  detail::require_some_success(table, table.columns.size() - 1);
  return table;
}

// Both exact excitation branches at one gamma, with the Gaussian and
// perturbative spectra evaluated at the same physical momenta.
inline Table cmd_excitations(const RunConfig& cfg) {
  cfg.validate();
  if (!cfg.gamma)
    throw std::invalid_argument("excitations: a single --gamma is required");
  const double g = *cfg.gamma;

  LiebLinigerSolver lieb(cfg.nodes);
  ExcitationSolver solver(lieb, cfg.nodes);
  GaussianSolver gaussian(cfg.nodes, cfg.tol);
  const CouplingPoint pt = CouplingPoint::from_gamma(g, 1.0, 0.0);
  const GaussianSolution gsol = gaussian.solve_condensed(pt);

  Table table;
  table.meta = detail::base_meta("excitations", cfg);
  table.meta.push_back("gamma: " + detail::format_cell(g));
  table.columns = {"branch", "q",
                   "p",      "epsilon_exact",
                   "epsilon_gaussian", "epsilon_bogoliubov"};
  for (BranchType type : {BranchType::TypeI, BranchType::TypeII}) {
    const ExcitationBranch branch = solver.branch(g, type, cfg.points);
    for (const auto& s : branch.points) {
      table.rows.push_back({type == BranchType::TypeI ? 1.0 : 2.0, s.q, s.p, s.epsilon,
                            gaussian_spectrum_at(pt, gsol.A, gsol.B, s.p),
                            bogoliubov_dispersion(s.p, g, 1.0)});
    }
  }
  return table;
}

// Diagnostic dump of the converged Gaussian solution per gamma.
inline Table cmd_gaussian_detail(const RunConfig& cfg) {
  cfg.validate();
  const std::vector<double> grid = cfg.gamma_grid();

  Table table;
  table.meta = detail::base_meta("gaussian-detail", cfg);
  table.columns = {"gamma", "A",  "B",   "C", "condensate_density",
                   "mu",    "gap", "e",  "residual"};

  GaussianSolver gaussian(cfg.nodes, cfg.tol);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (double g : grid) {
    try {
      const auto s = gaussian.solve_condensed(
          CouplingPoint::from_gamma(g, cfg.rho, cfg.temperature));
      const double gap = gaussian_spectrum_at(s.point, s.A, s.B, 0.0);
      table.rows.push_back({g, s.A, s.B, s.C, s.condensate_density, s.mu, gap,
                            s.energy_per_particle / (cfg.rho * cfg.rho), s.residual});
    } catch (const std::exception&) {
      table.rows.push_back({g, nan, nan, nan, nan, nan, nan, nan, nan});
    }
  }
  detail::require_some_success(table, table.columns.size() - 1);
  return table;
}

// Regenerates the comparison-figure datasets as fig<N>.csv files.
inline std::vector<std::string> cmd_figures(const std::set<int>& which,
                                            const std::string& outdir,
                                            RunConfig cfg) {
  namespace fs = std::filesystem;
  fs::create_directories(outdir);

  std::vector<std::string> written;
  auto emit = [&](int id, const Table& table) {
    const std::string path = (fs::path(outdir) / ("fig" + std::to_string(id) + ".csv")).string();
    try {
      write_file(path, to_csv(table));
    } catch (const std::exception& ex) {
      throw std::runtime_error(std::string("figure output failed: ") + ex.what());
    }
    written.push_back(path);
  };

  for (int id : which) {
    RunConfig fig_cfg = cfg;
    switch (id) {
      case 1: {
        Table t = cmd_ground(fig_cfg);
        t.meta.insert(t.meta.begin(), "figure: 1 (ground-state energy vs gamma)");
        emit(1, t);
        break;
      }
      case 2: {
        Table t = cmd_sound(fig_cfg);
        t.meta.insert(t.meta.begin(), "figure: 2 (sound velocity vs gamma)");
        emit(2, t);
        break;
      }
      case 3:
      case 4: {
        fig_cfg.gamma = (id == 3) ? kFigure3Gamma : kFigure4Gamma;
        fig_cfg.points = 32;
        Table t = cmd_excitations(fig_cfg);
        t.meta.insert(t.meta.begin(), "figure: " + std::to_string(id) +
                                          " (excitation branches vs momentum)");
        emit(id, t);
        break;
      }
      default:
        throw std::invalid_argument("figures: figure id must be in 1..4");
    }
  }
  return written;
}

}  // namespace bosegas
