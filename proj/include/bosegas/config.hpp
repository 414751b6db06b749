#pragma once

#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace bosegas {

// Run configuration shared by all CLI subcommands. Defaults reproduce the
// reference protocol: rho = 1, T = 0.
struct RunConfig {
  double rho = 1.0;
  std::optional<double> gamma;  // single-point mode
  double gamma_min = 0.05;
  double gamma_max = 20.0;
  int points = 40;
  bool log_spacing = true;
  double temperature = 0.0;
  int nodes = 128;
  double tol = 1e-10;
  std::string format = "csv";  // csv | json
  std::string out;             // empty: stdout
  std::set<std::string> methods = {"exact", "gaussian", "bogoliubov"};

  void validate() const {
    if (!(rho > 0.0)) throw std::invalid_argument("config: rho must be > 0");
    if (temperature < 0.0) throw std::invalid_argument("config: temp must be >= 0");
    if (nodes < 16) throw std::invalid_argument("config: nodes must be >= 16");
    if (!(tol > 0.0)) throw std::invalid_argument("config: tol must be > 0");
    if (format != "csv" && format != "json")
      throw std::invalid_argument("config: format must be csv or json");
    if (points < 1) throw std::invalid_argument("config: points must be >= 1");
    if (!gamma && !(gamma_min > 0.0 && gamma_max > gamma_min))
      throw std::invalid_argument("config: need 0 < gamma-min < gamma-max");
    if (gamma && !(*gamma > 0.0))
      throw std::invalid_argument("config: gamma must be > 0");
    for (const auto& m : methods)
      if (m != "exact" && m != "gaussian" && m != "bogoliubov")
        throw std::invalid_argument("config: unknown method " + m);
  }

  std::vector<double> gamma_grid() const {
    if (gamma) return {*gamma};
    std::vector<double> grid;
    grid.reserve(points);
    if (points == 1) return {gamma_min};
    for (int i = 0; i < points; ++i) {
      const double t = static_cast<double>(i) / (points - 1);
      if (log_spacing)
        grid.push_back(gamma_min * std::pow(gamma_max / gamma_min, t));
      else
        grid.push_back(gamma_min + t * (gamma_max - gamma_min));
    }
    return grid;
  }
};

}  // namespace bosegas
