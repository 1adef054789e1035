#include "qgamble/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "qgamble/numfmt.hpp"

namespace qgamble {

namespace {

constexpr int kCoarseGridPoints = 1001;
constexpr double kRefineTol = 1e-9;

double clamp01(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

// Golden-section search for the maximum of f on [lo, hi], assuming the
// coarse grid already bracketed a unimodal peak. Deterministic.
double golden_max(const std::function<double(double)>& f, double lo,
                  double hi, double tol) {
  const double inv_gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_gr * (b - a);
  double d = a + inv_gr * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_gr * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// Exhaustive coarse grid (so a multimodal slice cannot silently return a
// local optimum) followed by bracket refinement. Ties keep the smaller
// argument. `sign` +1 maximizes, -1 minimizes.
BestResponse optimize_slice(const std::function<double(double)>& gb,
                            double sign) {
  int best_i = 0;
  double best = sign * gb(0.0);
  const double step = 1.0 / (kCoarseGridPoints - 1);
  for (int i = 1; i < kCoarseGridPoints; ++i) {
    const double v = sign * gb(i * step);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  const double lo = clamp01((best_i - 1) * step);
  const double hi = clamp01((best_i + 1) * step);
  auto h = [&](double x) { return sign * gb(x); };
  const double arg = golden_max(h, lo, hi, kRefineTol);
  // Keep whichever of the refined point and the grid winner is better, so
  // the result can never be worse than the exhaustive scan.
  const double grid_arg = best_i * step;
  if (sign * gb(arg) >= best) return {arg, gb(arg)};
  return {grid_arg, gb(grid_arg)};
}

}  // namespace

NashPoint nash_point(const GameConfig& config) {
  const double g = config.gamma, r = config.r_gain;
  const double u = std::sqrt(1.0 - g);
  NashPoint p;
  p.alpha_star = (1.0 - u) / 2.0;
  p.beta_star = (-1.0 + g + u) / g;
  p.delta = (2.0 + 2.0 * r - g * (2.0 + r) - 2.0 * (1.0 + r) * u) / g;
  p.degenerate = (g == 1.0);
  return p;
}

double delta_of(const GameConfig& config) { return nash_point(config).delta; }

double gamma_for(double delta, double r_gain) {
  if (!(delta > -1.0)) {
    throw std::domain_error("delta must exceed -1, got " + fmt_double(delta));
  }
  if (!(r_gain > 0.0)) {
    throw std::domain_error("r must be positive, got " + fmt_double(r_gain));
  }
  const double s = 2.0 + delta + r_gain;
  return std::min(1.0, 4.0 * (1.0 + delta) * (1.0 + r_gain) / (s * s));
}

BestResponse best_response_beta(double alpha, const GameConfig& config) {
  auto gb = [&](double beta) {
    return gb_surface_value(Strategy(alpha, beta), config);
  };
  return optimize_slice(gb, +1.0);
}

BestResponse best_response_alpha(double beta, const GameConfig& config) {
  auto gb = [&](double alpha) {
    return gb_surface_value(Strategy(alpha, beta), config);
  };
  return optimize_slice(gb, -1.0);
}

SaddleReport verify_saddle(const GameConfig& config, int grid_n, double tol) {
  if (grid_n < 11) {
    throw std::domain_error("saddle grid must have at least 11 points");
  }
  const NashPoint np = nash_point(config);
  const std::vector<double> grid = uniform_grid(grid_n);
  const SurfaceTable table = surface(config, grid, grid);

  // Guarantee slices are taken at the analytic equilibrium parameters, not
  // at the nearest grid line.
  double min_alpha_slice = std::numeric_limits<double>::infinity();
  double max_beta_slice = -std::numeric_limits<double>::infinity();
  for (double a : grid) {
    min_alpha_slice = std::min(
        min_alpha_slice, gb_surface_value(Strategy(a, np.beta_star), config));
  }
  for (double b : grid) {
    max_beta_slice = std::max(
        max_beta_slice, gb_surface_value(Strategy(np.alpha_star, b), config));
  }

  // Discrete minimax on the grid itself: Bob maximizes the column minima,
  // Alice minimizes the row maxima.
  const std::size_t n = grid.size();
  std::size_t best_j = 0, best_i = 0;
  double best_colmin = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) {
    double colmin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) colmin = std::min(colmin, table.at(i, j));
    if (colmin > best_colmin) {
      best_colmin = colmin;
      best_j = j;
    }
  }
  double best_rowmax = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    double rowmax = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) rowmax = std::max(rowmax, table.at(i, j));
    if (rowmax < best_rowmax) {
      best_rowmax = rowmax;
      best_i = i;
    }
  }

  SaddleReport report;
  report.grid_resolution = grid_n;
  report.tol = tol;
  report.worst_alpha_violation = std::max(0.0, np.delta - min_alpha_slice);
  report.worst_beta_violation = std::max(0.0, max_beta_slice - np.delta);
  report.grid_alpha = grid[best_i];
  report.grid_beta = grid[best_j];
  report.analytic_alpha = np.alpha_star;
  report.analytic_beta = np.beta_star;
  report.delta = np.delta;
  report.pass = report.worst_alpha_violation <= tol &&
                report.worst_beta_violation <= tol;
  return report;
}

Stationarity stationarity_check(const GameConfig& config, double h) {
  if (!(h >= 1e-7 && h <= 1e-3)) {
    throw std::domain_error("step must be in [1e-7, 1e-3], got " +
                            fmt_double(h));
  }
  const NashPoint np = nash_point(config);
  if (np.alpha_star - h < 0.0 || np.alpha_star + h > 1.0 ||
      np.beta_star - h < 0.0 || np.beta_star + h > 1.0) {
    return {false, 0.0, 0.0};
  }
  auto gb = [&](double a, double b) {
    return gb_surface_value(Strategy(a, b), config);
  };
  Stationarity s;
  s.applicable = true;
  s.d_alpha = (gb(np.alpha_star + h, np.beta_star) -
               gb(np.alpha_star - h, np.beta_star)) /
              (2.0 * h);
  s.d_beta = (gb(np.alpha_star, np.beta_star + h) -
              gb(np.alpha_star, np.beta_star - h)) /
             (2.0 * h);
  return s;
}

namespace {

void check_grid(const std::vector<double>& grid, const char* name) {
  if (grid.empty()) {
    throw std::domain_error(std::string(name) + " grid must be non-empty");
  }
  double prev = -1.0;
  for (double x : grid) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw std::domain_error(std::string(name) + " grid value out of [0,1]: " +
                              fmt_double(x));
    }
    if (x < prev) {
      throw std::domain_error(std::string(name) + " grid must be sorted");
    }
    prev = x;
  }
}

double cell_value(const GameConfig& config, double alpha, double beta) {
  try {
    return gb_surface_value(Strategy(alpha, beta), config);
  } catch (const std::domain_error&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace

SurfaceTable surface(const GameConfig& config, std::vector<double> alphas,
                     std::vector<double> betas) {
  check_grid(alphas, "alpha");
  check_grid(betas, "beta");
  SurfaceTable table{config, std::move(alphas), std::move(betas), {}};
  const std::size_t nb = table.betas.size();
  const std::int64_t total =
      static_cast<std::int64_t>(table.alphas.size() * nb);
  table.gb.resize(static_cast<std::size_t>(total));
#pragma omp parallel for schedule(static) if (total > 4096)
  for (std::int64_t idx = 0; idx < total; ++idx) {
    const std::size_t i = static_cast<std::size_t>(idx) / nb;
    const std::size_t j = static_cast<std::size_t>(idx) % nb;
    table.gb[static_cast<std::size_t>(idx)] =
        cell_value(config, table.alphas[i], table.betas[j]);
  }
  return table;
}

SurfaceTable surface_serial(const GameConfig& config,
                            std::vector<double> alphas,
                            std::vector<double> betas) {
  check_grid(alphas, "alpha");
  check_grid(betas, "beta");
  SurfaceTable table{config, std::move(alphas), std::move(betas), {}};
  table.gb.reserve(table.alphas.size() * table.betas.size());
  for (double a : table.alphas) {
    for (double b : table.betas) {
      table.gb.push_back(cell_value(config, a, b));
    }
  }
  return table;
}

std::vector<double> uniform_grid(int n) {
  if (n < 2) throw std::domain_error("grid needs at least 2 points");
  std::vector<double> grid(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    grid[static_cast<std::size_t>(i)] =
        static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return grid;
}

void write_surface_csv(std::ostream& out, const SurfaceTable& table) {
  out << "alpha,beta,gb\n";
  const std::size_t nb = table.betas.size();
  for (std::size_t i = 0; i < table.alphas.size(); ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      out << fmt_double(table.alphas[i]) << ',' << fmt_double(table.betas[j])
          << ',' << fmt_double(table.gb[i * nb + j]) << '\n';
    }
  }
}

std::string nash_point_json(const GameConfig& config, const NashPoint& point) {
  nlohmann::ordered_json j;
  j["gamma"] = config.gamma;
  j["r"] = config.r_gain;
  j["alpha_star"] = point.alpha_star;
  j["beta_star"] = point.beta_star;
  j["delta"] = point.delta;
  return j.dump();
}

}  // namespace qgamble
