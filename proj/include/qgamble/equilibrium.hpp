#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qgamble/payoff.hpp"

namespace qgamble {

// Equilibrium point of G_b(alpha, beta):
//   delta = (2 + 2R - gamma (2+R) - 2 (1+R) sqrt(1-gamma)) / gamma
//   alpha* = (1 - sqrt(1-gamma)) / 2
//   beta*  = (-1 + gamma + sqrt(1-gamma)) / gamma
// gamma=1 is flagged degenerate: delta = R and the game is vacuous.
struct NashPoint {
  double alpha_star;
  double beta_star;
  double delta;
  bool degenerate;
};

NashPoint nash_point(const GameConfig& config);

// Bob's guaranteed expected gain at equilibrium.
double delta_of(const GameConfig& config);

// Committed-state weight realizing a target bias:
//   gamma = 4 (1+delta)(1+R) / (2+delta+R)^2.
// Requires delta > -1. The map inverts delta_of only on delta <= R
// (delta_of ranges over (-1, R]).
double gamma_for(double delta, double r_gain);

struct BestResponse {
  double arg;  // the optimizing alpha or beta
  double gb;   // G_b at the optimum
};

// argmax over beta of G_b(alpha, .): exhaustive 1001-point grid, then
// golden-section refinement to 1e-9. Ties break toward smaller beta.
BestResponse best_response_beta(double alpha, const GameConfig& config);

// argmin over alpha of G_b(., beta); ties toward smaller alpha.
BestResponse best_response_alpha(double beta, const GameConfig& config);

// Numerical certificate for the minimax claim on a grid_n x grid_n grid.
struct SaddleReport {
  int grid_resolution;
  double tol;
  double worst_alpha_violation;  // max(0, delta - min_alpha G_b(alpha, beta*))
  double worst_beta_violation;   // max(0, max_beta G_b(alpha*, beta) - delta)
  double grid_alpha;             // discrete minimax point
  double grid_beta;
  double analytic_alpha;
  double analytic_beta;
  double delta;
  bool pass;  // both violations <= tol
};

SaddleReport verify_saddle(const GameConfig& config, int grid_n, double tol);

// Central finite differences of G_b at the Nash point; not applicable when
// the point sits within h of the strategy-box boundary.
struct Stationarity {
  bool applicable;
  double d_alpha;
  double d_beta;
};

Stationarity stationarity_check(const GameConfig& config, double h);

// Full cross-product table of G_b over the sample grids, row-major by
// alpha then beta. Cells where the gain is undefined hold NaN.
struct SurfaceTable {
  GameConfig config;
  std::vector<double> alphas;
  std::vector<double> betas;
  std::vector<double> gb;  // size alphas.size() * betas.size()

  double at(std::size_t i, std::size_t j) const {
    return gb[i * betas.size() + j];
  }
};

SurfaceTable surface(const GameConfig& config, std::vector<double> alphas,
                     std::vector<double> betas);

// Serial reference for the OpenMP surface kernel.
SurfaceTable surface_serial(const GameConfig& config,
                            std::vector<double> alphas,
                            std::vector<double> betas);

// n equally spaced samples over [0,1], endpoints exact. n >= 2.
std::vector<double> uniform_grid(int n);

// CSV: header "alpha,beta,gb", one row per cell, row-major, shortest
// round-trip decimals, LF line endings; undefined cells emit "nan".
void write_surface_csv(std::ostream& out, const SurfaceTable& table);

// {"gamma":..., "r":..., "alpha_star":..., "beta_star":..., "delta":...}
std::string nash_point_json(const GameConfig& config, const NashPoint& point);

}  // namespace qgamble
