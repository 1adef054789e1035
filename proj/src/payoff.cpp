#include "qgamble/payoff.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qgamble/numfmt.hpp"

namespace qgamble {

namespace {

double clamp01(double p) { return p < 0.0 ? 0.0 : (p > 1.0 ? 1.0 : p); }

struct Thresholds {
  double t_found;     // p1
  double t_mismatch;  // p1 + p2
};

Thresholds thresholds_of(const OutcomeProbs& probs) {
  return {probs.p1, probs.p1 + probs.p2};
}

// Final interval closed at 1 so rounding in the cumulative sums can never
// produce an unassigned draw.
RoundOutcome pick(const Thresholds& t, double u) {
  if (u < t.t_found) return RoundOutcome::FoundInB;
  if (u < t.t_mismatch) return RoundOutcome::VerifiedMismatch;
  return RoundOutcome::VerifiedMatch;
}

McSummary summarize(const GameConfig& config, std::uint64_t n,
                    std::uint64_t n_found, std::uint64_t n_mismatch,
                    std::uint64_t n_match) {
  McSummary s;
  s.n = n;
  s.n_found = n_found;
  s.n_mismatch = n_mismatch;
  s.n_match = n_match;
  const double r = config.r_gain;
  const std::uint64_t wins = n_found + n_mismatch;
  const double win_rate = static_cast<double>(wins) / static_cast<double>(n);
  const double loss_rate =
      static_cast<double>(n_match) / static_cast<double>(n);
  s.mean = r * win_rate - loss_rate;
  if (n >= 2) {
    const double dw = r - s.mean;
    const double dl = -1.0 - s.mean;
    const double var = (static_cast<double>(wins) * dw * dw +
                        static_cast<double>(n_match) * dl * dl) /
                       static_cast<double>(n - 1);
    s.std_err = std::sqrt(var / static_cast<double>(n));
  }
  return s;
}

}  // namespace

GameConfig::GameConfig(double gamma_, double r_gain_)
    : gamma(gamma_), r_gain(r_gain_) {
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw std::domain_error("gamma must be in (0,1], got " + fmt_double(gamma));
  }
  if (!(r_gain > 0.0)) {
    throw std::domain_error("r must be positive, got " + fmt_double(r_gain));
  }
}

Strategy::Strategy(double alpha_, double beta_) : alpha(alpha_), beta(beta_) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::domain_error("alpha must be in [0,1], got " + fmt_double(alpha));
  }
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw std::domain_error("beta must be in [0,1], got " + fmt_double(beta));
  }
}

std::string_view round_outcome_name(RoundOutcome o) {
  switch (o) {
    case RoundOutcome::FoundInB:
      return "found_in_b";
    case RoundOutcome::VerifiedMismatch:
      return "verified_mismatch";
    case RoundOutcome::VerifiedMatch:
      return "verified_match";
  }
  throw std::logic_error("bad RoundOutcome");
}

RoundOutcome round_outcome_from_name(std::string_view name) {
  if (name == "found_in_b") return RoundOutcome::FoundInB;
  if (name == "verified_mismatch") return RoundOutcome::VerifiedMismatch;
  if (name == "verified_match") return RoundOutcome::VerifiedMatch;
  throw std::invalid_argument("unknown outcome: '" + std::string(name) + "'");
}

double p2_direct_form(const Strategy& strategy, const GameConfig& config) {
  const double a = strategy.alpha, b = strategy.beta, g = config.gamma;
  const double denom = 1.0 - g + b * g;
  if (denom <= 0.0) {
    throw std::domain_error("outcome probabilities undefined at gamma=" +
                            fmt_double(g) + ", beta=" + fmt_double(b));
  }
  return b *
         (g + a - 2.0 * g * a -
          2.0 * std::sqrt(g * a * (1.0 - a) * (1.0 - g))) /
         denom;
}

OutcomeProbs outcome_probs(const Strategy& strategy, const GameConfig& config) {
  const double a = strategy.alpha, b = strategy.beta, g = config.gamma;
  if (g == 1.0 && b == 0.0) {
    // The reduced committed state does not exist; only alpha=1 avoids the
    // verification branch entirely.
    if (a == 1.0) return {1.0, 0.0, 0.0};
    throw std::domain_error(
        "outcome probabilities undefined at gamma=1, beta=0, alpha=" +
        fmt_double(a));
  }
  const double p1 = a * (1.0 - b);
  const double denom = 1.0 - g + b * g;
  const double root = std::sqrt((1.0 - a) * (1.0 - g)) + b * std::sqrt(g * a);
  const double p3 = clamp01(root * root / denom);
  const double p2_sub = 1.0 - p1 - p3;
  const double p2_dir = p2_direct_form(strategy, config);
  // Dual-route guard: the two derivations of p2 must agree far beyond any
  // rounding noise, otherwise one of the formulas is wrong.
  if (std::abs(p2_sub - p2_dir) > 1e-8 * (1.0 + 1.0 / denom)) {
    throw std::logic_error("p2 derivations disagree: " + fmt_double(p2_sub) +
                           " vs " + fmt_double(p2_dir));
  }
  return {p1, clamp01(p2_sub), p3};
}

double gain_bob(const OutcomeProbs& probs, const GameConfig& config) {
  return config.r_gain * (probs.p1 + probs.p2) - probs.p3;
}

double gain_alice(const OutcomeProbs& probs, const GameConfig& config) {
  return -gain_bob(probs, config);
}

double gb_surface_value(const Strategy& strategy, const GameConfig& config) {
  return gain_bob(outcome_probs(strategy, config), config);
}

double gb_as_printed_special(double alpha, double beta) {
  return (2.0 * alpha + 8.0 * beta - 1.0 -
          8.0 * (2.0 * beta * beta * alpha -
                 beta * std::sqrt(2.0 * alpha * (1.0 - alpha)))) /
         (1.0 + 8.0 * beta);
}

double gb_as_printed_general(const Strategy& strategy,
                             const GameConfig& config) {
  const double a = strategy.alpha, b = strategy.beta;
  const double g = config.gamma, r = config.r_gain;
  const double denom = 1.0 - g + b * g;
  return (r * (a - g * a + b * g) - (1.0 - a) * (1.0 - g) -
          (1.0 + r) * (b * b * g * a -
                       2.0 * b * std::sqrt(g * a * (1.0 - a) * (1.0 - g)))) /
         denom;
}

RoundOutcome sample_outcome(const Strategy& strategy, const GameConfig& config,
                            RandomStream& rng) {
  return pick(thresholds_of(outcome_probs(strategy, config)), rng.next_unit());
}

McSummary monte_carlo(const Strategy& strategy, const GameConfig& config,
                      std::uint64_t n, std::uint64_t seed) {
  if (n == 0) throw std::domain_error("monte carlo needs n >= 1");
  const Thresholds t = thresholds_of(outcome_probs(strategy, config));
  const std::int64_t sn = static_cast<std::int64_t>(n);
  std::uint64_t n_found = 0, n_mismatch = 0, n_match = 0;
#pragma omp parallel for schedule(static) \
    reduction(+ : n_found, n_mismatch, n_match) if (sn > 16384)
  for (std::int64_t k = 0; k < sn; ++k) {
    switch (pick(t, RandomStream::unit_at(seed, static_cast<std::uint64_t>(k)))) {
      case RoundOutcome::FoundInB:
        ++n_found;
        break;
      case RoundOutcome::VerifiedMismatch:
        ++n_mismatch;
        break;
      case RoundOutcome::VerifiedMatch:
        ++n_match;
        break;
    }
  }
  return summarize(config, n, n_found, n_mismatch, n_match);
}

McSummary monte_carlo_serial(const Strategy& strategy, const GameConfig& config,
                             std::uint64_t n, std::uint64_t seed) {
  if (n == 0) throw std::domain_error("monte carlo needs n >= 1");
  const Thresholds t = thresholds_of(outcome_probs(strategy, config));
  RandomStream rng(seed);
  std::uint64_t n_found = 0, n_mismatch = 0, n_match = 0;
  for (std::uint64_t k = 0; k < n; ++k) {
    switch (pick(t, rng.next_unit())) {
      case RoundOutcome::FoundInB:
        ++n_found;
        break;
      case RoundOutcome::VerifiedMismatch:
        ++n_mismatch;
        break;
      case RoundOutcome::VerifiedMatch:
        ++n_match;
        break;
    }
  }
  return summarize(config, n, n_found, n_mismatch, n_match);
}

MeanStdErr monte_carlo_gain(const Strategy& strategy, const GameConfig& config,
                            std::uint64_t n, std::uint64_t seed) {
  const McSummary s = monte_carlo(strategy, config, n, seed);
  return {s.mean, s.std_err};
}

}  // namespace qgamble
