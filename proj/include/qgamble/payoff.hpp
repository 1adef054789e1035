#pragma once

#include <cstdint>
#include <string_view>

#include "qgamble/rng.hpp"

namespace qgamble {

// Committed-state weight gamma and Bob's one-shot gain R (Alice's one-shot
// gain is fixed at 1; only the ratio matters).
struct GameConfig {
  GameConfig(double gamma_, double r_gain_);

  double gamma;
  double r_gain;

  bool operator==(const GameConfig&) const = default;
};

// Alice's preparation weight alpha and Bob's splitting ratio beta.
struct Strategy {
  Strategy(double alpha_, double beta_);

  double alpha;
  double beta;
};

// The three terminal-outcome probabilities:
//   p1 = Bob finds the particle in box B
//   p2 = verification detects a mismatch (Bob wins)
//   p3 = verification matches the committed state (Alice wins)
struct OutcomeProbs {
  double p1;
  double p2;
  double p3;
};

enum class RoundOutcome { FoundInB, VerifiedMismatch, VerifiedMatch };

std::string_view round_outcome_name(RoundOutcome o);
RoundOutcome round_outcome_from_name(std::string_view name);

// Closed-form probabilities:
//   p1 = alpha (1 - beta)
//   p3 = (sqrt((1-alpha)(1-gamma)) + beta sqrt(gamma alpha))^2 / (1-gamma+beta gamma)
//   p2 = 1 - p1 - p3, cross-checked against the direct closed form.
// Domain error for gamma=1, beta=0 unless alpha=1 (where the verification
// branch is unreachable and (1,0,0) is returned).
OutcomeProbs outcome_probs(const Strategy& strategy, const GameConfig& config);

// The direct closed form for p2; exposed so tests can compare the two
// derivation routes.
double p2_direct_form(const Strategy& strategy, const GameConfig& config);

// G_b = R (p1 + p2) - p3  (equivalently R - (1+R) p3).
double gain_bob(const OutcomeProbs& probs, const GameConfig& config);

// Zero-sum: exactly -gain_bob.
double gain_alice(const OutcomeProbs& probs, const GameConfig& config);

// The authoritative G_b(alpha, beta; gamma, R), computed from the outcome
// probabilities. This is the only G_b used anywhere in the artifact.
double gb_surface_value(const Strategy& strategy, const GameConfig& config);

// ---------------------------------------------------------------------------
// As-printed diagnostics. Several published closed forms for G_b carry the
// opposite sign on the 2*beta*sqrt(...) cross term relative to what the
// outcome probabilities give; at (alpha=1/3, beta=1/4, gamma=8/9, R=1) they
// evaluate to 8/9 where the probability-derived G_b is 0. They are kept
// only as regression diagnostics and must never be used as the gain.
// ---------------------------------------------------------------------------
double gb_as_printed_special(double alpha, double beta);  // gamma=8/9, R=1
double gb_as_printed_general(const Strategy& strategy, const GameConfig& config);

// One categorical sample over (p1, p2, p3); consumes exactly one uniform
// draw against the cumulative thresholds (p1, p1+p2, 1].
RoundOutcome sample_outcome(const Strategy& strategy, const GameConfig& config,
                            RandomStream& rng);

struct McSummary {
  std::uint64_t n = 0;
  std::uint64_t n_found = 0;
  std::uint64_t n_mismatch = 0;
  std::uint64_t n_match = 0;
  double mean = 0.0;     // mean per-round settlement for Bob (+R or -1)
  double std_err = 0.0;  // sample standard deviation / sqrt(n), (n-1) form
};

// Monte Carlo estimate of Bob's mean gain over n sampled rounds. Round k
// consumes draw k of the stream with the given seed, so the result is
// independent of threading and bit-identical to the serial reference.
McSummary monte_carlo(const Strategy& strategy, const GameConfig& config,
                      std::uint64_t n, std::uint64_t seed);

// Serial reference implementation (one sequential stream, one loop).
McSummary monte_carlo_serial(const Strategy& strategy, const GameConfig& config,
                             std::uint64_t n, std::uint64_t seed);

struct MeanStdErr {
  double mean;
  double std_err;
};

MeanStdErr monte_carlo_gain(const Strategy& strategy, const GameConfig& config,
                            std::uint64_t n, std::uint64_t seed);

}  // namespace qgamble
