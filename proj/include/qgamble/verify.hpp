#pragma once

#include <cstdint>
#include <string>

#include "qgamble/payoff.hpp"

namespace qgamble {

// Outcome probabilities recomputed through the state engine instead of the
// closed forms: prepare -> split -> projection probability; no-find
// collapse -> overlap with the reduced committed state. This is the
// independent route the closed forms are checked against.
OutcomeProbs pipeline_probs(const Strategy& strategy, const GameConfig& config);

struct VerifyOptions {
  int configs = 20;        // random (gamma, r) configs for the per-config suites
  int grid_n = 101;        // saddle grid resolution
  std::uint64_t seed = 0;  // generator seed for the sampled checks
};

struct VerifyReport {
  bool pass = false;
  std::string text;  // one line per suite with the worst violation observed
};

// Runs the invariant suites: the G_b sign regression at the fairness
// anchor, the probability simplex, closed-form vs pipeline equivalence,
// the p2 double derivation, gamma<->delta round trips, saddle
// certificates, best-response fixed points, and stationarity.
VerifyReport run_verification(const VerifyOptions& options);

}  // namespace qgamble
