#pragma once

#include <cstdint>

#include "qgamble/payoff.hpp"
#include "qgamble/policy.hpp"
#include "qgamble/rng.hpp"

namespace qgamble {

struct RoundRecord {
  std::uint64_t round = 0;
  double alpha_used = 0.0;
  double beta_used = 0.0;
  bool spot_check = false;
  RoundOutcome outcome = RoundOutcome::VerifiedMatch;    // physics truth
  RoundOutcome bob_claim = RoundOutcome::VerifiedMatch;  // what Bob asserts
  bool lie_detected = false;
  double settlement_bob = 0.0;  // +R, -1, or -penalty
  std::uint64_t rng_cursor = 0; // draws consumed after this round

  bool operator==(const RoundRecord&) const = default;
};

// Plays one full round through the state engine: prepare -> split ->
// measure -> (settle | verify -> claim -> settle).
//
// Draw order within a round is causal and fixed: the spot-check coin flip
// (only for SpotCheck Alice), then the B measurement, then the
// verification projection on no-find rounds. Found-in-B outcomes are
// referee-certified, so an honest claim is forced there; on no-find rounds
// honest Bob claims the physics outcome and Liar Bob claims a mismatch.
// A mismatch claim on a spot-check round is provably a lie and settles
// -penalty for Bob.
RoundRecord run_round(const GameConfig& config, const AlicePolicy& alice,
                      const BobPolicy& bob, std::uint64_t round,
                      RandomStream& rng);

}  // namespace qgamble
