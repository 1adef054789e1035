#include "qgamble/round.hpp"

#include "qgamble/equilibrium.hpp"
#include "qgamble/pure_state.hpp"

namespace qgamble {

namespace {

struct AliceMove {
  double alpha;
  bool spot_check;
  double penalty;
};

AliceMove resolve_alice(const AlicePolicy& policy, const GameConfig& config,
                        RandomStream& rng) {
  if (const auto* f = std::get_if<FixedAlpha>(&policy)) {
    return {f->alpha, false, 1.0};
  }
  if (std::holds_alternative<NashHonest>(policy)) {
    return {nash_point(config).alpha_star, false, 1.0};
  }
  const auto& s = std::get<SpotCheck>(policy);
  const bool spot = rng.next_unit() < s.q;
  return {spot ? config.gamma : s.alpha_otherwise, spot, s.penalty};
}

double resolve_beta(const BobPolicy& policy, const GameConfig& config) {
  if (const auto* f = std::get_if<FixedBeta>(&policy)) return f->beta;
  if (const auto* l = std::get_if<Liar>(&policy)) return l->beta;
  return nash_point(config).beta_star;
}

}  // namespace

RoundRecord run_round(const GameConfig& config, const AlicePolicy& alice,
                      const BobPolicy& bob, std::uint64_t round,
                      RandomStream& rng) {
  RoundRecord rec;
  rec.round = round;

  const AliceMove move = resolve_alice(alice, config, rng);
  rec.alpha_used = move.alpha;
  rec.spot_check = move.spot_check;
  rec.beta_used = resolve_beta(bob, config);

  const PureState after_split =
      split_b(prepare_alice(move.alpha), rec.beta_used);
  const MeasureOutcome measured = measure_b(after_split, rng);

  if (measured.found) {
    rec.outcome = RoundOutcome::FoundInB;
    rec.bob_claim = RoundOutcome::FoundInB;
    rec.settlement_bob = config.r_gain;
  } else {
    const bool mismatch =
        verify_mismatch(measured.post_state, config.gamma, rec.beta_used, rng);
    rec.outcome = mismatch ? RoundOutcome::VerifiedMismatch
                           : RoundOutcome::VerifiedMatch;
    const bool lying = std::holds_alternative<Liar>(bob);
    rec.bob_claim = lying ? RoundOutcome::VerifiedMismatch : rec.outcome;
    if (rec.bob_claim == RoundOutcome::VerifiedMismatch) {
      if (rec.spot_check && rec.outcome != RoundOutcome::VerifiedMismatch) {
        rec.lie_detected = true;
        rec.settlement_bob = -move.penalty;
      } else {
        rec.settlement_bob = config.r_gain;
      }
    } else {
      rec.settlement_bob = -1.0;
    }
  }

  rec.rng_cursor = rng.cursor();
  return rec;
}

}  // namespace qgamble
