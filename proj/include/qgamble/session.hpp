#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qgamble/round.hpp"

namespace qgamble {

struct SessionRules {
  // When true, a detected lie settles the penalty and then ends the session
  // (ledger flagged aborted). Default keeps playing.
  bool abort_on_lie = false;
};

enum class AbortKind { None, LieDetected, Transport, Protocol };

// Per-session transcript and settlement totals. Penalties transfer to
// Alice, so the ledger is zero-sum by construction.
struct Ledger {
  GameConfig config;
  std::uint64_t seed = 0;
  std::vector<RoundRecord> records;
  double bob_total = 0.0;
  double alice_total = 0.0;
  bool aborted = false;
  AbortKind abort_kind = AbortKind::None;
  std::string abort_reason;

  double mean_gain() const;  // bob_total / rounds (0 for empty ledgers)
  double std_err() const;    // (n-1)-form sample stderr of settlements

  bool operator==(const Ledger&) const = default;
};

// Deterministic for a fixed seed: one master stream consumed in round
// order. Rounds are numbered from 1.
Ledger run_session(const GameConfig& config, const AlicePolicy& alice,
                   const BobPolicy& bob, std::uint64_t n_rounds,
                   std::uint64_t seed, const SessionRules& rules = {});

// CSV: round,alpha,beta,spot_check,outcome,claim,lie_detected,settlement_bob
void write_ledger_csv(std::ostream& out, const Ledger& ledger);

// {"rounds":..., "bob_total":..., "mean_gain":..., "stderr":...}
// (plus "aborted"/"abort_reason" when the session aborted).
std::string ledger_summary_json(const Ledger& ledger);

}  // namespace qgamble
