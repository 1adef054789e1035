#include "qgamble/session.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "qgamble/numfmt.hpp"

namespace qgamble {

double Ledger::mean_gain() const {
  if (records.empty()) return 0.0;
  return bob_total / static_cast<double>(records.size());
}

double Ledger::std_err() const {
  const std::size_t n = records.size();
  if (n < 2) return 0.0;
  const double mean = mean_gain();
  double ss = 0.0;
  for (const RoundRecord& rec : records) {
    const double d = rec.settlement_bob - mean;
    ss += d * d;
  }
  return std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
}

Ledger run_session(const GameConfig& config, const AlicePolicy& alice,
                   const BobPolicy& bob, std::uint64_t n_rounds,
                   std::uint64_t seed, const SessionRules& rules) {
  if (n_rounds == 0) throw std::domain_error("session needs n_rounds >= 1");
  Ledger ledger{config, seed, {}, 0.0, 0.0, false, AbortKind::None, ""};
  ledger.records.reserve(n_rounds);
  RandomStream rng(seed);
  for (std::uint64_t k = 1; k <= n_rounds; ++k) {
    const RoundRecord rec = run_round(config, alice, bob, k, rng);
    ledger.records.push_back(rec);
    ledger.bob_total += rec.settlement_bob;
    ledger.alice_total -= rec.settlement_bob;
    if (rec.lie_detected && rules.abort_on_lie) {
      ledger.aborted = true;
      ledger.abort_kind = AbortKind::LieDetected;
      ledger.abort_reason = "lie detected in round " + std::to_string(k);
      break;
    }
  }
  return ledger;
}

void write_ledger_csv(std::ostream& out, const Ledger& ledger) {
  out << "round,alpha,beta,spot_check,outcome,claim,lie_detected,"
         "settlement_bob\n";
  for (const RoundRecord& rec : ledger.records) {
    out << rec.round << ',' << fmt_double(rec.alpha_used) << ','
        << fmt_double(rec.beta_used) << ',' << (rec.spot_check ? 1 : 0) << ','
        << round_outcome_name(rec.outcome) << ','
        << round_outcome_name(rec.bob_claim) << ','
        << (rec.lie_detected ? 1 : 0) << ',' << fmt_double(rec.settlement_bob)
        << '\n';
  }
}

std::string ledger_summary_json(const Ledger& ledger) {
  nlohmann::ordered_json j;
  j["rounds"] = ledger.records.size();
  j["bob_total"] = ledger.bob_total;
  j["mean_gain"] = ledger.mean_gain();
  j["stderr"] = ledger.std_err();
  if (ledger.aborted) {
    j["aborted"] = true;
    j["abort_reason"] = ledger.abort_reason;
  }
  return j.dump();
}

}  // namespace qgamble
