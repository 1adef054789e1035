#include "qgamble/endpoint.hpp"

#include <cstdio>
#include <thread>

#include "qgamble/numfmt.hpp"
#include "qgamble/rng.hpp"

namespace qgamble {

namespace {

constexpr std::uint64_t kCommitTag = 0x5eed0c0de;

struct PeerAborted {
  std::string reason;
};

class Wire {
 public:
  Wire(Transport& transport, const EndpointOptions& options)
      : transport_(transport), options_(options) {}

  void send(MsgKind kind, std::uint64_t round,
            nlohmann::ordered_json payload) {
    Message msg;
    msg.round = round;
    msg.kind = kind;
    msg.payload = std::move(payload);
    transport_.write_line(encode_message(msg));
    log(msg);
  }

  // Receives and validates the envelope; peer aborts surface as
  // PeerAborted so the caller can finish its ledger.
  Message recv(MsgKind expected, std::uint64_t round) {
    auto line = transport_.read_line(options_.io_timeout);
    if (!line) throw TransportError("peer closed the connection");
    const Message msg = decode_message(*line);
    log(msg);
    if (msg.kind == MsgKind::Abort) {
      throw PeerAborted{msg.payload.value("reason", std::string("aborted"))};
    }
    if (msg.kind != expected) {
      throw ProtocolViolation(std::string("expected ") +
                              std::string(msg_kind_name(expected)) + ", got " +
                              std::string(msg_kind_name(msg.kind)));
    }
    if (msg.round != round) {
      throw ProtocolViolation("message for round " + std::to_string(msg.round) +
                              " arrived in round " + std::to_string(round));
    }
    return msg;
  }

  // As recv, but the next message may be one of two kinds.
  Message recv_either(MsgKind a, MsgKind b, std::uint64_t round) {
    auto line = transport_.read_line(options_.io_timeout);
    if (!line) throw TransportError("peer closed the connection");
    const Message msg = decode_message(*line);
    log(msg);
    if (msg.kind == MsgKind::Abort) {
      throw PeerAborted{msg.payload.value("reason", std::string("aborted"))};
    }
    if (msg.kind != a && msg.kind != b) {
      throw ProtocolViolation(std::string("expected ") +
                              std::string(msg_kind_name(a)) + " or " +
                              std::string(msg_kind_name(b)) + ", got " +
                              std::string(msg_kind_name(msg.kind)));
    }
    if (msg.round != round) {
      throw ProtocolViolation("message for round " + std::to_string(msg.round) +
                              " arrived in round " + std::to_string(round));
    }
    return msg;
  }

  void send_abort(std::uint64_t round, const std::string& reason) {
    try {
      send(MsgKind::Abort, round, {{"reason", reason}});
    } catch (const TransportError&) {
      // The peer is already gone; the local ledger still records the abort.
    }
  }

 private:
  void log(const Message& msg) {
    if (options_.transcript) options_.transcript->push_back(msg);
  }

  Transport& transport_;
  const EndpointOptions& options_;
};

void record_round(Ledger& ledger, const RoundRecord& rec) {
  ledger.records.push_back(rec);
  ledger.bob_total += rec.settlement_bob;
  ledger.alice_total -= rec.settlement_bob;
}

template <typename Body>
Ledger run_endpoint(Transport& transport, const GameConfig& config,
                    std::uint64_t seed, const EndpointOptions& options,
                    Body body) {
  Ledger ledger{config, seed, {}, 0.0, 0.0, false, AbortKind::None, ""};
  Wire wire(transport, options);
  std::uint64_t round = 0;
  try {
    body(wire, ledger, round);
  } catch (const PeerAborted& e) {
    ledger.aborted = true;
    // A lie-detection abort carries the same reason string the in-process
    // session writes, keeping the two ledgers field-identical.
    ledger.abort_kind = e.reason.rfind("lie detected", 0) == 0
                            ? AbortKind::LieDetected
                            : AbortKind::Protocol;
    ledger.abort_reason = e.reason;
  } catch (const ProtocolViolation& e) {
    wire.send_abort(round, e.what());
    ledger.aborted = true;
    ledger.abort_kind = AbortKind::Protocol;
    ledger.abort_reason = e.what();
  } catch (const MessageParseError& e) {
    wire.send_abort(round, e.what());
    ledger.aborted = true;
    ledger.abort_kind = AbortKind::Protocol;
    ledger.abort_reason = e.what();
  } catch (const UnsupportedVersionError& e) {
    wire.send_abort(round, e.what());
    ledger.aborted = true;
    ledger.abort_kind = AbortKind::Protocol;
    ledger.abort_reason = e.what();
  } catch (const TransportError& e) {
    ledger.aborted = true;
    ledger.abort_kind = AbortKind::Transport;
    ledger.abort_reason = std::string("transport: ") + e.what();
  }
  transport.close();
  return ledger;
}

std::string box_ref(std::uint64_t round, char box) {
  return "r" + std::to_string(round) + ":" + box;
}

}  // namespace

std::string seed_commitment(std::uint64_t seed) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(
                    RandomStream::u64_at(seed ^ kCommitTag, 0)));
  return buf;
}

Ledger run_alice_endpoint(Transport& transport, const GameConfig& config,
                          const AlicePolicy& alice, const BobPolicy& bob,
                          std::uint64_t n_rounds, std::uint64_t seed,
                          const EndpointOptions& options) {
  return run_endpoint(
      transport, config, seed, options,
      [&](Wire& wire, Ledger& ledger, std::uint64_t& round) {
        RandomStream rng(seed);
        wire.send(MsgKind::Agree, 0,
                  {{"gamma", config.gamma},
                   {"r", config.r_gain},
                   {"n_rounds", n_rounds},
                   {"seed_commitment", seed_commitment(seed)}});
        for (std::uint64_t k = 1; k <= n_rounds; ++k) {
          round = k;
          const RoundRecord rec = run_round(config, alice, bob, k, rng);
          wire.send(MsgKind::BoxB, k, {{"state_ref", box_ref(k, 'b')}});
          if (rec.outcome == RoundOutcome::FoundInB) {
            const Message claim = wire.recv(MsgKind::FoundClaim, k);
            if (!claim.payload.value("found", false)) {
              throw ProtocolViolation("found claim contradicts physics");
            }
            wire.send(MsgKind::Settle, k, {{"bob_delta", rec.settlement_bob}});
          } else {
            wire.recv(MsgKind::RequestA, k);
            wire.send(MsgKind::BoxA, k, {{"state_ref", box_ref(k, 'a')}});
            const Message claim = wire.recv(MsgKind::VerifyClaim, k);
            const bool expect_mismatch =
                rec.bob_claim == RoundOutcome::VerifiedMismatch;
            if (claim.payload.value("mismatch", !expect_mismatch) !=
                expect_mismatch) {
              throw ProtocolViolation("verify claim diverged from replica");
            }
            wire.send(MsgKind::Settle, k, {{"bob_delta", rec.settlement_bob}});
          }
          record_round(ledger, rec);
          if (rec.lie_detected && options.rules.abort_on_lie) {
            const std::string reason =
                "lie detected in round " + std::to_string(k);
            wire.send_abort(k, reason);
            ledger.aborted = true;
            ledger.abort_kind = AbortKind::LieDetected;
            ledger.abort_reason = reason;
            return;
          }
          if (options.stop_after_rounds != 0 &&
              k >= options.stop_after_rounds) {
            return;  // fault injection: vanish mid-session
          }
        }
      });
}

Ledger run_bob_endpoint(Transport& transport, const GameConfig& config,
                        const AlicePolicy& alice, const BobPolicy& bob,
                        std::uint64_t n_rounds, std::uint64_t seed,
                        const EndpointOptions& options) {
  return run_endpoint(
      transport, config, seed, options,
      [&](Wire& wire, Ledger& ledger, std::uint64_t& round) {
        RandomStream rng(seed);
        const Message agree = wire.recv(MsgKind::Agree, 0);
        if (agree.payload.value("gamma", -1.0) != config.gamma ||
            agree.payload.value("r", -1.0) != config.r_gain ||
            agree.payload.value("n_rounds", std::uint64_t{0}) != n_rounds) {
          throw ProtocolViolation("agree does not match the session spec");
        }
        if (agree.payload.value("seed_commitment", std::string()) !=
            seed_commitment(seed)) {
          throw ProtocolViolation("seed commitment mismatch");
        }
        for (std::uint64_t k = 1; k <= n_rounds; ++k) {
          round = k;
          const RoundRecord rec = run_round(config, alice, bob, k, rng);
          wire.recv(MsgKind::BoxB, k);
          if (rec.outcome == RoundOutcome::FoundInB) {
            wire.send(MsgKind::FoundClaim, k, {{"found", true}});
          } else {
            wire.send(MsgKind::RequestA, k,
                      nlohmann::ordered_json::object());
            wire.recv(MsgKind::BoxA, k);
            wire.send(MsgKind::VerifyClaim, k,
                      {{"mismatch",
                        rec.bob_claim == RoundOutcome::VerifiedMismatch}});
          }
          const Message settle = wire.recv(MsgKind::Settle, k);
          if (settle.payload.value("bob_delta", rec.settlement_bob + 1.0) !=
              rec.settlement_bob) {
            throw ProtocolViolation("settlement diverged from replica");
          }
          record_round(ledger, rec);
          if (rec.lie_detected && options.rules.abort_on_lie) {
            // Alice follows the settle with an abort carrying the reason.
            const Message abort_msg = wire.recv(MsgKind::Abort, k);
            (void)abort_msg;  // recv() maps aborts to PeerAborted
            return;
          }
          if (options.stop_after_rounds != 0 &&
              k >= options.stop_after_rounds) {
            return;
          }
        }
      });
}

TransportSessionResult run_session_over_transport(
    const GameConfig& config, const AlicePolicy& alice, const BobPolicy& bob,
    std::uint64_t n_rounds, std::uint64_t seed, TransportPair& pair,
    const EndpointOptions& options) {
  TransportSessionResult result{
      Ledger{config, seed, {}, 0.0, 0.0, false, AbortKind::None, ""},
      Ledger{config, seed, {}, 0.0, 0.0, false, AbortKind::None, ""}};
  EndpointOptions bob_options = options;
  bob_options.transcript = nullptr;  // one transcript, from Alice's side
  std::thread bob_thread([&] {
    result.bob = run_bob_endpoint(*pair.second, config, alice, bob, n_rounds,
                                  seed, bob_options);
  });
  result.alice = run_alice_endpoint(*pair.first, config, alice, bob, n_rounds,
                                    seed, options);
  bob_thread.join();
  return result;
}

}  // namespace qgamble
