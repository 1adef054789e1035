#pragma once

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qgamble/message.hpp"
#include "qgamble/session.hpp"
#include "qgamble/transport.hpp"

namespace qgamble {

// A peer message contradicted the deterministic session expectation
// (e.g. a found claim on a round whose B amplitude was empty).
struct ProtocolViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EndpointOptions {
  std::chrono::milliseconds io_timeout{10000};
  SessionRules rules;
  // When non-null, every message sent or received is appended in causal
  // order (the endpoint's view of the session transcript).
  std::vector<Message>* transcript = nullptr;
  // Fault-injection hook: stop after this many completed rounds and close
  // the transport, as a dying peer would. 0 plays the full session.
  std::uint64_t stop_after_rounds = 0;
};

// Both endpoints are given the full deterministic session specification
// (config, both policies, seed) and replay the same round engine the
// in-process run_session uses; the wire carries the agreed grammar and is
// validated in lockstep against that replica. A healthy transport
// therefore yields a ledger identical to run_session's, and any divergence
// (tampering, desync, loss) aborts the session.
//
// Alice's endpoint owns the referee role: it issues the box handles and
// the settlements. Bob's endpoint issues claims and requests.
//
// Transport failures are recorded on the returned ledger (aborted flag,
// transport kind), not thrown.
Ledger run_alice_endpoint(Transport& transport, const GameConfig& config,
                          const AlicePolicy& alice, const BobPolicy& bob,
                          std::uint64_t n_rounds, std::uint64_t seed,
                          const EndpointOptions& options = {});

Ledger run_bob_endpoint(Transport& transport, const GameConfig& config,
                        const AlicePolicy& alice, const BobPolicy& bob,
                        std::uint64_t n_rounds, std::uint64_t seed,
                        const EndpointOptions& options = {});

struct TransportSessionResult {
  Ledger alice;
  Ledger bob;
};

// Runs both endpoints over the given connected pair (Bob on a worker
// thread) and returns both ledgers. The Alice ledger is the session's
// authoritative ledger.
TransportSessionResult run_session_over_transport(
    const GameConfig& config, const AlicePolicy& alice, const BobPolicy& bob,
    std::uint64_t n_rounds, std::uint64_t seed, TransportPair& pair,
    const EndpointOptions& options = {});

// Commitment string for the agree message (not the seed itself).
std::string seed_commitment(std::uint64_t seed);

}  // namespace qgamble
