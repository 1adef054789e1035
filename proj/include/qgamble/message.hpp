#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

namespace qgamble {

enum class MsgKind {
  Agree,
  BoxB,
  FoundClaim,
  RequestA,
  BoxA,
  VerifyClaim,
  Settle,
  Abort,
};

std::string_view msg_kind_name(MsgKind kind);
std::optional<MsgKind> msg_kind_from_name(std::string_view name);

// One protocol message. Wire form is a single LF-terminated UTF-8 JSON
// line: {"v":1,"round":<u64>,"kind":"...","payload":{...}}.
// Payloads: agree{gamma,r,n_rounds,seed_commitment}; box_b{state_ref};
// found_claim{found}; verify_claim{mismatch}; settle{bob_delta};
// abort{reason}; request_a and box_a carry {} / {state_ref}.
struct Message {
  int version = 1;
  std::uint64_t round = 0;
  MsgKind kind = MsgKind::Abort;
  nlohmann::ordered_json payload = nlohmann::ordered_json::object();
};

struct MessageParseError : std::runtime_error {
  MessageParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what), byte_offset(offset) {}
  std::size_t byte_offset;
};

struct UnsupportedVersionError : std::runtime_error {
  explicit UnsupportedVersionError(int v)
      : std::runtime_error("unsupported message version " +
                           std::to_string(v)),
        version(v) {}
  int version;
};

std::string encode_message(const Message& msg);

// Accepts one frame with or without its trailing LF. Malformed frames
// raise MessageParseError with the offending byte offset; a valid frame
// with an unknown version raises UnsupportedVersionError.
Message decode_message(std::string_view bytes);

// Acceptor for the session grammar:
//   agree (box_b (found_claim settle |
//                 request_a box_a verify_claim (settle | abort)))*
// plus abort as an emergency terminal from any state.
class GrammarChecker {
 public:
  // Returns false (and stays put) if the kind is not allowed here.
  bool accept(MsgKind kind);

  // True when the transcript may stop here (between rounds or terminated).
  bool at_round_boundary() const;

 private:
  enum class State {
    ExpectAgree,
    Idle,
    AfterBoxB,
    AfterFoundClaim,
    AfterRequestA,
    AfterBoxA,
    AfterVerifyClaim,
    Terminated,
  };
  State state_ = State::ExpectAgree;
};

}  // namespace qgamble
