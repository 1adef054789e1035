#include "qgamble/message.hpp"

namespace qgamble {

std::string_view msg_kind_name(MsgKind kind) {
  switch (kind) {
    case MsgKind::Agree:
      return "agree";
    case MsgKind::BoxB:
      return "box_b";
    case MsgKind::FoundClaim:
      return "found_claim";
    case MsgKind::RequestA:
      return "request_a";
    case MsgKind::BoxA:
      return "box_a";
    case MsgKind::VerifyClaim:
      return "verify_claim";
    case MsgKind::Settle:
      return "settle";
    case MsgKind::Abort:
      return "abort";
  }
  throw std::logic_error("bad MsgKind");
}

std::optional<MsgKind> msg_kind_from_name(std::string_view name) {
  for (MsgKind k :
       {MsgKind::Agree, MsgKind::BoxB, MsgKind::FoundClaim, MsgKind::RequestA,
        MsgKind::BoxA, MsgKind::VerifyClaim, MsgKind::Settle, MsgKind::Abort}) {
    if (msg_kind_name(k) == name) return k;
  }
  return std::nullopt;
}

std::string encode_message(const Message& msg) {
  nlohmann::ordered_json j;
  j["v"] = msg.version;
  j["round"] = msg.round;
  j["kind"] = msg_kind_name(msg.kind);
  j["payload"] = msg.payload;
  return j.dump() + "\n";
}

Message decode_message(std::string_view bytes) {
  std::string_view frame = bytes;
  if (!frame.empty() && frame.back() == '\n') frame.remove_suffix(1);
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(frame);
  } catch (const nlohmann::json::parse_error& e) {
    throw MessageParseError(e.what(), e.byte);
  }
  if (!j.is_object() || !j.contains("v") || !j.contains("round") ||
      !j.contains("kind") || !j.contains("payload")) {
    throw MessageParseError("frame missing v/round/kind/payload", frame.size());
  }
  if (!j["v"].is_number_integer()) {
    throw MessageParseError("version must be an integer", 0);
  }
  const int version = j["v"].get<int>();
  if (version != 1) throw UnsupportedVersionError(version);
  if (!j["round"].is_number_unsigned() && !j["round"].is_number_integer()) {
    throw MessageParseError("round must be a counter", 0);
  }
  const auto kind = msg_kind_from_name(j["kind"].get<std::string>());
  if (!kind) {
    throw MessageParseError(
        "unknown message kind '" + j["kind"].get<std::string>() + "'", 0);
  }
  if (!j["payload"].is_object()) {
    throw MessageParseError("payload must be an object", 0);
  }
  Message msg;
  msg.version = version;
  msg.round = j["round"].get<std::uint64_t>();
  msg.kind = *kind;
  msg.payload = j["payload"];
  return msg;
}

bool GrammarChecker::accept(MsgKind kind) {
  if (state_ == State::Terminated) return false;
  if (kind == MsgKind::Abort) {
    state_ = State::Terminated;
    return true;
  }
  switch (state_) {
    case State::ExpectAgree:
      if (kind != MsgKind::Agree) return false;
      state_ = State::Idle;
      return true;
    case State::Idle:
      if (kind != MsgKind::BoxB) return false;
      state_ = State::AfterBoxB;
      return true;
    case State::AfterBoxB:
      if (kind == MsgKind::FoundClaim) {
        state_ = State::AfterFoundClaim;
        return true;
      }
      if (kind == MsgKind::RequestA) {
        state_ = State::AfterRequestA;
        return true;
      }
      return false;
    case State::AfterFoundClaim:
      if (kind != MsgKind::Settle) return false;
      state_ = State::Idle;
      return true;
    case State::AfterRequestA:
      if (kind != MsgKind::BoxA) return false;
      state_ = State::AfterBoxA;
      return true;
    case State::AfterBoxA:
      if (kind != MsgKind::VerifyClaim) return false;
      state_ = State::AfterVerifyClaim;
      return true;
    case State::AfterVerifyClaim:
      if (kind != MsgKind::Settle) return false;
      state_ = State::Idle;
      return true;
    case State::Terminated:
      return false;
  }
  return false;
}

bool GrammarChecker::at_round_boundary() const {
  return state_ == State::Idle || state_ == State::Terminated;
}

}  // namespace qgamble
