#pragma once

#include <string>
#include <string_view>
#include <variant>

namespace qgamble {

// Plays the equilibrium parameter for the session's config.
struct NashHonest {};

struct FixedAlpha {
  double alpha;
};

// With probability q prepares exactly the committed state (alpha = gamma);
// a mismatch claim on such a round is provably a lie and costs the caught
// party `penalty` coins.
struct SpotCheck {
  double q;
  double alpha_otherwise;
  double penalty = 1.0;
};

struct FixedBeta {
  double beta;
};

// Claims a mismatch on every no-find round regardless of the verification
// outcome.
struct Liar {
  double beta;
};

using AlicePolicy = std::variant<FixedAlpha, NashHonest, SpotCheck>;
using BobPolicy = std::variant<FixedBeta, NashHonest, Liar>;

// Policy specs as accepted on the command line:
//   alice: "nash" | "fixed:0.3" | "spotcheck:q=0.1,alpha=1/3,penalty=1"
//   bob:   "nash" | "fixed:0.25" | "liar:0.25"
// Numbers accept decimals and simple fractions. Malformed specs throw
// std::invalid_argument.
AlicePolicy parse_alice_policy(std::string_view spec);
BobPolicy parse_bob_policy(std::string_view spec);

std::string describe(const AlicePolicy& policy);
std::string describe(const BobPolicy& policy);

}  // namespace qgamble
