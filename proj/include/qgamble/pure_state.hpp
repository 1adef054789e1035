#pragma once

#include <complex>
#include <string>
#include <string_view>

#include "qgamble/rng.hpp"

namespace qgamble {

// Fixed three-box basis. The order is the serialization order.
enum class BasisLabel { BoxA = 0, BoxB = 1, BoxBPrime = 2 };

using Amplitude = std::complex<double>;

// Normalized pure state over {|a>, |b>, |b'>}. Amplitudes are complex so
// that arbitrary (cheating) preparations and global-phase invariance are
// expressible, even though every honest in-protocol state is real and
// non-negative.
//
// Construction renormalizes drift up to 1e-9 in the squared norm and
// rejects anything larger as a logic bug in the caller.
class PureState {
 public:
  PureState(Amplitude a, Amplitude b, Amplitude bprime);

  Amplitude amp_a() const { return a_; }
  Amplitude amp_b() const { return b_; }
  Amplitude amp_bprime() const { return bp_; }

  double norm2() const;

  bool operator==(const PureState&) const = default;

 private:
  Amplitude a_, b_, bp_;
};

// |psi> = sqrt(1-alpha)|a> + sqrt(alpha)|b>.  alpha in [0,1].
PureState prepare_alice(double alpha);

// |psi_c> = sqrt(1-gamma)|a> + sqrt(gamma)|b>.  gamma in (0,1].
PureState committed_state(double gamma);

// Splits the b amplitude: b -> sqrt(1-beta) b, b' += sqrt(beta) b.
PureState split_b(const PureState& state, double beta);

// Probability of finding the particle in box B: |amp_b|^2, clamped to [0,1].
double prob_in_b(const PureState& state);

// Conjugate-linear inner product <s1|s2>.
Amplitude overlap(const PureState& s1, const PureState& s2);

// The committed state after an unsuccessful B measurement:
// sqrt((1-gamma)/(1-gamma+beta*gamma))|a> + sqrt(beta*gamma/(1-gamma+beta*gamma))|b'>.
// Undefined (domain error) for gamma=1, beta=0.
PureState reduced_committed(double gamma, double beta);

struct MeasureOutcome {
  bool found;
  PureState post_state;
};

// Projective measurement onto |b>. found=true with probability |amp_b|^2;
// the post state is the renormalized projection (onto |b> when found,
// onto span{|a>,|b'>} otherwise). Consumes exactly one uniform draw.
MeasureOutcome measure_b(const PureState& state, RandomStream& rng);

// Bob's verification on a post-no-find state (amp_b must be 0): projects
// onto the reduced committed state and returns true ("mismatch detected",
// Bob wins) with probability 1 - |<psi_c'|post>|^2. One uniform draw.
bool verify_mismatch(const PureState& post_state, double gamma, double beta,
                     RandomStream& rng);

// Transcript serialization: six decimal floats (re/im per amplitude in
// basis order) with 17 significant digits, comma separated.
std::string to_transcript(const PureState& state);
PureState from_transcript(std::string_view text);

}  // namespace qgamble
