#include "qgamble/pure_state.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qgamble/numfmt.hpp"

namespace qgamble {

namespace {

constexpr double kRenormLimit = 1e-9;  // beyond this the caller has a bug

double clamp01(double p) { return p < 0.0 ? 0.0 : (p > 1.0 ? 1.0 : p); }

void check_unit_interval(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw std::domain_error(std::string(name) + " must be in [0,1], got " +
                            fmt_double(value));
  }
}

void check_gamma(double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw std::domain_error("gamma must be in (0,1], got " +
                            fmt_double(gamma));
  }
}

}  // namespace

PureState::PureState(Amplitude a, Amplitude b, Amplitude bprime)
    : a_(a), b_(b), bp_(bprime) {
  const double n2 = std::norm(a_) + std::norm(b_) + std::norm(bp_);
  const double drift = std::abs(n2 - 1.0);
  if (drift > kRenormLimit) {
    throw std::domain_error("state not normalized: |amp|^2 = " +
                            fmt_double(n2));
  }
  // Skip the division when already normalized to the last few ulps, so
  // rebuilding a state from its own amplitudes is an exact no-op.
  if (drift > 1e-14) {
    const double inv = 1.0 / std::sqrt(n2);
    a_ *= inv;
    b_ *= inv;
    bp_ *= inv;
  }
}

double PureState::norm2() const {
  return std::norm(a_) + std::norm(b_) + std::norm(bp_);
}

PureState prepare_alice(double alpha) {
  check_unit_interval(alpha, "alpha");
  return PureState(std::sqrt(1.0 - alpha), std::sqrt(alpha), 0.0);
}

PureState committed_state(double gamma) {
  check_gamma(gamma);
  return PureState(std::sqrt(1.0 - gamma), std::sqrt(gamma), 0.0);
}

PureState split_b(const PureState& state, double beta) {
  check_unit_interval(beta, "beta");
  return PureState(state.amp_a(), std::sqrt(1.0 - beta) * state.amp_b(),
                   state.amp_bprime() + std::sqrt(beta) * state.amp_b());
}

double prob_in_b(const PureState& state) {
  return clamp01(std::norm(state.amp_b()));
}

Amplitude overlap(const PureState& s1, const PureState& s2) {
  return std::conj(s1.amp_a()) * s2.amp_a() +
         std::conj(s1.amp_b()) * s2.amp_b() +
         std::conj(s1.amp_bprime()) * s2.amp_bprime();
}

PureState reduced_committed(double gamma, double beta) {
  check_gamma(gamma);
  check_unit_interval(beta, "beta");
  const double denom = 1.0 - gamma + beta * gamma;
  if (denom <= 0.0) {
    throw std::domain_error(
        "reduced committed state undefined at gamma=" + fmt_double(gamma) +
        ", beta=" + fmt_double(beta));
  }
  return PureState(std::sqrt((1.0 - gamma) / denom), 0.0,
                   std::sqrt(beta * gamma / denom));
}

MeasureOutcome measure_b(const PureState& state, RandomStream& rng) {
  const double p = prob_in_b(state);
  const bool found = rng.next_unit() < p;
  if (found) {
    const double mag = std::abs(state.amp_b());
    if (mag == 0.0) throw std::logic_error("found with zero b amplitude");
    const Amplitude b =
        std::abs(mag - 1.0) <= 1e-14 ? state.amp_b() : state.amp_b() / mag;
    return {true, PureState(0.0, b, 0.0)};
  }
  const double rest = std::norm(state.amp_a()) + std::norm(state.amp_bprime());
  if (rest <= 0.0) throw std::logic_error("no-find collapse of a |b> state");
  // Re-collapsing an already collapsed state must be an exact no-op.
  const double inv =
      std::abs(rest - 1.0) <= 1e-14 ? 1.0 : 1.0 / std::sqrt(rest);
  return {false, PureState(state.amp_a() * inv, 0.0,
                           state.amp_bprime() * inv)};
}

bool verify_mismatch(const PureState& post_state, double gamma, double beta,
                     RandomStream& rng) {
  if (std::norm(post_state.amp_b()) > 1e-12) {
    throw std::domain_error(
        "verify_mismatch requires a post-no-find state (amp_b = 0)");
  }
  const PureState target = reduced_committed(gamma, beta);
  const double p_match = clamp01(std::norm(overlap(target, post_state)));
  return rng.next_unit() < 1.0 - p_match;
}

std::string to_transcript(const PureState& state) {
  const Amplitude amps[3] = {state.amp_a(), state.amp_b(),
                             state.amp_bprime()};
  std::string out;
  for (const auto& amp : amps) {
    if (!out.empty()) out += ',';
    out += fmt_double17(amp.real());
    out += ',';
    out += fmt_double17(amp.imag());
  }
  return out;
}

PureState from_transcript(std::string_view text) {
  std::vector<double> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    parts.push_back(parse_double_strict(text.substr(start, end - start)));
    start = end + 1;
    if (end == text.size()) break;
  }
  if (parts.size() != 6) {
    throw std::invalid_argument("state transcript needs 6 fields, got " +
                                std::to_string(parts.size()));
  }
  return PureState({parts[0], parts[1]}, {parts[2], parts[3]},
                   {parts[4], parts[5]});
}

}  // namespace qgamble
