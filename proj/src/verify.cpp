#include "qgamble/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qgamble/equilibrium.hpp"
#include "qgamble/numfmt.hpp"
#include "qgamble/pure_state.hpp"
#include "qgamble/rng.hpp"

namespace qgamble {

OutcomeProbs pipeline_probs(const Strategy& strategy, const GameConfig& config) {
  const PureState after_split =
      split_b(prepare_alice(strategy.alpha), strategy.beta);
  const double p1 = prob_in_b(after_split);
  const double rest = std::norm(after_split.amp_a()) +
                      std::norm(after_split.amp_bprime());
  if (rest <= 0.0) return {1.0, 0.0, 0.0};  // no-find branch unreachable
  const double inv = 1.0 / std::sqrt(rest);
  const PureState collapsed(after_split.amp_a() * inv, 0.0,
                            after_split.amp_bprime() * inv);
  const PureState target = reduced_committed(config.gamma, strategy.beta);
  const double match = std::norm(overlap(target, collapsed));
  const double p3 = (1.0 - p1) * match;
  return {p1, 1.0 - p1 - p3, p3};
}

namespace {

struct Suite {
  std::ostringstream out;
  bool pass = true;

  void line(const std::string& name, bool ok, const std::string& detail) {
    out << (ok ? "PASS" : "FAIL") << ' ' << name << ": " << detail << '\n';
    if (!ok) pass = false;
  }
};

double rand_in(RandomStream& rng, double lo, double hi) {
  return lo + (hi - lo) * rng.next_unit();
}

void check_sign_regression(Suite& s) {
  const GameConfig anchor_config(8.0 / 9.0, 1.0);
  const Strategy anchor(1.0 / 3.0, 0.25);
  const double authoritative = gb_surface_value(anchor, anchor_config);
  const double printed_special = gb_as_printed_special(anchor.alpha, anchor.beta);
  const double printed_general = gb_as_printed_general(anchor, anchor_config);
  const bool ok = std::abs(authoritative) <= 1e-12 &&
                  std::abs(printed_special - 8.0 / 9.0) <= 1e-12 &&
                  std::abs(printed_general - 8.0 / 9.0) <= 1e-12 &&
                  std::abs(authoritative - printed_special) > 0.5;
  s.line("gb-sign-regression", ok,
         "authoritative=" + fmt_double(authoritative) +
             " as_printed=" + fmt_double(printed_special));
}

std::string tuple_of(const Strategy& strat, const GameConfig& config) {
  return " at (gamma=" + fmt_double(config.gamma) +
         ", r=" + fmt_double(config.r_gain) +
         ", alpha=" + fmt_double(strat.alpha) +
         ", beta=" + fmt_double(strat.beta) + ")";
}

void check_simplex(Suite& s, std::uint64_t seed) {
  RandomStream rng(seed ^ 0x51);
  double worst = 0.0;
  std::string where;
  for (int i = 0; i < 10000; ++i) {
    const Strategy strat(rng.next_unit(), rng.next_unit());
    const GameConfig config(rand_in(rng, 0.02, 0.98), rand_in(rng, 0.25, 5.0));
    const OutcomeProbs p = outcome_probs(strat, config);
    const double lo = std::min({p.p1, p.p2, p.p3});
    const double hi = std::max({p.p1, p.p2, p.p3});
    double bad = std::abs(p.p1 + p.p2 + p.p3 - 1.0);
    if (lo < 0.0 || hi > 1.0) bad = std::max(bad, 1.0);
    if (bad > worst) {
      worst = bad;
      where = tuple_of(strat, config);
    }
  }
  s.line("probability-simplex", worst <= 1e-12,
         "worst |sum-1| = " + fmt_double(worst) + where);
}

void check_pipeline_equivalence(Suite& s, std::uint64_t seed) {
  RandomStream rng(seed ^ 0x09);
  double worst = 0.0;
  std::string where;
  for (int i = 0; i < 1000; ++i) {
    const Strategy strat(rng.next_unit(), rng.next_unit());
    const GameConfig config(rand_in(rng, 0.05, 0.95), 1.0);
    const OutcomeProbs closed = outcome_probs(strat, config);
    const OutcomeProbs piped = pipeline_probs(strat, config);
    const double gap = std::max({std::abs(closed.p1 - piped.p1),
                                 std::abs(closed.p2 - piped.p2),
                                 std::abs(closed.p3 - piped.p3)});
    if (gap > worst) {
      worst = gap;
      where = tuple_of(strat, config);
    }
  }
  s.line("pipeline-equivalence", worst <= 1e-10,
         "worst component gap = " + fmt_double(worst) + where);
}

void check_p2_double_derivation(Suite& s, std::uint64_t seed) {
  RandomStream rng(seed ^ 0xB2);
  double worst = 0.0;
  std::string where;
  for (int i = 0; i < 2000; ++i) {
    const Strategy strat(rng.next_unit(), rng.next_unit());
    const GameConfig config(rand_in(rng, 0.05, 0.95), rand_in(rng, 0.25, 5.0));
    const OutcomeProbs p = outcome_probs(strat, config);
    const double gap = std::abs(p.p2 - p2_direct_form(strat, config));
    if (gap > worst) {
      worst = gap;
      where = tuple_of(strat, config);
    }
  }
  s.line("p2-double-derivation", worst <= 1e-10,
         "worst gap = " + fmt_double(worst) + where);
}

void check_config_suites(Suite& s, const VerifyOptions& options) {
  RandomStream rng(options.seed ^ 0xCF);
  double worst_roundtrip = 0.0;
  double worst_saddle = 0.0;
  double worst_cell_distance = 0.0;
  double worst_fixed_point = 0.0;
  double worst_stationarity = 0.0;
  std::string failing;
  for (int i = 0; i < options.configs; ++i) {
    const GameConfig config(rand_in(rng, 0.1, 0.95), rand_in(rng, 0.25, 5.0));
    const NashPoint np = nash_point(config);

    const double g_back = gamma_for(np.delta, config.r_gain);
    worst_roundtrip = std::max(worst_roundtrip, std::abs(g_back - config.gamma));

    const SaddleReport report = verify_saddle(config, options.grid_n, 1e-9);
    worst_saddle = std::max({worst_saddle, report.worst_alpha_violation,
                             report.worst_beta_violation});
    const double cell = 1.0 / (options.grid_n - 1);
    const double dist = std::max(std::abs(report.grid_alpha - np.alpha_star),
                                 std::abs(report.grid_beta - np.beta_star));
    worst_cell_distance = std::max(worst_cell_distance, dist / cell);
    if (!report.pass && failing.empty()) {
      failing = " first failing config gamma=" + fmt_double(config.gamma) +
                " r=" + fmt_double(config.r_gain);
    }

    const BestResponse br_beta = best_response_beta(np.alpha_star, config);
    const BestResponse br_alpha = best_response_alpha(np.beta_star, config);
    worst_fixed_point = std::max({worst_fixed_point,
                                  std::abs(br_beta.arg - np.beta_star),
                                  std::abs(br_alpha.arg - np.alpha_star)});

    const Stationarity st = stationarity_check(config, 1e-5);
    if (st.applicable) {
      worst_stationarity = std::max(
          {worst_stationarity, std::abs(st.d_alpha), std::abs(st.d_beta)});
    }
  }
  s.line("gamma-delta-roundtrip", worst_roundtrip <= 1e-10,
         "worst |gamma - gamma_for(delta_of(gamma))| = " +
             fmt_double(worst_roundtrip));
  s.line("saddle-certificates", worst_saddle <= 1e-9,
         "worst guarantee violation = " + fmt_double(worst_saddle) + failing);
  s.line("grid-minimax-distance", worst_cell_distance <= 1.0,
         "worst distance = " + fmt_double(worst_cell_distance) + " cells");
  s.line("best-response-fixed-point", worst_fixed_point <= 1e-6,
         "worst |br - analytic| = " + fmt_double(worst_fixed_point));
  s.line("stationarity", worst_stationarity <= 1e-4,
         "worst |dG| = " + fmt_double(worst_stationarity));
}

}  // namespace

VerifyReport run_verification(const VerifyOptions& options) {
  if (options.configs < 1) {
    throw std::domain_error("verification needs at least one config");
  }
  if (options.grid_n < 11) {
    throw std::domain_error("verification grid must have at least 11 points");
  }
  Suite s;
  check_sign_regression(s);
  check_simplex(s, options.seed);
  check_pipeline_equivalence(s, options.seed);
  check_p2_double_derivation(s, options.seed);
  check_config_suites(s, options);
  return {s.pass, s.out.str()};
}

}  // namespace qgamble
