#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "qgamble/payoff.hpp"
#include "qgamble/verify.hpp"
#include "test_util.hpp"

using namespace qgamble;
using qgamble::testutil::near;
using qgamble::testutil::within_sigma;

namespace {

const GameConfig kFairConfig(8.0 / 9.0, 1.0);
const Strategy kFairPoint(1.0 / 3.0, 0.25);

}  // namespace

TEST_SUITE_BEGIN("payoff");

TEST_CASE("fairness point splits the outcomes as (1/4, 1/4, 1/2)") {
  const OutcomeProbs p = outcome_probs(kFairPoint, kFairConfig);
  CHECK(near(p.p1, 0.25, 1e-12));
  CHECK(near(p.p2, 0.25, 1e-12));
  CHECK(near(p.p3, 0.50, 1e-12));

  // Independent route through the state engine.
  const OutcomeProbs piped = pipeline_probs(kFairPoint, kFairConfig);
  CHECK(near(p.p1, piped.p1, 1e-12));
  CHECK(near(p.p2, piped.p2, 1e-12));
  CHECK(near(p.p3, piped.p3, 1e-12));
}

TEST_CASE("an empty box B can only lose by verification") {
  const GameConfig config(0.5, 1.0);
  const OutcomeProbs p = outcome_probs(Strategy(0.0, 0.5), config);
  CHECK(p.p1 == 0.0);
  CHECK(near(p.p3, (1.0 - 0.5) / (1.0 - 0.5 + 0.5 * 0.5), 1e-12));  // 2/3
  const OutcomeProbs q = outcome_probs(Strategy(0.0, 0.0), config);
  CHECK(near(q.p3, 1.0, 1e-12));
}

TEST_CASE("the committed preparation can never be convicted") {
  for (double gamma : {0.2, 0.5, 8.0 / 9.0, 0.99}) {
    for (double beta : {0.0, 0.1, 0.5, 1.0}) {
      const OutcomeProbs p =
          outcome_probs(Strategy(gamma, beta), GameConfig(gamma, 1.0));
      CHECK(std::abs(p.p2) <= 1e-12);
    }
  }
}

TEST_CASE("the gamma=1, beta=0 corner is rejected unless alpha=1") {
  const GameConfig config(1.0, 2.0);
  const OutcomeProbs p = outcome_probs(Strategy(1.0, 0.0), config);
  CHECK(p.p1 == 1.0);
  CHECK(p.p2 == 0.0);
  CHECK(p.p3 == 0.0);
  CHECK_THROWS_AS(outcome_probs(Strategy(0.5, 0.0), config),
                  std::domain_error);
}

TEST_CASE("gains follow R(p1+p2) - p3 and the game is zero-sum") {
  CHECK(near(gain_bob({0.25, 0.25, 0.5}, kFairConfig), 0.0, 1e-15));
  const GameConfig r3(0.5, 3.0);
  CHECK(gain_bob({1.0, 0.0, 0.0}, r3) == 3.0);
  CHECK(gain_bob({0.0, 0.0, 1.0}, r3) == -1.0);
  CHECK(gain_alice({1.0, 0.0, 0.0}, GameConfig(0.5, 2.0)) == -2.0);

  RandomStream rng(5);
  for (int i = 0; i < 200; ++i) {
    const Strategy s(rng.next_unit(), rng.next_unit());
    const GameConfig c(0.05 + 0.9 * rng.next_unit(), 0.25 + 5.0 * rng.next_unit());
    const OutcomeProbs p = outcome_probs(s, c);
    CHECK(gain_alice(p, c) == -gain_bob(p, c));
  }
}

TEST_CASE("surface values hit the hand-derived anchors") {
  CHECK(near(gb_surface_value(kFairPoint, kFairConfig), 0.0, 1e-12));

  // Committed Alice against a never-splitting Bob: p1=gamma, p3=1-gamma.
  for (double gamma : {0.3, 0.7, 0.9}) {
    for (double r : {0.5, 1.0, 2.0}) {
      const double gb =
          gb_surface_value(Strategy(gamma, 0.0), GameConfig(gamma, r));
      CHECK(near(gb, r * gamma - (1.0 - gamma), 1e-12));
    }
  }

  // (alpha=1/4, beta=1/3; gamma=3/4, R=2): p3 evaluates to 2/3 by hand, so
  // G_b = 2 - 3*(2/3) = 0.
  const OutcomeProbs p =
      outcome_probs(Strategy(0.25, 1.0 / 3.0), GameConfig(0.75, 2.0));
  CHECK(near(p.p3, 2.0 / 3.0, 1e-12));
  CHECK(near(gb_surface_value(Strategy(0.25, 1.0 / 3.0), GameConfig(0.75, 2.0)),
             0.0, 1e-12));
}

TEST_CASE("as-printed closed forms reproduce the sign discrepancy") {
  const double authoritative = gb_surface_value(kFairPoint, kFairConfig);
  const double special = gb_as_printed_special(1.0 / 3.0, 0.25);
  const double general = gb_as_printed_general(kFairPoint, kFairConfig);
  CHECK(near(authoritative, 0.0, 1e-12));
  CHECK(near(special, 8.0 / 9.0, 1e-12));
  CHECK(near(general, 8.0 / 9.0, 1e-12));
  CHECK(std::abs(special - authoritative) > 0.5);
}

TEST_CASE("special case gamma=8/9, R=1 matches the main-text quantities") {
  // With R=1, G_b = 2(P1+P2) - 1 where P1 and P2 are the published
  // special-case forms; those forms are consistent with the general ones.
  for (int i = 0; i < 50; ++i) {
    for (int j = 0; j < 50; ++j) {
      const double a = i / 49.0;
      const double b = j / 49.0;
      const double p1 = a * (1.0 - b);
      const double p2 =
          b * (8.0 - 7.0 * a - 4.0 * std::sqrt(2.0 * a * (1.0 - a))) /
          (1.0 + 8.0 * b);
      const double expected = 2.0 * (p1 + p2) - 1.0;
      CHECK(near(gb_surface_value(Strategy(a, b), kFairConfig), expected,
                 1e-12));
    }
  }
}

TEST_CASE("outcome probabilities stay on the simplex") {
  RandomStream rng(17);
  for (int i = 0; i < 10000; ++i) {
    const Strategy s(rng.next_unit(), rng.next_unit());
    const GameConfig c(0.02 + 0.96 * rng.next_unit(),
                       0.25 + 5.0 * rng.next_unit());
    const OutcomeProbs p = outcome_probs(s, c);
    CHECK(p.p1 >= 0.0);
    CHECK(p.p2 >= 0.0);
    CHECK(p.p3 >= 0.0);
    CHECK(p.p1 <= 1.0);
    CHECK(p.p2 <= 1.0);
    CHECK(p.p3 <= 1.0);
    CHECK(near(p.p1 + p.p2 + p.p3, 1.0, 1e-12));
  }
}

TEST_CASE("closed forms agree with the state-engine pipeline") {
  RandomStream rng(19);
  for (int i = 0; i < 1000; ++i) {
    const Strategy s(rng.next_unit(), rng.next_unit());
    const GameConfig c(0.05 + 0.9 * rng.next_unit(), 1.0);
    const OutcomeProbs closed = outcome_probs(s, c);
    const OutcomeProbs piped = pipeline_probs(s, c);
    CHECK(near(closed.p1, piped.p1, 1e-10));
    CHECK(near(closed.p2, piped.p2, 1e-10));
    CHECK(near(closed.p3, piped.p3, 1e-10));
  }
}

TEST_CASE("both p2 derivations agree") {
  RandomStream rng(23);
  for (int i = 0; i < 10000; ++i) {
    const Strategy s(rng.next_unit(), rng.next_unit());
    const GameConfig c(0.05 + 0.9 * rng.next_unit(),
                       0.25 + 5.0 * rng.next_unit());
    const OutcomeProbs p = outcome_probs(s, c);
    CHECK(near(p.p2, p2_direct_form(s, c), 1e-10));
  }
}

TEST_CASE("the surface is strictly increasing in the stake") {
  RandomStream rng(29);
  for (int i = 0; i < 200; ++i) {
    const Strategy s(rng.next_unit(), rng.next_unit());
    const double gamma = 0.05 + 0.9 * rng.next_unit();
    const OutcomeProbs p = outcome_probs(s, GameConfig(gamma, 1.0));
    if (p.p3 >= 1.0) continue;
    double prev = gb_surface_value(s, GameConfig(gamma, 0.25));
    for (double r : {0.5, 1.0, 2.0, 4.0}) {
      const double cur = gb_surface_value(s, GameConfig(gamma, r));
      CHECK(cur > prev);
      prev = cur;
    }
  }
}

TEST_CASE("categorical sampling follows the outcome distribution") {
  RandomStream rng(31);
  for (int i = 0; i < 200; ++i) {
    CHECK(sample_outcome(Strategy(1.0, 0.0), kFairConfig, rng) ==
          RoundOutcome::FoundInB);
  }
  // Honest-committed Alice never loses to a mismatch.
  for (int i = 0; i < 100000; ++i) {
    CHECK(sample_outcome(Strategy(8.0 / 9.0, 0.4), kFairConfig, rng) !=
          RoundOutcome::VerifiedMismatch);
  }
}

TEST_CASE("sampled frequencies converge at the equilibrium") {
  const McSummary s = monte_carlo(kFairPoint, kFairConfig, 1000000, 77);
  const double n = static_cast<double>(s.n);
  CHECK(within_sigma(static_cast<double>(s.n_found) / n, 0.25, n, 5.0));
  CHECK(within_sigma(static_cast<double>(s.n_mismatch) / n, 0.25, n, 5.0));
  CHECK(within_sigma(static_cast<double>(s.n_match) / n, 0.50, n, 5.0));
  CHECK(std::abs(s.mean) <= 4.0 * s.std_err);
}

TEST_CASE("monte carlo is exact and deterministic in the corners") {
  const GameConfig config(0.5, 2.5);
  const McSummary s = monte_carlo(Strategy(1.0, 0.0), config, 5000, 3);
  CHECK(s.mean == 2.5);
  CHECK(s.std_err == 0.0);
  CHECK(s.n_found == 5000);

  const McSummary a = monte_carlo(kFairPoint, kFairConfig, 100000, 9);
  const McSummary b = monte_carlo(kFairPoint, kFairConfig, 100000, 9);
  CHECK(a.mean == b.mean);
  CHECK(a.std_err == b.std_err);
  CHECK(a.n_found == b.n_found);

  const MeanStdErr g = monte_carlo_gain(kFairPoint, kFairConfig, 100000, 9);
  CHECK(g.mean == a.mean);
  CHECK(g.std_err == a.std_err);

  CHECK_THROWS_AS(monte_carlo(kFairPoint, kFairConfig, 0, 1),
                  std::domain_error);
}

TEST_CASE("round outcome names round-trip") {
  for (RoundOutcome o :
       {RoundOutcome::FoundInB, RoundOutcome::VerifiedMismatch,
        RoundOutcome::VerifiedMatch}) {
    CHECK(round_outcome_from_name(round_outcome_name(o)) == o);
  }
  CHECK_THROWS_AS(round_outcome_from_name("nonsense"), std::invalid_argument);
}

TEST_CASE("config and strategy domains are validated") {
  CHECK_THROWS_AS(GameConfig(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(GameConfig(1.2, 1.0), std::domain_error);
  CHECK_THROWS_AS(GameConfig(0.5, 0.0), std::domain_error);
  CHECK_THROWS_AS(Strategy(-0.1, 0.5), std::domain_error);
  CHECK_THROWS_AS(Strategy(0.5, 1.1), std::domain_error);
}

TEST_SUITE_END();
