#include <cmath>
#include <complex>
#include <stdexcept>

#include <doctest.h>

#include "qgamble/pure_state.hpp"
#include "qgamble/rng.hpp"
#include "test_util.hpp"

using namespace qgamble;
using qgamble::testutil::near;
using qgamble::testutil::within_sigma;

namespace {

// Random normalized complex state, for property checks over the full space
// a cheating Alice could reach.
PureState random_state(RandomStream& rng) {
  const Amplitude a{rng.next_unit() - 0.5, rng.next_unit() - 0.5};
  const Amplitude b{rng.next_unit() - 0.5, rng.next_unit() - 0.5};
  const Amplitude bp{rng.next_unit() - 0.5, rng.next_unit() - 0.5};
  const double n = std::sqrt(std::norm(a) + std::norm(b) + std::norm(bp));
  return PureState(a / n, b / n, bp / n);
}

}  // namespace

TEST_SUITE_BEGIN("qstate");

TEST_CASE("preparation hits the closed-form amplitudes") {
  const PureState empty_b = prepare_alice(0.0);
  CHECK(empty_b.amp_a() == Amplitude{1.0, 0.0});
  CHECK(empty_b.amp_b() == Amplitude{0.0, 0.0});

  const PureState third = prepare_alice(1.0 / 3.0);
  CHECK(near(third.amp_a().real(), std::sqrt(2.0 / 3.0), 1e-15));
  CHECK(near(third.amp_b().real(), std::sqrt(1.0 / 3.0), 1e-15));
  CHECK(third.amp_bprime() == Amplitude{0.0, 0.0});

  const PureState all_b = prepare_alice(1.0);
  CHECK(all_b.amp_b() == Amplitude{1.0, 0.0});

  CHECK_THROWS_AS(prepare_alice(-0.1), std::domain_error);
  CHECK_THROWS_AS(prepare_alice(1.1), std::domain_error);
}

TEST_CASE("committed state uses the agreed weights") {
  const PureState c = committed_state(8.0 / 9.0);
  CHECK(near(c.amp_a().real(), 1.0 / 3.0, 1e-12));
  CHECK(near(c.amp_b().real(), 2.0 * std::sqrt(2.0) / 3.0, 1e-12));

  const PureState full = committed_state(1.0);
  CHECK(full.amp_b() == Amplitude{1.0, 0.0});

  const PureState threequarters = committed_state(0.75);
  CHECK(near(threequarters.amp_a().real(), 0.5, 1e-15));
  CHECK(near(threequarters.amp_b().real(), std::sqrt(3.0) / 2.0, 1e-15));

  CHECK_THROWS_AS(committed_state(0.0), std::domain_error);
  CHECK_THROWS_AS(committed_state(1.5), std::domain_error);
}

TEST_CASE("splitting at beta=0 is the identity") {
  RandomStream rng(7);
  for (int i = 0; i < 32; ++i) {
    const PureState s = random_state(rng);
    CHECK(split_b(s, 0.0) == s);
  }
}

TEST_CASE("splitting matches the post-split closed form") {
  const PureState s = split_b(prepare_alice(1.0 / 3.0), 0.25);
  CHECK(near(s.amp_a().real(), std::sqrt(2.0 / 3.0), 1e-15));
  CHECK(near(s.amp_b().real(), 0.5, 1e-15));
  CHECK(near(s.amp_bprime().real(), std::sqrt(1.0 / 12.0), 1e-15));

  const PureState full = split_b(prepare_alice(1.0), 1.0);
  CHECK(near(std::abs(full.amp_b()), 0.0, 1e-15));
  CHECK(near(full.amp_bprime().real(), 1.0, 1e-15));

  CHECK_THROWS_AS(split_b(s, -0.2), std::domain_error);
  CHECK_THROWS_AS(split_b(s, 1.2), std::domain_error);
}

TEST_CASE("projection probability follows alpha(1-beta)") {
  CHECK(near(prob_in_b(split_b(prepare_alice(1.0 / 3.0), 0.25)), 0.25, 1e-12));
  CHECK(prob_in_b(prepare_alice(0.0)) == 0.0);
  CHECK(near(prob_in_b(prepare_alice(0.7)), 0.7, 1e-12));

  // 50-point grid of (alpha, beta).
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 5; ++j) {
      const double alpha = i / 9.0;
      const double beta = j / 4.0;
      const double p = prob_in_b(split_b(prepare_alice(alpha), beta));
      CHECK(near(p, alpha * (1.0 - beta), 1e-12));
    }
  }
}

TEST_CASE("no-find collapse matches the collapsed closed form") {
  const PureState s = split_b(prepare_alice(1.0 / 3.0), 0.25);
  // Scan seeds for a no-find draw; the branch itself is deterministic.
  for (std::uint64_t seed = 0;; ++seed) {
    RandomStream rng(seed);
    const MeasureOutcome m = measure_b(s, rng);
    if (m.found) continue;
    CHECK(near(m.post_state.amp_a().real(), std::sqrt(8.0 / 9.0), 1e-12));
    CHECK(std::abs(m.post_state.amp_b()) == 0.0);
    CHECK(near(m.post_state.amp_bprime().real(), std::sqrt(1.0 / 9.0), 1e-12));
    break;
  }
}

TEST_CASE("a pure |b> state is always found and unchanged") {
  const PureState b(0.0, 1.0, 0.0);
  RandomStream rng(3);
  for (int i = 0; i < 100; ++i) {
    const MeasureOutcome m = measure_b(b, rng);
    CHECK(m.found);
    CHECK(m.post_state == b);
  }
}

TEST_CASE("found rate converges to the projection probability") {
  const PureState s = split_b(prepare_alice(1.0 / 3.0), 0.25);
  RandomStream rng(2024);
  const int n = 1000000;
  int found = 0;
  for (int i = 0; i < n; ++i) {
    if (measure_b(s, rng).found) ++found;
  }
  CHECK(within_sigma(static_cast<double>(found) / n, 0.25, n, 4.0));
}

TEST_CASE("measurement law holds for arbitrary states") {
  RandomStream gen(11);
  for (int trial = 0; trial < 5; ++trial) {
    const PureState s = random_state(gen);
    const double p = prob_in_b(s);
    RandomStream rng(100 + trial);
    const int n = 200000;
    int found = 0;
    for (int i = 0; i < n; ++i) {
      if (measure_b(s, rng).found) ++found;
    }
    const double sd = std::sqrt(std::max(p * (1.0 - p) / n, 1e-18));
    CHECK(std::abs(static_cast<double>(found) / n - p) <= 5.0 * sd);
  }
}

TEST_CASE("collapse is idempotent") {
  RandomStream gen(13);
  for (int trial = 0; trial < 50; ++trial) {
    const PureState s = random_state(gen);
    RandomStream rng(trial);
    const MeasureOutcome first = measure_b(s, rng);
    if (first.found) {
      for (int i = 0; i < 20; ++i) {
        const MeasureOutcome again = measure_b(first.post_state, rng);
        CHECK(again.found);
        CHECK(again.post_state == first.post_state);
      }
    } else {
      CHECK(prob_in_b(first.post_state) == 0.0);
      for (int i = 0; i < 20; ++i) {
        const MeasureOutcome again = measure_b(first.post_state, rng);
        CHECK(!again.found);
        CHECK(again.post_state == first.post_state);
      }
    }
  }
}

TEST_CASE("reduced committed state matches the closed form") {
  const PureState r = reduced_committed(8.0 / 9.0, 0.25);
  CHECK(near(r.amp_a().real(), std::sqrt(1.0 / 3.0), 1e-12));
  CHECK(near(r.amp_bprime().real(), std::sqrt(2.0 / 3.0), 1e-12));

  const PureState full = reduced_committed(8.0 / 9.0, 1.0);
  CHECK(near(full.amp_a().real(), 1.0 / 3.0, 1e-12));
  CHECK(near(full.amp_bprime().real(), 2.0 * std::sqrt(2.0) / 3.0, 1e-12));

  // Full split just moves the committed b amplitude to b'.
  for (double gamma : {0.3, 0.6, 0.95, 1.0}) {
    const PureState moved = reduced_committed(gamma, 1.0);
    const PureState committed = committed_state(gamma);
    CHECK(near(moved.amp_a().real(), committed.amp_a().real(), 1e-12));
    CHECK(near(moved.amp_bprime().real(), committed.amp_b().real(), 1e-12));
  }

  CHECK_THROWS_AS(reduced_committed(1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(reduced_committed(0.0, 0.5), std::domain_error);
}

TEST_CASE("overlap is the conjugate-linear inner product") {
  RandomStream gen(17);
  for (int i = 0; i < 20; ++i) {
    const PureState s = random_state(gen);
    CHECK(near(std::abs(overlap(s, s) - Amplitude{1.0, 0.0}), 0.0, 1e-12));
  }
  CHECK(overlap(PureState(1.0, 0.0, 0.0), PureState(0.0, 1.0, 0.0)) ==
        Amplitude{0.0, 0.0});

  // Hand-evaluated overlap of the collapsed and reduced committed states at
  // alpha=1/3, beta=1/4, gamma=8/9: the two-component dot product
  // sqrt(8/9)sqrt(1/3) + sqrt(1/9)sqrt(2/3) = sqrt(2/3).
  const double expected = std::sqrt(8.0 / 9.0) * std::sqrt(1.0 / 3.0) +
                          std::sqrt(1.0 / 9.0) * std::sqrt(2.0 / 3.0);
  CHECK(near(expected, std::sqrt(2.0 / 3.0), 1e-15));
  const PureState collapsed(std::sqrt(8.0 / 9.0), 0.0, std::sqrt(1.0 / 9.0));
  const PureState target = reduced_committed(8.0 / 9.0, 0.25);
  CHECK(near(overlap(target, collapsed).real(), expected, 1e-12));
}

TEST_CASE("verification never convicts the committed state") {
  RandomStream rng(23);
  for (double gamma : {0.3, 8.0 / 9.0, 0.99}) {
    for (double beta : {0.1, 0.25, 1.0}) {
      const PureState honest = reduced_committed(gamma, beta);
      for (int i = 0; i < 300; ++i) {
        CHECK(!verify_mismatch(honest, gamma, beta, rng));
      }
    }
  }
}

TEST_CASE("verification always convicts an orthogonal state") {
  // |b'> is orthogonal to reduced_committed(gamma, 0) = |a>.
  const PureState orthogonal(0.0, 0.0, 1.0);
  RandomStream rng(29);
  for (int i = 0; i < 300; ++i) {
    CHECK(verify_mismatch(orthogonal, 0.5, 0.0, rng));
  }
}

TEST_CASE("mismatch rate at the fairness point is one third") {
  // Conditional on no-find at alpha=1/3, beta=1/4, gamma=8/9 the mismatch
  // probability is 1 - 2/3 (equivalently p2/(1-p1)).
  const PureState collapsed(std::sqrt(8.0 / 9.0), 0.0, std::sqrt(1.0 / 9.0));
  RandomStream rng(31);
  const int n = 100000;
  int hits = 0;
  for (int i = 0; i < n; ++i) {
    if (verify_mismatch(collapsed, 8.0 / 9.0, 0.25, rng)) ++hits;
  }
  CHECK(within_sigma(static_cast<double>(hits) / n, 1.0 / 3.0, n, 5.0));
}

TEST_CASE("verification rejects states still holding b amplitude") {
  RandomStream rng(37);
  CHECK_THROWS_AS(
      verify_mismatch(prepare_alice(0.5), 0.5, 0.5, rng), std::domain_error);
}

TEST_CASE("verification probability is phase invariant") {
  RandomStream gen(41);
  for (int i = 0; i < 200; ++i) {
    const PureState base = random_state(gen);
    const double rest =
        std::sqrt(std::norm(base.amp_a()) + std::norm(base.amp_bprime()));
    const PureState post(base.amp_a() / rest, 0.0,
                         base.amp_bprime() / rest);
    const double phi = 6.28318530717958648 * gen.next_unit();
    const Amplitude phase{std::cos(phi), std::sin(phi)};
    const PureState rotated(post.amp_a() * phase, 0.0,
                            post.amp_bprime() * phase);
    const PureState target = reduced_committed(0.7, 0.4);
    const double p = std::norm(overlap(target, post));
    const double p_rot = std::norm(overlap(target, rotated));
    CHECK(near(p, p_rot, 1e-12));
    // Same draws, same verdicts.
    RandomStream r1(i), r2(i);
    CHECK(verify_mismatch(post, 0.7, 0.4, r1) ==
          verify_mismatch(rotated, 0.7, 0.4, r2));
  }
}

TEST_CASE("every operation returns a normalized state") {
  RandomStream gen(43);
  for (int i = 0; i < 500; ++i) {
    const double alpha = gen.next_unit();
    const double beta = gen.next_unit();
    const double gamma = 0.02 + 0.98 * gen.next_unit();
    CHECK(near(prepare_alice(alpha).norm2(), 1.0, 1e-12));
    CHECK(near(committed_state(gamma).norm2(), 1.0, 1e-12));
    CHECK(near(split_b(prepare_alice(alpha), beta).norm2(), 1.0, 1e-12));
    CHECK(near(reduced_committed(gamma, beta).norm2(), 1.0, 1e-12));
    RandomStream rng(i);
    const MeasureOutcome m =
        measure_b(split_b(prepare_alice(alpha), beta), rng);
    CHECK(near(m.post_state.norm2(), 1.0, 1e-12));
  }
}

TEST_CASE("construction renormalizes small drift and rejects junk") {
  const double n = 1.0 + 5e-10;
  const PureState drifted(std::sqrt(0.5 * n), std::sqrt(0.5 * n), 0.0);
  CHECK(near(drifted.norm2(), 1.0, 1e-12));
  CHECK_THROWS_AS(PureState(1.0, 1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(PureState(0.5, 0.0, 0.0), std::domain_error);
}

TEST_CASE("transcripts round-trip exactly") {
  RandomStream gen(47);
  for (int i = 0; i < 100; ++i) {
    const PureState s = random_state(gen);
    CHECK(from_transcript(to_transcript(s)) == s);
  }
  CHECK_THROWS_AS(from_transcript("1,2,3"), std::invalid_argument);
  CHECK_THROWS_AS(from_transcript("a,b,c,d,e,f"), std::invalid_argument);
}

TEST_CASE("random streams are deterministic and splittable") {
  RandomStream a(99), b(99);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  CHECK(a.cursor() == 100);

  // Sequential consumption equals random access.
  RandomStream seq(5);
  for (std::uint64_t k = 0; k < 50; ++k) {
    CHECK(seq.next_unit() == RandomStream::unit_at(5, k));
  }

  // Substream rule: stream i is seeded with master_seed XOR i.
  RandomStream master(12);
  RandomStream sub = master.substream(3);
  CHECK(sub.seed() == (12ull ^ 3ull));
  CHECK(sub.next_u64() == RandomStream(15).next_u64());
  CHECK(sub.next_u64() != RandomStream(12).next_u64());
}

TEST_SUITE_END();
