#include "doctest.h"
#include "helpers.hpp"
#include "slat/acceleration.hpp"
#include "slat/coverability.hpp"
#include "slat/liveness.hpp"

using namespace slat;
using namespace slat::testing;

namespace {

const std::size_t kBudget = 60000;

// Independent re-check of a verdict's evidence.
void revalidate(const Net& n, const Marking& m0, const Verdict& v) {
  if (v.answer == Answer::No) {
    REQUIRE(v.path.has_value());
    Marking end = fire_sequence(n, m0, *v.path);
    CHECK(member_down(v.dead_set, end));
  } else if (v.answer == Answer::Yes) {
    REQUIRE(v.invariant.has_value());
    CHECK(member(*v.invariant, m0.values()));
    CHECK(is_post_closed(n, *v.invariant).closed);
    CHECK(empty_intersection_with(*v.invariant, v.dead_set));
    verify_certificates(n, m0, *v.invariant);
  }
}

}  // namespace

TEST_SUITE("liveness") {

TEST_CASE("liveness of the feedback net at the three reference markings") {
  Net n = feedback_net();
  std::vector<int> all{0, 1, 2};

  Verdict live = is_live_set(n, Marking({3, 1, 0}), all, kBudget);
  CHECK(live.answer == Answer::Yes);
  revalidate(n, Marking({3, 1, 0}), live);

  Verdict dead = is_live_set(n, Marking({4, 1, 0}), all, kBudget);
  CHECK(dead.answer == Answer::No);
  REQUIRE(dead.path.has_value());
  CHECK(*dead.path == FiringSequence{0, 0});
  CHECK(fire_sequence(n, Marking({4, 1, 0}), *dead.path) == Marking({0, 1, 0}));
  revalidate(n, Marking({4, 1, 0}), dead);

  Verdict dead2 = is_live_set(n, Marking({2, 1, 0}), all, kBudget);
  CHECK(dead2.answer == Answer::No);
  REQUIRE(dead2.path.has_value());
  CHECK(*dead2.path == FiringSequence{0});
  revalidate(n, Marking({2, 1, 0}), dead2);
}

TEST_CASE("liveness is not monotone in the marking") {
  // (3,1,0) live but the larger (4,1,0) is not: any upward-closure shortcut
  // would get this wrong.
  Net n = feedback_net();
  CHECK(Marking({4, 1, 0}).dominates(Marking({3, 1, 0})));
  CHECK(is_live_marked_net(n, Marking({3, 1, 0}), kBudget).answer == Answer::Yes);
  CHECK(is_live_marked_net(n, Marking({4, 1, 0}), kBudget).answer == Answer::No);
}

TEST_CASE("single-transition liveness") {
  Net n = feedback_net();
  CHECK(is_live_transition(n, Marking({3, 1, 0}), 0, kBudget).answer == Answer::Yes);

  Verdict v = is_live_transition(n, Marking({1, 0, 0}), 0, kBudget);
  CHECK(v.answer == Answer::No);
  REQUIRE(v.path.has_value());
  CHECK(v.path->empty());  // already inside the dead region

  CHECK(is_live_transition(n, Marking({0, 0, 1}), 2, kBudget).answer == Answer::Yes);
}

TEST_CASE("set liveness agrees with the conjunction over its members") {
  Net n = feedback_net();
  for_box(3, 2, [&](const std::vector<Value>& v) {
    Marking m(v);
    Verdict whole = is_live_set(n, m, {0, 1, 2}, kBudget);
    if (whole.answer == Answer::Unknown) return;
    bool all_yes = true;
    for (int t = 0; t < 3; ++t) {
      Verdict one = is_live_transition(n, m, t, kBudget);
      if (one.answer == Answer::Unknown) return;
      all_yes = all_yes && one.answer == Answer::Yes;
    }
    CHECK((whole.answer == Answer::Yes) == all_yes);
  });
}

TEST_CASE("bad transition sets are rejected") {
  Net n = feedback_net();
  CHECK_THROWS_AS(is_live_set(n, Marking({3, 1, 0}), {}, kBudget), input_error);
  CHECK_THROWS_AS(is_live_set(n, Marking({3, 1, 0}), {4}, kBudget), input_error);
}

TEST_CASE("weak liveness on the fixtures") {
  Net n = feedback_net();
  std::vector<int> all{0, 1, 2};

  Verdict no = is_weakly_live_set(n, Marking({4, 1, 0}), all, kBudget);
  CHECK(no.answer == Answer::No);
  REQUIRE(no.path.has_value());
  CHECK(fire_sequence(n, Marking({4, 1, 0}), *no.path) == Marking({0, 1, 0}));

  CHECK(is_weakly_live_set(n, Marking({3, 1, 0}), all, kBudget).answer == Answer::Yes);

  // weak liveness of a singleton is plain liveness of that transition
  for_box(3, 2, [&](const std::vector<Value>& v) {
    for (int t = 0; t < 3; ++t) {
      Verdict weak = is_weakly_live_set(n, Marking(v), {t}, kBudget);
      Verdict strong = is_live_transition(n, Marking(v), t, kBudget);
      CHECK(weak.answer == strong.answer);
    }
  });
}

TEST_CASE("weak liveness can hold where strong liveness fails") {
  // One transition keeps a self-loop alive while the other is dead from the
  // start: weakly live for the pair, not live for the pair.
  Net n("split", {"a", "b"}, {"loop", "burn"});
  n.set_input_weight(0, 0, 1);
  n.set_output_weight(0, 0, 1);  // loop: a -> a
  n.set_input_weight(1, 1, 1);   // burn: b -> (nothing)
  Marking m({1, 0});
  CHECK(is_weakly_live_set(n, m, {0, 1}, kBudget).answer == Answer::Yes);
  CHECK(is_live_set(n, m, {0, 1}, kBudget).answer == Answer::No);
}

TEST_CASE("scan over a small box matches the reference predicate") {
  Net n = feedback_net();
  auto verdicts = live_predicate_scan(n, {0, 1, 2}, 2, kBudget);
  CHECK(verdicts.size() == 27);
  int unknown = 0;
  for (const auto& [m, a] : verdicts) {
    if (a == Answer::Unknown) {
      ++unknown;
      continue;
    }
    CHECK((a == Answer::Yes) == feedback_live_predicate(m));
  }
  CHECK(unknown == 0);
}

TEST_CASE("scan with bound 0 answers no for the zero marking") {
  Net n = feedback_net();
  auto verdicts = live_predicate_scan(n, {0, 1, 2}, 0, kBudget);
  REQUIRE(verdicts.size() == 1);
  CHECK(verdicts.begin()->second == Answer::No);
  CHECK_THROWS_AS(live_predicate_scan(n, {}, 1, kBudget), input_error);
}

TEST_CASE("tiny budgets degrade to unknown, never to a wrong answer") {
  Net n = feedback_net();
  Verdict v = is_live_set(n, Marking({3, 1, 0}), {0, 1, 2}, 4);
  CHECK(v.answer == Answer::Unknown);
  CHECK(v.stats.budget_used <= 4 + kSliceNodes);
}

TEST_CASE("verdict stats are populated") {
  Net n = feedback_net();
  Verdict v = is_live_set(n, Marking({3, 1, 0}), {0, 1, 2}, kBudget);
  CHECK(v.stats.nodes > 0);
  CHECK(v.stats.steps > 0);
  CHECK(v.stats.budget_used > 0);
}

}  // TEST_SUITE
