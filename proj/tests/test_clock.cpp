#include <doctest.h>

#include <random>

#include "prccsl/clock.hpp"
#include "prccsl/error.hpp"
#include "support.hpp"

using prccsl::Trace;

namespace {

Trace single(std::size_t n, std::initializer_list<std::size_t> dates) {
  Trace t{"c"};
  for (std::size_t i = 0; i < n; ++i) {
    bool hit = false;
    for (auto d : dates) hit = hit || d == i;
    if (hit) {
      t.append_step_named({"c"});
    } else {
      t.append_step_named({});
    }
  }
  return t;
}

}  // namespace

TEST_CASE("trace construction") {
  Trace t{"a", "b"};
  CHECK(t.clock_count() == 2);
  CHECK(t.length() == 0);

  CHECK_THROWS_WITH_AS((Trace{"a", "a"}), "duplicate clock a", prccsl::DeclarationError);
  CHECK_THROWS_AS(prccsl::ClockId("1x"), prccsl::DeclarationError);

  Trace empty(std::vector<prccsl::ClockId>{});
  CHECK(empty.clock_count() == 0);
  empty.pad_to(3);
  CHECK(empty.length() == 3);
}

TEST_CASE("tick_at reads back ticks") {
  const Trace t = single(6, {1, 5});
  CHECK(t.tick_at("c", 1));
  CHECK_FALSE(t.tick_at("c", 2));
  CHECK_THROWS_AS(t.tick_at("zz", 0), prccsl::LookupError);
  CHECK_THROWS_AS(t.tick_at("c", 6), prccsl::LookupError);
}

TEST_CASE("history counts ticks strictly before the step") {
  const Trace t = single(6, {0, 2, 4});
  CHECK(t.history_at("c", 0) == 0);
  CHECK(t.history_at("c", 3) == 2);
  CHECK(t.history_at("c", 5) == 3);
  CHECK(t.history_at("c", 6) == 3);
  CHECK_THROWS_AS(t.history_at("c", 7), prccsl::LookupError);
}

TEST_CASE("repeated index in one step ticks once") {
  Trace t{"a"};
  const std::vector<Trace::ClockIndex> twice{0, 0};
  t.append_step(twice);
  CHECK(t.history_at("a", 1) == 1);
  CHECK(t.dates("a") == std::vector<std::size_t>{0});
}

TEST_CASE("history tracker") {
  prccsl::HistoryTracker h({"a", "b"});
  h.advance({"a"});
  CHECK(h.step() == 1);
  CHECK(h.history("a") == 1);
  CHECK(h.history("b") == 0);
  h.advance({});
  CHECK(h.history("a") == 1);
  CHECK(h.history("b") == 0);
  CHECK_THROWS_AS(h.history("zz"), prccsl::LookupError);
}

TEST_CASE("property: tracker, history and dense view agree on random traces") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 200; ++round) {
    const auto c = testsupport::random_case(rng, 200, 4);
    const Trace& t = c.trace;
    prccsl::HistoryTracker tracker(t.clocks());
    for (std::size_t i = 0; i <= t.length(); ++i) {
      for (const auto& name : t.clocks()) {
        const auto h = t.history_at(name, i);
        REQUIRE(tracker.history(name) == h);
        REQUIRE(h == oracle::history(c.dates.at(name), i));
        if (i < t.length()) {
          const auto next = t.history_at(name, i + 1);
          REQUIRE(next >= h);
          REQUIRE(next - h == (t.tick_at(name, i) ? 1u : 0u));
        }
      }
      if (i < t.length()) tracker.advance(t.ticking_at(i));
    }
    for (const auto& name : t.clocks()) {
      REQUIRE(testsupport::dates_of(t.dense_ticks(name)) == t.dates(name));
    }
  }
}
