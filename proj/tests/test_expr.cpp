#include <doctest.h>

#include <random>

#include "prccsl/error.hpp"
#include "prccsl/expr.hpp"
#include "support.hpp"

using prccsl::ClockExpr;
using prccsl::TickSeq;

namespace {

TickSeq seq(std::size_t n, std::initializer_list<std::size_t> dates) {
  TickSeq t(n, false);
  for (auto d : dates) t[d] = true;
  return t;
}

oracle::Dates dates(const TickSeq& t) { return testsupport::dates_of(t); }

}  // namespace

TEST_CASE("periodicon") {
  const TickSeq ms(150, true);
  CHECK(dates(prccsl::periodic_on(ms, 50)) == oracle::Dates{0, 50, 100});
  CHECK(prccsl::periodic_on(seq(8, {1, 3, 4}), 1) == seq(8, {1, 3, 4}));
  CHECK(prccsl::periodic_on(seq(8, {}), 3) == seq(8, {}));
  CHECK(prccsl::periodic_on(TickSeq{}, 3).empty());
  CHECK(dates(prccsl::periodic_on(seq(10, {0, 2, 3, 5, 7, 9}), 2)) == oracle::Dates{0, 3, 7});
  CHECK_THROWS_AS(ClockExpr::periodic_on(ClockExpr::ref("a"), 0), prccsl::ValidationError);
}

TEST_CASE("delayfor") {
  const TickSeq ms(10, true);
  CHECK(dates(prccsl::delay_for(seq(10, {0}), 3, ms)) == oracle::Dates{3});
  CHECK(dates(prccsl::delay_for(seq(10, {0, 1}), 2, ms)) == oracle::Dates{2, 3});
  CHECK(dates(prccsl::delay_for(seq(10, {}), 2, ms)).empty());
  // Pending elements at the end produce nothing.
  CHECK(dates(prccsl::delay_for(seq(10, {8}), 3, ms)).empty());
  // A ref tick at the base step is not counted.
  CHECK(dates(prccsl::delay_for(seq(10, {2}), 1, seq(10, {2, 6}))) == oracle::Dates{6});
  CHECK_THROWS_AS(ClockExpr::delay_for(ClockExpr::ref("a"), 0, ClockExpr::ref("ms")), prccsl::ValidationError);
}

TEST_CASE("delayfor elements that fall due together tick once") {
  prccsl::DelayForClock d(2);
  CHECK_FALSE(d.step(true, false));
  CHECK_FALSE(d.step(true, false));
  CHECK(d.pending() == std::vector<std::uint64_t>{2, 2});
  CHECK_FALSE(d.step(false, true));
  CHECK(d.step(false, true));
  CHECK(d.pending().empty());
}

TEST_CASE("inf and sup") {
  CHECK(dates(prccsl::inf_clock(seq(6, {1, 2}), seq(6, {3, 4}))) == oracle::Dates{1, 2});
  CHECK(dates(prccsl::inf_clock(seq(6, {1, 5}), seq(6, {2, 3}))) == oracle::Dates{1, 3});
  CHECK(dates(prccsl::sup_clock(seq(6, {1, 2}), seq(6, {3, 4}))) == oracle::Dates{3, 4});
  CHECK(dates(prccsl::sup_clock(seq(6, {1, 5}), seq(6, {2, 3}))) == oracle::Dates{2, 5});
  const TickSeq a = seq(7, {0, 3, 6});
  CHECK(prccsl::inf_clock(a, a) == a);
  CHECK(prccsl::sup_clock(a, a) == a);
  CHECK_THROWS_AS(prccsl::inf_clock(seq(3, {}), seq(4, {})), prccsl::ValidationError);
  CHECK_THROWS_AS(prccsl::sup_clock(seq(3, {}), seq(4, {})), prccsl::ValidationError);
}

TEST_CASE("expression text and sharing") {
  const auto a = ClockExpr::ref("a");
  const auto e = ClockExpr::sup(ClockExpr::sup(a, ClockExpr::ref("b")), ClockExpr::delay_for(a, 3, ClockExpr::ref("ms")));
  CHECK(e.to_string() == "sup(sup(a, b), (a delayfor 3 on ms))");
  CHECK(e.referenced_clocks() == std::vector<std::string>{"a", "b", "ms"});
  CHECK(e == ClockExpr::sup(ClockExpr::sup(ClockExpr::ref("a"), ClockExpr::ref("b")),
                            ClockExpr::delay_for(ClockExpr::ref("a"), 3, ClockExpr::ref("ms"))));
  const auto copy = e;
  CHECK(copy.identity() == e.identity());
}

TEST_CASE("evaluator over a trace") {
  const auto c = testsupport::make_case({"a", "b", "c"}, 12, {{"a", {1, 4, 9}}, {"b", {2, 3, 10}}, {"c", {0, 5, 6, 11}}});
  // Ref is the clock itself.
  CHECK(dates(prccsl::eval_expr(ClockExpr::ref("b"), c.trace)) == oracle::Dates{2, 3, 10});
  // ms is synthesized when the trace does not declare it.
  CHECK(dates(prccsl::eval_expr(ClockExpr::periodic_on(ClockExpr::ref("ms"), 5), c.trace)) == oracle::Dates{0, 5, 10});
  const auto nested = ClockExpr::sup(ClockExpr::sup(ClockExpr::ref("a"), ClockExpr::ref("b")), ClockExpr::ref("c"));
  const auto ref = oracle::sup(oracle::sup(oracle::clock("a"), oracle::clock("b")), oracle::clock("c"));
  CHECK(dates(prccsl::eval_expr(nested, c.trace)) == oracle::expr(*ref, c.dates, c.n));
  CHECK(dates(prccsl::eval_expr(nested, c.trace)) == oracle::Dates{2, 5, 10});
  CHECK_THROWS_AS(prccsl::eval_expr(ClockExpr::ref("zz"), c.trace), prccsl::LookupError);
}

TEST_CASE("evaluator shares identical sub-expressions") {
  prccsl::ExprEvaluator ev({"a", "b"});
  const auto x = ev.add(ClockExpr::inf(ClockExpr::ref("a"), ClockExpr::ref("b")));
  const auto y = ev.add(ClockExpr::inf(ClockExpr::ref("a"), ClockExpr::ref("b")));
  CHECK(x == y);
  CHECK(ev.node_count() == 3);
}

TEST_CASE("property: operators match the date oracle and the history laws") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 300; ++round) {
    const auto c = testsupport::random_case(rng, 128, 3);
    const auto names = c.trace.clocks();
    const auto& n1 = names[std::uniform_int_distribution<std::size_t>(0, names.size() - 1)(rng)];
    const auto& n2 = names[std::uniform_int_distribution<std::size_t>(0, names.size() - 1)(rng)];
    const TickSeq t1 = c.trace.dense_ticks(n1);
    const TickSeq t2 = c.trace.dense_ticks(n2);
    const TickSeq inf = prccsl::inf_clock(t1, t2);
    const TickSeq sup = prccsl::sup_clock(t1, t2);
    std::size_t hi = 0, hs = 0, h1 = 0, h2 = 0;
    for (std::size_t i = 0; i < c.n; ++i) {
      REQUIRE(hi == std::max(h1, h2));
      REQUIRE(hs == std::min(h1, h2));
      hi += inf[i];
      hs += sup[i];
      h1 += t1[i];
      h2 += t2[i];
    }
    // Commutative.
    REQUIRE(prccsl::inf_clock(t2, t1) == inf);
    REQUIRE(prccsl::sup_clock(t2, t1) == sup);
    if (names.size() == 3) {
      const TickSeq t3 = c.trace.dense_ticks(names[2]);
      const TickSeq a = c.trace.dense_ticks(names[0]);
      const TickSeq b = c.trace.dense_ticks(names[1]);
      REQUIRE(prccsl::inf_clock(prccsl::inf_clock(a, b), t3) == prccsl::inf_clock(a, prccsl::inf_clock(b, t3)));
      REQUIRE(prccsl::sup_clock(prccsl::sup_clock(a, b), t3) == prccsl::sup_clock(a, prccsl::sup_clock(b, t3)));
    }
    // Derived ticks coincide with base (PeriodicOn) or ref (DelayFor).
    const auto p = std::uniform_int_distribution<std::uint64_t>(1, 6)(rng);
    const auto d = std::uniform_int_distribution<std::uint64_t>(1, 5)(rng);
    const TickSeq per = prccsl::periodic_on(t1, p);
    const TickSeq del = prccsl::delay_for(t1, d, t2);
    for (std::size_t i = 0; i < c.n; ++i) {
      REQUIRE((!per[i] || t1[i]));
      REQUIRE((!del[i] || t2[i]));
    }
  }
}

TEST_CASE("property: nested expressions match the date oracle") {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 400; ++round) {
    const auto c = testsupport::random_case(rng, 160, 3);
    const auto e = testsupport::random_expr(rng, c, 3);
    CAPTURE(e.lib.to_string());
    REQUIRE(dates(prccsl::eval_expr(e.lib, c.trace)) == oracle::expr(*e.ref, c.dates, c.n));
  }
}
