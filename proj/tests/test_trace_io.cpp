#include <doctest.h>

#include <random>

#include "prccsl/trace_io.hpp"
#include "support.hpp"

namespace {

std::string error_of(const std::string& text) {
  try {
    prccsl::read_trace(text);
  } catch (const prccsl::TraceFormatError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("write") {
  prccsl::Trace t{"a", "b"};
  t.append_step_named({});
  t.append_step_named({"a"});
  CHECK(prccsl::write_trace(t) == "step,a,b\n0,0,0\n1,1,0\n");
  CHECK(prccsl::write_trace(prccsl::Trace{"a", "b"}) == "step,a,b\n");
}

TEST_CASE("read") {
  const auto t = prccsl::read_trace(std::string("step,a,b\n0,0,1\n1,1,1\n"));
  CHECK(t.clocks() == std::vector<std::string>{"a", "b"});
  CHECK(t.length() == 2);
  CHECK(t.dates("b") == std::vector<std::size_t>{0, 1});
  // Missing final newline and CRLF are tolerated.
  CHECK(prccsl::read_trace(std::string("step,a\r\n0,1\r\n1,0")).dates("a") == std::vector<std::size_t>{0});
}

TEST_CASE("read errors name the line") {
  CHECK(error_of("step,a,b\n0,0,0\n1,2,0\n") == "cell must be 0 or 1 (line 3)");
  CHECK(error_of("step,a\n1,0\n0,0\n") == "non-consecutive step index (line 2)");
  CHECK(error_of("step,a\n0,0\n2,0\n") == "non-consecutive step index (line 3)");
  CHECK(error_of("step,a,b\n0,0\n") == "ragged row: expected 3 fields, found 2 (line 2)");
  CHECK(error_of("time,a\n") == "malformed header: first field must be 'step' (line 1)");
  CHECK(error_of("step,a,a\n") == "malformed header: duplicate clock a (line 1)");
  CHECK(error_of("step,a b\n") == "malformed header: bad clock name 'a b' (line 1)");
  CHECK(error_of("") == "missing header (line 1)");
  CHECK(error_of("step,a\nx,0\n") == "bad step index 'x' (line 2)");
  CHECK_THROWS_AS(prccsl::read_trace_file("/nonexistent/trace.csv"), prccsl::Error);
}

TEST_CASE("property: round trip") {
  std::mt19937_64 rng(19);
  for (int round = 0; round < 200; ++round) {
    const auto c = testsupport::random_case(rng, 100, 4);
    const std::string text = prccsl::write_trace(c.trace);
    const auto back = prccsl::read_trace(text);
    REQUIRE(back == c.trace);
    REQUIRE(prccsl::write_trace(back) == text);
  }
}
