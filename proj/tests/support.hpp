#pragma once

// Random traces and expressions shared by the property tests and the
// acceptance runner.

#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "oracle.hpp"
#include "prccsl/clock.hpp"
#include "prccsl/expr.hpp"

namespace testsupport {

struct Case {
  std::size_t n = 0;
  std::map<std::string, oracle::Dates> dates;
  prccsl::Trace trace;
};

inline Case make_case(std::vector<std::string> names, std::size_t n,
                      const std::map<std::string, oracle::Dates>& dates) {
  Case c;
  c.n = n;
  c.dates = dates;
  std::vector<prccsl::ClockId> ids;
  for (const auto& name : names) ids.emplace_back(name);
  c.trace = prccsl::Trace(ids);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<prccsl::Trace::ClockIndex> ticking;
    for (std::size_t k = 0; k < names.size(); ++k) {
      const auto& d = dates.at(names[k]);
      for (auto x : d) {
        if (x == i) ticking.push_back(static_cast<prccsl::Trace::ClockIndex>(k));
      }
    }
    c.trace.append_step(ticking);
  }
  return c;
}

/// n in [0, max_n], 1..max_clocks clocks named c0.., each with its own density.
inline Case random_case(std::mt19937_64& rng, std::size_t max_n = 256, std::size_t max_clocks = 4) {
  const std::size_t n = std::uniform_int_distribution<std::size_t>(0, max_n)(rng);
  const std::size_t clocks = std::uniform_int_distribution<std::size_t>(1, max_clocks)(rng);
  std::vector<std::string> names;
  std::map<std::string, oracle::Dates> dates;
  for (std::size_t k = 0; k < clocks; ++k) {
    names.push_back("c" + std::to_string(k));
    const double density = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    auto& d = dates[names.back()];
    for (std::size_t i = 0; i < n; ++i) {
      if (std::uniform_real_distribution<double>(0.0, 1.0)(rng) < density) d.push_back(i);
    }
  }
  return make_case(names, n, dates);
}

struct ExprPair {
  prccsl::ClockExpr lib;
  oracle::ExprPtr ref;
};

inline ExprPair random_leaf(std::mt19937_64& rng, const Case& c) {
  const std::size_t pick = std::uniform_int_distribution<std::size_t>(0, c.dates.size())(rng);
  std::string name = "ms";
  if (pick < c.dates.size()) name = std::next(c.dates.begin(), static_cast<long>(pick))->first;
  return {prccsl::ClockExpr::ref(name), oracle::clock(name)};
}

inline ExprPair random_expr(std::mt19937_64& rng, const Case& c, int depth) {
  const int op = depth <= 0 ? 0 : std::uniform_int_distribution<int>(0, 4)(rng);
  switch (op) {
    case 1: {
      const auto p = std::uniform_int_distribution<std::uint64_t>(1, 5)(rng);
      auto base = random_expr(rng, c, depth - 1);
      return {prccsl::ClockExpr::periodic_on(base.lib, p), oracle::periodic(base.ref, p)};
    }
    case 2: {
      const auto d = std::uniform_int_distribution<std::uint64_t>(1, 4)(rng);
      auto base = random_expr(rng, c, depth - 1);
      auto ref = random_expr(rng, c, depth - 1);
      return {prccsl::ClockExpr::delay_for(base.lib, d, ref.lib), oracle::delay(base.ref, d, ref.ref)};
    }
    case 3: {
      auto a = random_expr(rng, c, depth - 1);
      auto b = random_expr(rng, c, depth - 1);
      return {prccsl::ClockExpr::inf(a.lib, b.lib), oracle::inf(a.ref, b.ref)};
    }
    case 4: {
      auto a = random_expr(rng, c, depth - 1);
      auto b = random_expr(rng, c, depth - 1);
      return {prccsl::ClockExpr::sup(a.lib, b.lib), oracle::sup(a.ref, b.ref)};
    }
    default:
      return random_leaf(rng, c);
  }
}

inline oracle::Dates dates_of(const std::vector<bool>& ticks) {
  oracle::Dates d;
  for (std::size_t i = 0; i < ticks.size(); ++i) {
    if (ticks[i]) d.push_back(i);
  }
  return d;
}

}  // namespace testsupport
