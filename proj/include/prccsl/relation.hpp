#pragma once

// Probabilistic clock relations and their streaming monitors.
//
// Every monitor keeps two counters: k, the observations (steps at which the
// relation is exercised) and m, the observations that satisfy it. The
// relation holds with threshold p when m / k >= p. The comparison is done
// in integer arithmetic; floating point only shows up in reports.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "prccsl/clock.hpp"
#include "prccsl/expr.hpp"
#include "prccsl/rational.hpp"

namespace prccsl {

enum class RelationKind { kSubclock, kCoincidence, kExclusion, kCausality, kPrecedence };

/// "Subclock", "Coincidence", ...
std::string_view kind_name(RelationKind kind) noexcept;
/// Surface keyword: subclockof, coincides, excludes, causes, precedes.
std::string_view kind_keyword(RelationKind kind) noexcept;
/// Case-insensitive keyword lookup.
std::optional<RelationKind> kind_from_keyword(std::string_view word) noexcept;

struct RelationSpec {
  std::string id;
  RelationKind kind;
  ClockExpr left;
  ClockExpr right;
  Rational threshold;
  /// Observation count N at which the verdict freezes; empty means the
  /// verdict is taken at the end of the trace.
  std::optional<std::uint64_t> sample_size;
};

enum class MonitorPhase { kRunning, kValid, kFail };

struct MonitorState {
  std::uint64_t k = 0;
  std::uint64_t m = 0;
  MonitorPhase phase = MonitorPhase::kRunning;
  StepIndex step = 0;
  Rational threshold;
  std::optional<std::uint64_t> sample_size;
};

MonitorState start_monitor(const RelationSpec& spec);

// One observation step each. Histories are the pre-tick values at the
// current step. A state that already left kRunning is returned unchanged.
MonitorState observe_subclock(MonitorState s, bool t1, bool t2);
MonitorState observe_coincidence(MonitorState s, bool t1, bool t2);
MonitorState observe_exclusion(MonitorState s, bool t1, bool t2);
MonitorState observe_causality(MonitorState s, bool t1, std::uint64_t h1, bool t2, std::uint64_t h2);
MonitorState observe_precedence(MonitorState s, bool t1, std::uint64_t h1, bool t2, std::uint64_t h2);
MonitorState observe(RelationKind kind, MonitorState s, bool t1, std::uint64_t h1, bool t2,
                     std::uint64_t h2);

enum class Outcome { kValid, kFail, kVacuous, kError };

std::string_view outcome_name(Outcome outcome) noexcept;

struct Verdict {
  std::string id;
  RelationKind kind = RelationKind::kSubclock;
  std::uint64_t k = 0;
  std::uint64_t m = 0;
  Rational threshold;
  Outcome outcome = Outcome::kVacuous;
  /// Warning for vacuous verdicts, error text for kError.
  std::string message;

  /// m / k, or 0 when k == 0.
  double probability() const noexcept;
  /// "m/k" unreduced, as counted.
  std::string fraction() const { return std::to_string(m) + "/" + std::to_string(k); }
};

/// Decides the hypothesis test. Pure; calling it twice gives the same answer.
Verdict finalize(const MonitorState& state, const RelationSpec& spec);

/// Single forward pass over a clock alphabet: evaluates every relation's
/// operand expressions on one shared DAG and feeds the monitors.
///
/// Relations that reference undeclared clocks or carry an invalid
/// threshold produce a kError verdict; the others are unaffected.
class RelationChecker {
 public:
  RelationChecker(std::vector<std::string> alphabet, std::vector<RelationSpec> specs);

  void step(std::span<const Trace::ClockIndex> ticking);
  StepIndex steps() const noexcept { return steps_; }

  std::vector<Verdict> verdicts() const;

 private:
  struct Slot {
    RelationSpec spec;
    std::string error;
    ExprEvaluator::NodeId left = 0;
    ExprEvaluator::NodeId right = 0;
    std::uint64_t h1 = 0;
    std::uint64_t h2 = 0;
    MonitorState state;
  };

  ExprEvaluator evaluator_;
  std::vector<Slot> slots_;
  StepIndex steps_ = 0;
};

std::vector<Verdict> check_relations(const std::vector<RelationSpec>& specs, const Trace& trace);

}  // namespace prccsl
