#pragma once

// Logical clocks over a discrete time base of 1 ms per step.
//
// A trace records, for each step i in [0, n), which clocks tick at i
// (t_c(i) = 1). The history h_c(i) is the number of ticks of c at steps
// strictly before i, so h_c(0) = 0 and h_c(i+1) = h_c(i) + t_c(i).

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace prccsl {

using StepIndex = std::size_t;

/// Name of the universal clock, which ticks at every step.
inline constexpr std::string_view kUniversalClock = "ms";

/// Letters, digits and underscore; must not start with a digit.
bool is_identifier(std::string_view text) noexcept;

class ClockId {
 public:
  /// Throws DeclarationError if `name` is not an identifier.
  explicit ClockId(std::string name);

  const std::string& name() const noexcept { return name_; }

  friend bool operator==(const ClockId&, const ClockId&) = default;
  friend auto operator<=>(const ClockId&, const ClockId&) = default;

 private:
  std::string name_;
};

/// Step-indexed tick matrix over a fixed, ordered clock alphabet.
///
/// Storage is sparse (per step, the sorted indices of ticking clocks) with
/// a per-clock date list kept alongside it; `dense_ticks` materializes the
/// boolean view.
class Trace {
 public:
  using ClockIndex = std::uint32_t;

  Trace() = default;
  /// Throws DeclarationError("duplicate clock <name>") on repeated names.
  explicit Trace(const std::vector<ClockId>& clocks);
  Trace(std::initializer_list<std::string_view> clocks);

  const std::vector<std::string>& clocks() const noexcept { return clocks_; }
  std::size_t clock_count() const noexcept { return clocks_.size(); }
  std::size_t length() const noexcept { return steps_.size(); }

  bool has_clock(std::string_view name) const noexcept;
  /// Throws LookupError for an undeclared clock.
  ClockIndex index_of(std::string_view name) const;

  /// Appends one step. Indices may be unsorted or repeated; each listed
  /// clock ticks once at the new step.
  void append_step(std::span<const ClockIndex> ticking);
  void append_step_named(std::initializer_list<std::string_view> ticking);
  /// Appends steps until length() == n, with no ticks.
  void pad_to(std::size_t n);

  /// Sorted indices of the clocks ticking at step i.
  std::span<const ClockIndex> ticking_at(StepIndex i) const;

  /// t_c(i). Throws LookupError if c is undeclared or i >= length().
  bool tick_at(std::string_view clock, StepIndex i) const;
  /// h_c(i), defined for i in [0, length()].
  std::size_t history_at(std::string_view clock, StepIndex i) const;

  /// Sorted steps at which the clock ticks.
  const std::vector<StepIndex>& dates(std::string_view clock) const;
  const std::vector<StepIndex>& dates(ClockIndex clock) const { return dates_[clock]; }

  std::vector<bool> dense_ticks(std::string_view clock) const;

  friend bool operator==(const Trace& a, const Trace& b) {
    return a.clocks_ == b.clocks_ && a.steps_ == b.steps_;
  }

 private:
  std::vector<std::string> clocks_;
  std::unordered_map<std::string, ClockIndex> index_;
  std::vector<std::vector<ClockIndex>> steps_;
  std::vector<std::vector<StepIndex>> dates_;
};

/// Streaming form of the history recurrence. Single owner, no locking.
class HistoryTracker {
 public:
  explicit HistoryTracker(std::vector<std::string> clocks);

  StepIndex step() const noexcept { return step_; }
  /// h_c at the current step. Throws LookupError for unknown clocks.
  std::size_t history(std::string_view clock) const;
  std::size_t history(Trace::ClockIndex clock) const { return counts_.at(clock); }

  /// Consumes the tick set of the current step and moves to the next one.
  void advance(std::span<const Trace::ClockIndex> ticking);
  void advance(std::initializer_list<std::string_view> ticking);

 private:
  std::vector<std::string> clocks_;
  std::unordered_map<std::string, Trace::ClockIndex> index_;
  std::vector<std::size_t> counts_;
  std::vector<StepIndex> last_tick_;
  StepIndex step_ = 0;
};

}  // namespace prccsl
