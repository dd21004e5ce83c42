#pragma once

// CCSL clock expressions: PeriodicOn, DelayFor, Infimum and Supremum.
//
// Expressions are immutable DAG nodes shared by pointer. Each operator has
// a small streaming state machine that consumes one step of its operand
// ticks and reports whether the derived clock ticks at that step.

#include <cstdint>
#include <deque>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "prccsl/clock.hpp"

namespace prccsl {

enum class ExprKind { kRef, kPeriodicOn, kDelayFor, kInf, kSup };

class ClockExpr {
 public:
  static ClockExpr ref(std::string clock);
  /// Throws ValidationError if period == 0.
  static ClockExpr periodic_on(ClockExpr base, std::uint64_t period);
  /// Throws ValidationError if delay == 0.
  static ClockExpr delay_for(ClockExpr base, std::uint64_t delay, ClockExpr on);
  static ClockExpr inf(ClockExpr left, ClockExpr right);
  static ClockExpr sup(ClockExpr left, ClockExpr right);

  ExprKind kind() const;
  /// Clock name of a kRef node.
  const std::string& clock() const;
  /// Period (kPeriodicOn) or delay (kDelayFor).
  std::uint64_t amount() const;
  /// Base of PeriodicOn/DelayFor, left operand of Inf/Sup.
  const ClockExpr& first() const;
  /// Reference clock of DelayFor, right operand of Inf/Sup.
  const ClockExpr& second() const;

  /// Address of the shared node; equal for copies of the same expression.
  const void* identity() const noexcept { return node_.get(); }

  /// Fully parenthesized canonical text, e.g. "(a delayfor 3 on ms)".
  std::string to_string() const;

  /// Clock names referenced anywhere below this node, sorted and unique.
  std::vector<std::string> referenced_clocks() const;

  friend bool operator==(const ClockExpr& a, const ClockExpr& b);

 private:
  struct Node;
  explicit ClockExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

using TickSeq = std::vector<bool>;

/// res ticks on base ticks whose prior base history is a multiple of p,
/// i.e. on the 1st, (p+1)-th, (2p+1)-th ... tick of base.
class PeriodicOnClock {
 public:
  explicit PeriodicOnClock(std::uint64_t period);
  bool step(bool base);

 private:
  std::uint64_t period_;
  std::uint64_t base_history_ = 0;
};

/// Each base tick schedules one result tick at the d-th strictly later ref
/// tick. A ref tick coincident with the base tick does not count.
class DelayForClock {
 public:
  explicit DelayForClock(std::uint64_t delay);
  bool step(bool base, bool ref);

  /// Remaining ref ticks for every pending element, head first.
  std::vector<std::uint64_t> pending() const;

 private:
  std::uint64_t delay_;
  std::uint64_t ref_seen_ = 0;
  // Absolute ref-tick count at which each queued element fires.
  std::deque<std::uint64_t> due_;
};

/// Infimum: ticks with whichever operand is ahead or level in history.
class InfClock {
 public:
  bool step(bool t1, bool t2);

 private:
  std::uint64_t h1_ = 0;
  std::uint64_t h2_ = 0;
};

/// Supremum: ticks with whichever operand is behind, or both when level.
class SupClock {
 public:
  bool step(bool t1, bool t2);

 private:
  std::uint64_t h1_ = 0;
  std::uint64_t h2_ = 0;
};

TickSeq periodic_on(const TickSeq& base, std::uint64_t period);
TickSeq delay_for(const TickSeq& base, std::uint64_t delay, const TickSeq& ref);
/// Throws ValidationError on length mismatch.
TickSeq inf_clock(const TickSeq& c1, const TickSeq& c2);
TickSeq sup_clock(const TickSeq& c1, const TickSeq& c2);

/// Step-synchronous evaluator for a set of expressions over a clock
/// alphabet. Structurally identical sub-expressions share one node.
///
/// The universal clock `ms` resolves to an every-step tick when the
/// alphabet does not declare it.
class ExprEvaluator {
 public:
  using NodeId = std::size_t;

  explicit ExprEvaluator(std::vector<std::string> alphabet);

  /// Registers an expression; must be called before the first step().
  /// Throws LookupError if it references an undeclared clock.
  NodeId add(const ClockExpr& expr);

  std::size_t node_count() const noexcept { return nodes_.size(); }

  /// Advances every node by one step given the ticking alphabet indices.
  void step(std::span<const Trace::ClockIndex> ticking);

  /// Tick of the node at the most recent step.
  bool value(NodeId id) const { return values_[id] != 0; }

 private:
  struct RefNode {
    std::ptrdiff_t clock;  // -1 for the synthesized universal clock
  };
  struct PeriodicNode {
    NodeId base;
    PeriodicOnClock state;
  };
  struct DelayNode {
    NodeId base;
    NodeId ref;
    DelayForClock state;
  };
  struct InfNode {
    NodeId left;
    NodeId right;
    InfClock state;
  };
  struct SupNode {
    NodeId left;
    NodeId right;
    SupClock state;
  };
  using Node = std::variant<RefNode, PeriodicNode, DelayNode, InfNode, SupNode>;

  std::vector<std::string> alphabet_;
  std::unordered_map<std::string, Trace::ClockIndex> index_;
  std::unordered_map<std::string, NodeId> by_text_;
  std::vector<Node> nodes_;
  std::vector<char> values_;
  std::vector<char> inputs_;
  bool started_ = false;
};

/// Derived tick sequence of `expr` over the whole trace.
TickSeq eval_expr(const ClockExpr& expr, const Trace& trace);

}  // namespace prccsl
