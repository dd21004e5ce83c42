#include "prccsl/expr.hpp"

#include <algorithm>
#include <functional>

#include "prccsl/error.hpp"

namespace prccsl {

struct ClockExpr::Node {
  ExprKind kind;
  std::string clock;
  std::uint64_t amount = 0;
  std::vector<ClockExpr> operands;
};

ClockExpr ClockExpr::ref(std::string clock) {
  if (!is_identifier(clock)) throw ValidationError("invalid clock name '" + clock + "'");
  return ClockExpr(std::make_shared<const Node>(Node{ExprKind::kRef, std::move(clock), 0, {}}));
}

ClockExpr ClockExpr::periodic_on(ClockExpr base, std::uint64_t period) {
  if (period == 0) throw ValidationError("period must be at least 1");
  return ClockExpr(
      std::make_shared<const Node>(Node{ExprKind::kPeriodicOn, {}, period, {std::move(base)}}));
}

ClockExpr ClockExpr::delay_for(ClockExpr base, std::uint64_t delay, ClockExpr on) {
  if (delay == 0) throw ValidationError("delay must be at least 1");
  return ClockExpr(std::make_shared<const Node>(
      Node{ExprKind::kDelayFor, {}, delay, {std::move(base), std::move(on)}}));
}

ClockExpr ClockExpr::inf(ClockExpr left, ClockExpr right) {
  return ClockExpr(std::make_shared<const Node>(
      Node{ExprKind::kInf, {}, 0, {std::move(left), std::move(right)}}));
}

ClockExpr ClockExpr::sup(ClockExpr left, ClockExpr right) {
  return ClockExpr(std::make_shared<const Node>(
      Node{ExprKind::kSup, {}, 0, {std::move(left), std::move(right)}}));
}

ExprKind ClockExpr::kind() const { return node_->kind; }
const std::string& ClockExpr::clock() const { return node_->clock; }
std::uint64_t ClockExpr::amount() const { return node_->amount; }

const ClockExpr& ClockExpr::first() const {
  if (node_->operands.empty()) throw ValidationError("expression has no first operand");
  return node_->operands[0];
}

const ClockExpr& ClockExpr::second() const {
  if (node_->operands.size() < 2) throw ValidationError("expression has no second operand");
  return node_->operands[1];
}

std::string ClockExpr::to_string() const {
  switch (kind()) {
    case ExprKind::kRef:
      return clock();
    case ExprKind::kPeriodicOn:
      return "(periodicon " + first().to_string() + " period " + std::to_string(amount()) + ")";
    case ExprKind::kDelayFor:
      return "(" + first().to_string() + " delayfor " + std::to_string(amount()) + " on " +
             second().to_string() + ")";
    case ExprKind::kInf:
      return "inf(" + first().to_string() + ", " + second().to_string() + ")";
    case ExprKind::kSup:
      return "sup(" + first().to_string() + ", " + second().to_string() + ")";
  }
  return {};
}

std::vector<std::string> ClockExpr::referenced_clocks() const {
  std::vector<std::string> out;
  std::function<void(const ClockExpr&)> walk = [&](const ClockExpr& e) {
    switch (e.kind()) {
      case ExprKind::kRef:
        out.push_back(e.clock());
        return;
      case ExprKind::kPeriodicOn:
        walk(e.first());
        return;
      default:
        walk(e.first());
        walk(e.second());
    }
  };
  walk(*this);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool operator==(const ClockExpr& a, const ClockExpr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.amount() != b.amount()) return false;
  switch (a.kind()) {
    case ExprKind::kRef:
      return a.clock() == b.clock();
    case ExprKind::kPeriodicOn:
      return a.first() == b.first();
    default:
      return a.first() == b.first() && a.second() == b.second();
  }
}

PeriodicOnClock::PeriodicOnClock(std::uint64_t period) : period_(period) {
  if (period == 0) throw ValidationError("period must be at least 1");
}

bool PeriodicOnClock::step(bool base) {
  if (!base) return false;
  const bool fire = base_history_ % period_ == 0;
  ++base_history_;
  return fire;
}

DelayForClock::DelayForClock(std::uint64_t delay) : delay_(delay) {
  if (delay == 0) throw ValidationError("delay must be at least 1");
}

bool DelayForClock::step(bool base, bool ref) {
  bool fire = false;
  if (ref) {
    ++ref_seen_;
    // Elements enqueued at the same ref count come due together; the
    // derived clock can only tick once per step.
    while (!due_.empty() && due_.front() <= ref_seen_) {
      due_.pop_front();
      fire = true;
    }
  }
  // Enqueue after the decrement so a coincident ref tick is not counted.
  if (base) due_.push_back(ref_seen_ + delay_);
  return fire;
}

std::vector<std::uint64_t> DelayForClock::pending() const {
  std::vector<std::uint64_t> out;
  out.reserve(due_.size());
  for (auto d : due_) out.push_back(d - ref_seen_);
  return out;
}

bool InfClock::step(bool t1, bool t2) {
  const bool fire = (t1 && h1_ >= h2_) || (t2 && h2_ >= h1_);
  h1_ += t1;
  h2_ += t2;
  return fire;
}

bool SupClock::step(bool t1, bool t2) {
  const bool fire = (t1 && h1_ < h2_) || (t2 && h2_ < h1_) || (t1 && t2 && h1_ == h2_);
  h1_ += t1;
  h2_ += t2;
  return fire;
}

TickSeq periodic_on(const TickSeq& base, std::uint64_t period) {
  PeriodicOnClock clk(period);
  TickSeq out(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) out[i] = clk.step(base[i]);
  return out;
}

TickSeq delay_for(const TickSeq& base, std::uint64_t delay, const TickSeq& ref) {
  if (base.size() != ref.size()) throw ValidationError("tick sequences differ in length");
  DelayForClock clk(delay);
  TickSeq out(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) out[i] = clk.step(base[i], ref[i]);
  return out;
}

TickSeq inf_clock(const TickSeq& c1, const TickSeq& c2) {
  if (c1.size() != c2.size()) throw ValidationError("tick sequences differ in length");
  InfClock clk;
  TickSeq out(c1.size());
  for (std::size_t i = 0; i < c1.size(); ++i) out[i] = clk.step(c1[i], c2[i]);
  return out;
}

TickSeq sup_clock(const TickSeq& c1, const TickSeq& c2) {
  if (c1.size() != c2.size()) throw ValidationError("tick sequences differ in length");
  SupClock clk;
  TickSeq out(c1.size());
  for (std::size_t i = 0; i < c1.size(); ++i) out[i] = clk.step(c1[i], c2[i]);
  return out;
}

ExprEvaluator::ExprEvaluator(std::vector<std::string> alphabet)
    : alphabet_(std::move(alphabet)), inputs_(alphabet_.size(), 0) {
  for (std::size_t c = 0; c < alphabet_.size(); ++c) {
    if (!index_.emplace(alphabet_[c], static_cast<Trace::ClockIndex>(c)).second) {
      throw DeclarationError("duplicate clock " + alphabet_[c]);
    }
  }
}

ExprEvaluator::NodeId ExprEvaluator::add(const ClockExpr& expr) {
  if (started_) throw Error("expressions must be added before the first step");
  const std::string key = expr.to_string();
  if (auto it = by_text_.find(key); it != by_text_.end()) return it->second;

  Node node = RefNode{-1};
  switch (expr.kind()) {
    case ExprKind::kRef: {
      auto it = index_.find(expr.clock());
      if (it != index_.end()) {
        node = RefNode{static_cast<std::ptrdiff_t>(it->second)};
      } else if (expr.clock() != kUniversalClock) {
        throw LookupError("undeclared clock " + expr.clock());
      }
      break;
    }
    case ExprKind::kPeriodicOn:
      node = PeriodicNode{add(expr.first()), PeriodicOnClock(expr.amount())};
      break;
    case ExprKind::kDelayFor: {
      const NodeId base = add(expr.first());
      node = DelayNode{base, add(expr.second()), DelayForClock(expr.amount())};
      break;
    }
    case ExprKind::kInf: {
      const NodeId left = add(expr.first());
      node = InfNode{left, add(expr.second()), {}};
      break;
    }
    case ExprKind::kSup: {
      const NodeId left = add(expr.first());
      node = SupNode{left, add(expr.second()), {}};
      break;
    }
  }
  nodes_.push_back(std::move(node));
  values_.push_back(0);
  const NodeId id = nodes_.size() - 1;
  by_text_.emplace(key, id);
  return id;
}

void ExprEvaluator::step(std::span<const Trace::ClockIndex> ticking) {
  started_ = true;
  std::fill(inputs_.begin(), inputs_.end(), 0);
  for (auto c : ticking) {
    if (c >= inputs_.size()) throw LookupError("clock index out of range");
    inputs_[c] = 1;
  }
  // Children always precede parents in nodes_.
  for (std::size_t id = 0; id < nodes_.size(); ++id) {
    values_[id] = std::visit(
        [&](auto& n) -> char {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, RefNode>) {
            return n.clock < 0 ? 1 : inputs_[static_cast<std::size_t>(n.clock)];
          } else if constexpr (std::is_same_v<T, PeriodicNode>) {
            return n.state.step(values_[n.base] != 0);
          } else if constexpr (std::is_same_v<T, DelayNode>) {
            return n.state.step(values_[n.base] != 0, values_[n.ref] != 0);
          } else {
            return n.state.step(values_[n.left] != 0, values_[n.right] != 0);
          }
        },
        nodes_[id]);
  }
}

TickSeq eval_expr(const ClockExpr& expr, const Trace& trace) {
  ExprEvaluator ev(trace.clocks());
  const auto root = ev.add(expr);
  TickSeq out(trace.length());
  for (StepIndex i = 0; i < trace.length(); ++i) {
    ev.step(trace.ticking_at(i));
    out[i] = ev.value(root);
  }
  return out;
}

}  // namespace prccsl
