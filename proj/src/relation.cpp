#include "prccsl/relation.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "prccsl/error.hpp"

namespace prccsl {

namespace {

struct KindInfo {
  RelationKind kind;
  std::string_view name;
  std::string_view keyword;
};

constexpr std::array<KindInfo, 5> kKinds{{
    {RelationKind::kSubclock, "Subclock", "subclockof"},
    {RelationKind::kCoincidence, "Coincidence", "coincides"},
    {RelationKind::kExclusion, "Exclusion", "excludes"},
    {RelationKind::kCausality, "Causality", "causes"},
    {RelationKind::kPrecedence, "Precedence", "precedes"},
}};

const KindInfo& info(RelationKind kind) {
  return kKinds[static_cast<std::size_t>(kind)];
}

MonitorState record(MonitorState s, bool observed, bool success) {
  if (observed) {
    ++s.k;
    if (success) ++s.m;
  }
  ++s.step;
  if (s.sample_size && s.k == *s.sample_size && observed) {
    s.phase = ratio_at_least(s.m, s.k, s.threshold) ? MonitorPhase::kValid : MonitorPhase::kFail;
  }
  return s;
}

}  // namespace

std::string_view kind_name(RelationKind kind) noexcept { return info(kind).name; }
std::string_view kind_keyword(RelationKind kind) noexcept { return info(kind).keyword; }

std::optional<RelationKind> kind_from_keyword(std::string_view word) noexcept {
  for (const auto& k : kKinds) {
    if (k.keyword.size() != word.size()) continue;
    bool same = true;
    for (std::size_t i = 0; i < word.size() && same; ++i) {
      same = std::tolower(static_cast<unsigned char>(word[i])) == k.keyword[i];
    }
    if (same) return k.kind;
  }
  return std::nullopt;
}

MonitorState start_monitor(const RelationSpec& spec) {
  MonitorState s;
  s.threshold = spec.threshold;
  s.sample_size = spec.sample_size;
  return s;
}

MonitorState observe_subclock(MonitorState s, bool t1, bool t2) {
  if (s.phase != MonitorPhase::kRunning) return s;
  return record(s, t1, t1 && t2);
}

MonitorState observe_coincidence(MonitorState s, bool t1, bool t2) {
  if (s.phase != MonitorPhase::kRunning) return s;
  return record(s, t1 || t2, t1 && t2);
}

MonitorState observe_exclusion(MonitorState s, bool t1, bool t2) {
  if (s.phase != MonitorPhase::kRunning) return s;
  return record(s, t1 || t2, t1 != t2);
}

MonitorState observe_causality(MonitorState s, bool t1, std::uint64_t h1, bool /*t2*/,
                               std::uint64_t h2) {
  if (s.phase != MonitorPhase::kRunning) return s;
  return record(s, t1, t1 && h1 >= h2);
}

MonitorState observe_precedence(MonitorState s, bool t1, std::uint64_t h1, bool t2,
                                std::uint64_t h2) {
  if (s.phase != MonitorPhase::kRunning) return s;
  return record(s, t1, t1 && h1 >= h2 && !(h1 == h2 && t2));
}

MonitorState observe(RelationKind kind, MonitorState s, bool t1, std::uint64_t h1, bool t2,
                     std::uint64_t h2) {
  switch (kind) {
    case RelationKind::kSubclock:
      return observe_subclock(s, t1, t2);
    case RelationKind::kCoincidence:
      return observe_coincidence(s, t1, t2);
    case RelationKind::kExclusion:
      return observe_exclusion(s, t1, t2);
    case RelationKind::kCausality:
      return observe_causality(s, t1, h1, t2, h2);
    case RelationKind::kPrecedence:
      return observe_precedence(s, t1, h1, t2, h2);
  }
  return s;
}

std::string_view outcome_name(Outcome outcome) noexcept {
  switch (outcome) {
    case Outcome::kValid:
      return "valid";
    case Outcome::kFail:
      return "fail";
    case Outcome::kVacuous:
      return "vacuous";
    case Outcome::kError:
      return "error";
  }
  return "?";
}

double Verdict::probability() const noexcept {
  return k == 0 ? 0.0 : static_cast<double>(m) / static_cast<double>(k);
}

Verdict finalize(const MonitorState& state, const RelationSpec& spec) {
  Verdict v;
  v.id = spec.id;
  v.kind = spec.kind;
  v.k = state.k;
  v.m = state.m;
  v.threshold = spec.threshold;
  switch (state.phase) {
    case MonitorPhase::kValid:
      v.outcome = Outcome::kValid;
      break;
    case MonitorPhase::kFail:
      v.outcome = Outcome::kFail;
      break;
    case MonitorPhase::kRunning:
      if (state.k == 0) {
        v.outcome = Outcome::kVacuous;
        v.message = "no observations (k = 0)";
      } else {
        v.outcome = ratio_at_least(state.m, state.k, spec.threshold) ? Outcome::kValid : Outcome::kFail;
        if (spec.sample_size && state.k < *spec.sample_size) {
          v.message = "trace ended after " + std::to_string(state.k) + " of " +
                      std::to_string(*spec.sample_size) + " samples";
        }
      }
      break;
  }
  return v;
}

RelationChecker::RelationChecker(std::vector<std::string> alphabet, std::vector<RelationSpec> specs)
    : evaluator_(alphabet) {
  const auto declared = [&](const std::string& name) {
    return name == kUniversalClock ||
           std::find(alphabet.begin(), alphabet.end(), name) != alphabet.end();
  };
  slots_.reserve(specs.size());
  for (auto& spec : specs) {
    Slot slot{std::move(spec), {}, 0, 0, 0, 0, {}};
    if (slot.spec.threshold.num() > slot.spec.threshold.den()) {
      slot.error = "threshold out of range";
    }
    for (const auto* side : {&slot.spec.left, &slot.spec.right}) {
      for (const auto& name : side->referenced_clocks()) {
        if (slot.error.empty() && !declared(name)) slot.error = "undeclared clock " + name;
      }
    }
    if (slot.spec.sample_size && *slot.spec.sample_size == 0 && slot.error.empty()) {
      slot.error = "sample size must be positive";
    }
    if (slot.error.empty()) {
      slot.left = evaluator_.add(slot.spec.left);
      slot.right = evaluator_.add(slot.spec.right);
      slot.state = start_monitor(slot.spec);
    }
    slots_.push_back(std::move(slot));
  }
}

void RelationChecker::step(std::span<const Trace::ClockIndex> ticking) {
  evaluator_.step(ticking);
  for (auto& slot : slots_) {
    if (!slot.error.empty()) continue;
    const bool t1 = evaluator_.value(slot.left);
    const bool t2 = evaluator_.value(slot.right);
    slot.state = observe(slot.spec.kind, slot.state, t1, slot.h1, t2, slot.h2);
    slot.h1 += t1;
    slot.h2 += t2;
  }
  ++steps_;
}

std::vector<Verdict> RelationChecker::verdicts() const {
  std::vector<Verdict> out;
  out.reserve(slots_.size());
  for (const auto& slot : slots_) {
    if (!slot.error.empty()) {
      Verdict v;
      v.id = slot.spec.id;
      v.kind = slot.spec.kind;
      v.threshold = slot.spec.threshold;
      v.outcome = Outcome::kError;
      v.message = slot.error;
      out.push_back(std::move(v));
    } else {
      out.push_back(finalize(slot.state, slot.spec));
    }
  }
  return out;
}

std::vector<Verdict> check_relations(const std::vector<RelationSpec>& specs, const Trace& trace) {
  RelationChecker checker(trace.clocks(), specs);
  for (StepIndex i = 0; i < trace.length(); ++i) checker.step(trace.ticking_at(i));
  return checker.verdicts();
}

}  // namespace prccsl
