#include "prccsl/clock.hpp"

#include <algorithm>
#include <cctype>

#include "prccsl/error.hpp"

namespace prccsl {

bool is_identifier(std::string_view text) noexcept {
  if (text.empty()) return false;
  if (std::isdigit(static_cast<unsigned char>(text.front()))) return false;
  return std::all_of(text.begin(), text.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

ClockId::ClockId(std::string name) : name_(std::move(name)) {
  if (!is_identifier(name_)) {
    throw DeclarationError("invalid clock name '" + name_ + "'");
  }
}

Trace::Trace(const std::vector<ClockId>& clocks) {
  clocks_.reserve(clocks.size());
  for (const auto& c : clocks) {
    auto [it, inserted] = index_.emplace(c.name(), static_cast<ClockIndex>(clocks_.size()));
    if (!inserted) throw DeclarationError("duplicate clock " + c.name());
    clocks_.push_back(c.name());
  }
  dates_.resize(clocks_.size());
}

Trace::Trace(std::initializer_list<std::string_view> clocks)
    : Trace([&] {
        std::vector<ClockId> ids;
        for (auto name : clocks) ids.emplace_back(std::string(name));
        return ids;
      }()) {}

bool Trace::has_clock(std::string_view name) const noexcept {
  return index_.find(std::string(name)) != index_.end();
}

Trace::ClockIndex Trace::index_of(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) throw LookupError("undeclared clock " + std::string(name));
  return it->second;
}

void Trace::append_step(std::span<const ClockIndex> ticking) {
  std::vector<ClockIndex> row(ticking.begin(), ticking.end());
  std::sort(row.begin(), row.end());
  row.erase(std::unique(row.begin(), row.end()), row.end());
  const StepIndex i = steps_.size();
  for (ClockIndex c : row) {
    if (c >= clocks_.size()) throw LookupError("clock index out of range");
    dates_[c].push_back(i);
  }
  steps_.push_back(std::move(row));
}

void Trace::append_step_named(std::initializer_list<std::string_view> ticking) {
  std::vector<ClockIndex> row;
  for (auto name : ticking) row.push_back(index_of(name));
  append_step(row);
}

void Trace::pad_to(std::size_t n) {
  if (steps_.size() < n) steps_.resize(n);
}

std::span<const Trace::ClockIndex> Trace::ticking_at(StepIndex i) const {
  if (i >= steps_.size()) throw LookupError("step " + std::to_string(i) + " out of range");
  return steps_[i];
}

bool Trace::tick_at(std::string_view clock, StepIndex i) const {
  const auto& d = dates(clock);
  if (i >= steps_.size()) throw LookupError("step " + std::to_string(i) + " out of range");
  return std::binary_search(d.begin(), d.end(), i);
}

std::size_t Trace::history_at(std::string_view clock, StepIndex i) const {
  const auto& d = dates(clock);
  if (i > steps_.size()) throw LookupError("step " + std::to_string(i) + " out of range");
  return static_cast<std::size_t>(std::lower_bound(d.begin(), d.end(), i) - d.begin());
}

const std::vector<StepIndex>& Trace::dates(std::string_view clock) const {
  return dates_[index_of(clock)];
}

std::vector<bool> Trace::dense_ticks(std::string_view clock) const {
  std::vector<bool> out(steps_.size(), false);
  for (StepIndex i : dates(clock)) out[i] = true;
  return out;
}

HistoryTracker::HistoryTracker(std::vector<std::string> clocks)
    : clocks_(std::move(clocks)), counts_(clocks_.size(), 0), last_tick_(clocks_.size(), 0) {
  for (std::size_t c = 0; c < clocks_.size(); ++c) {
    if (!index_.emplace(clocks_[c], static_cast<Trace::ClockIndex>(c)).second) {
      throw DeclarationError("duplicate clock " + clocks_[c]);
    }
  }
}

std::size_t HistoryTracker::history(std::string_view clock) const {
  auto it = index_.find(std::string(clock));
  if (it == index_.end()) throw LookupError("undeclared clock " + std::string(clock));
  return counts_[it->second];
}

void HistoryTracker::advance(std::span<const Trace::ClockIndex> ticking) {
  for (auto c : ticking) {
    if (c >= counts_.size()) throw LookupError("clock index out of range");
  }
  // last_tick_ holds step+1 of the latest counted tick, so a clock listed
  // twice in one tick set still counts once.
  for (auto c : ticking) {
    if (last_tick_[c] == step_ + 1) continue;
    last_tick_[c] = step_ + 1;
    ++counts_[c];
  }
  ++step_;
}

void HistoryTracker::advance(std::initializer_list<std::string_view> ticking) {
  std::vector<Trace::ClockIndex> idx;
  for (auto name : ticking) {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) throw LookupError("undeclared clock " + std::string(name));
    idx.push_back(it->second);
  }
  advance(idx);
}

}  // namespace prccsl
