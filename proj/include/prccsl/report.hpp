#pragma once

// Verdict reports. JSON is the source of truth; the text form is rendered
// from the JSON document.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "prccsl/relation.hpp"

namespace prccsl {

inline constexpr const char* kToolName = "prccsl";
inline constexpr const char* kToolVersion = "1.0.0";

struct Report {
  std::string spec;
  /// Where the trace came from: {"file": path} or {"seed": s, ...}.
  nlohmann::json provenance = nlohmann::json::object();
  std::uint64_t steps = 0;
  std::optional<std::uint64_t> samples;
  std::optional<Rational> threshold_override;
  std::vector<Verdict> verdicts;
  double duration_ms = 0.0;
};

struct Summary {
  std::size_t valid = 0;
  std::size_t fail = 0;
  std::size_t vacuous = 0;
  std::size_t error = 0;
  std::size_t total() const { return valid + fail + vacuous + error; }
};

Summary summarize(const std::vector<Verdict>& verdicts);

/// 0 when every non-vacuous verdict is valid, 1 on any failure, 2 when a
/// relation could not be checked.
int exit_code(const std::vector<Verdict>& verdicts);

nlohmann::json verdict_json(const Verdict& v);
nlohmann::json report_json(const Report& report);
std::string render_text(const nlohmann::json& report);

}  // namespace prccsl
