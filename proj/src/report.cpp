#include "prccsl/report.hpp"

#include <cstdio>
#include <sstream>

namespace prccsl {

namespace {

double round15(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return std::strtod(buf, nullptr);
}

}  // namespace

Summary summarize(const std::vector<Verdict>& verdicts) {
  Summary s;
  for (const auto& v : verdicts) {
    switch (v.outcome) {
      case Outcome::kValid:
        ++s.valid;
        break;
      case Outcome::kFail:
        ++s.fail;
        break;
      case Outcome::kVacuous:
        ++s.vacuous;
        break;
      case Outcome::kError:
        ++s.error;
        break;
    }
  }
  return s;
}

int exit_code(const std::vector<Verdict>& verdicts) {
  const Summary s = summarize(verdicts);
  if (s.error > 0) return 2;
  return s.fail > 0 ? 1 : 0;
}

nlohmann::json verdict_json(const Verdict& v) {
  return {
      {"id", v.id},
      {"kind", std::string(kind_name(v.kind))},
      {"k", v.k},
      {"m", v.m},
      {"probability", round15(v.probability())},
      {"fraction", v.fraction()},
      {"threshold", v.threshold.to_double()},
      {"threshold_exact", v.threshold.to_decimal()},
      {"outcome", std::string(outcome_name(v.outcome))},
      {"message", v.message},
  };
}

nlohmann::json report_json(const Report& report) {
  nlohmann::json settings{{"steps", report.steps}};
  settings["samples"] = report.samples ? nlohmann::json(*report.samples) : nlohmann::json(nullptr);
  settings["threshold"] =
      report.threshold_override ? nlohmann::json(report.threshold_override->to_decimal()) : nlohmann::json(nullptr);

  nlohmann::json relations = nlohmann::json::array();
  for (const auto& v : report.verdicts) relations.push_back(verdict_json(v));

  const Summary s = summarize(report.verdicts);
  return {
      {"tool", kToolName},
      {"version", kToolVersion},
      {"spec", report.spec},
      {"trace", report.provenance},
      {"settings", settings},
      {"relations", relations},
      {"summary",
       {{"valid", s.valid}, {"fail", s.fail}, {"vacuous", s.vacuous}, {"error", s.error}, {"total", s.total()}}},
      {"duration_ms", round15(report.duration_ms)},
  };
}

std::string render_text(const nlohmann::json& report) {
  std::ostringstream out;
  out << report.at("tool").get<std::string>() << ' ' << report.at("version").get<std::string>() << '\n';
  out << "spec:  " << report.at("spec").get<std::string>() << '\n';
  out << "trace: " << report.at("trace").dump() << '\n';
  out << "steps: " << report.at("settings").at("steps").get<std::uint64_t>() << "\n\n";

  char line[256];
  std::snprintf(line, sizeof line, "%-10s %-12s %8s %8s %-17s %9s  %s\n", "id", "kind", "k", "m", "probability",
                "threshold", "outcome");
  out << line;
  for (const auto& r : report.at("relations")) {
    std::snprintf(line, sizeof line, "%-10s %-12s %8llu %8llu %-17.15g %9s  %s",
                  r.at("id").get<std::string>().c_str(), r.at("kind").get<std::string>().c_str(),
                  static_cast<unsigned long long>(r.at("k").get<std::uint64_t>()),
                  static_cast<unsigned long long>(r.at("m").get<std::uint64_t>()),
                  r.at("probability").get<double>(), r.at("threshold_exact").get<std::string>().c_str(),
                  r.at("outcome").get<std::string>().c_str());
    out << line;
    const auto msg = r.at("message").get<std::string>();
    if (!msg.empty()) out << "  (" << msg << ')';
    out << '\n';
  }
  const auto& s = report.at("summary");
  out << '\n'
      << s.at("valid").get<std::size_t>() << " valid, " << s.at("fail").get<std::size_t>() << " fail, "
      << s.at("vacuous").get<std::size_t>() << " vacuous, " << s.at("error").get<std::size_t>() << " error of "
      << s.at("total").get<std::size_t>() << " relations\n";
  return out.str();
}

}  // namespace prccsl
