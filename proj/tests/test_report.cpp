#include <doctest.h>

#include "prccsl/report.hpp"

using prccsl::Outcome;
using prccsl::Rational;
using prccsl::Verdict;

namespace {

Verdict verdict(const std::string& id, std::uint64_t k, std::uint64_t m, Outcome o) {
  Verdict v;
  v.id = id;
  v.kind = prccsl::RelationKind::kPrecedence;
  v.k = k;
  v.m = m;
  v.threshold = Rational(95, 100);
  v.outcome = o;
  return v;
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(prccsl::exit_code({}) == 0);
  CHECK(prccsl::exit_code({verdict("a", 3, 3, Outcome::kValid), verdict("b", 0, 0, Outcome::kVacuous)}) == 0);
  CHECK(prccsl::exit_code({verdict("a", 3, 3, Outcome::kValid), verdict("b", 3, 1, Outcome::kFail)}) == 1);
  CHECK(prccsl::exit_code({verdict("a", 3, 1, Outcome::kFail), verdict("b", 0, 0, Outcome::kError)}) == 2);
  const auto s = prccsl::summarize({verdict("a", 3, 3, Outcome::kValid), verdict("b", 3, 1, Outcome::kFail),
                                    verdict("c", 0, 0, Outcome::kVacuous)});
  CHECK(s.valid == 1);
  CHECK(s.fail == 1);
  CHECK(s.vacuous == 1);
  CHECK(s.error == 0);
  CHECK(s.total() == 3);
}

TEST_CASE("verdict json") {
  const auto j = prccsl::verdict_json(verdict("R1", 7, 6, Outcome::kFail));
  CHECK(j.at("id") == "R1");
  CHECK(j.at("kind") == "Precedence");
  CHECK(j.at("k") == 7);
  CHECK(j.at("m") == 6);
  CHECK(j.at("fraction") == "6/7");
  CHECK(j.at("probability").get<double>() == doctest::Approx(6.0 / 7.0).epsilon(1e-14));
  CHECK(j.at("threshold").get<double>() == doctest::Approx(0.95));
  CHECK(j.at("threshold_exact") == "0.95");
  CHECK(j.at("outcome") == "fail");
  CHECK(prccsl::verdict_json(verdict("v", 0, 0, Outcome::kVacuous)).at("probability").get<double>() == 0.0);
}

TEST_CASE("report json and text") {
  prccsl::Report r;
  r.spec = "x.prccsl";
  r.provenance = {{"file", "t.csv"}};
  r.steps = 12;
  r.samples = 5;
  r.verdicts = {verdict("R1", 7, 6, Outcome::kFail), verdict("R2", 0, 0, Outcome::kVacuous)};
  r.verdicts[1].message = "no observations";
  const auto j = prccsl::report_json(r);
  CHECK(j.at("tool") == "prccsl");
  CHECK(j.at("version") == prccsl::kToolVersion);
  CHECK(j.at("trace").at("file") == "t.csv");
  CHECK(j.at("settings").at("steps") == 12);
  CHECK(j.at("settings").at("samples") == 5);
  CHECK(j.at("settings").at("threshold").is_null());
  CHECK(j.at("relations").size() == 2);
  CHECK(j.at("summary").at("fail") == 1);
  CHECK(j.at("summary").at("total") == 2);
  CHECK(j.contains("duration_ms"));
  // The document survives a dump/parse cycle unchanged.
  CHECK(nlohmann::json::parse(j.dump()) == j);

  const auto text = prccsl::render_text(j);
  CHECK(text.find("R1") != std::string::npos);
  CHECK(text.find("(no observations)") != std::string::npos);
  CHECK(text.find("0 valid, 1 fail, 1 vacuous, 0 error of 2 relations") != std::string::npos);
}
