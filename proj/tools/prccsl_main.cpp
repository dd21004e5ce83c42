// prccsl: check probabilistic clock relations against event traces.
//
//   prccsl check --spec FILE --trace FILE [--samples N] [--out FILE] [--format json|text]
//   prccsl simulate --steps N --seed S [--fault TARGET:RATE] --out FILE
//   prccsl verify-av [--steps N] [--threshold P] [--seed S] [--fault TARGET:RATE] [--out FILE]
//   prccsl fmt --spec FILE
//
// Exit status: 0 all checked relations valid, 1 some relation failed,
// 2 usage, input or relation errors.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "prccsl/av_sim.hpp"
#include "prccsl/corpus.hpp"
#include "prccsl/report.hpp"
#include "prccsl/spec_lang.hpp"
#include "prccsl/trace_io.hpp"

namespace {

using prccsl::Rational;

constexpr int kUsage = 2;

struct Failure {
  std::string message;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{"cannot open " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

prccsl::lang::ElaboratedSpec load_spec(const std::string& text, const std::string& origin) {
  try {
    return prccsl::lang::load(text);
  } catch (const prccsl::lang::SpecError& e) {
    throw Failure{origin + ":" + e.what()};
  }
}

Rational parse_threshold(const std::string& text) {
  Rational p;
  try {
    p = Rational::parse_decimal(text);
  } catch (const prccsl::Error&) {
    throw Failure{"threshold must be a decimal in [0, 1], got '" + text + "'"};
  }
  if (p.num() > p.den()) throw Failure{"threshold must be a decimal in [0, 1], got '" + text + "'"};
  return p;
}

void configure(std::vector<prccsl::RelationSpec>& relations, std::optional<std::uint64_t> samples,
               const std::optional<Rational>& threshold) {
  for (auto& r : relations) {
    if (samples) r.sample_size = samples;
    if (threshold) r.threshold = *threshold;
  }
}

struct Output {
  std::string out;
  std::string format = "text";
};

int emit(const prccsl::Report& report, const Output& o) {
  const auto doc = prccsl::report_json(report);
  const std::string body = o.format == "json" ? doc.dump(2) + "\n" : prccsl::render_text(doc);
  if (o.out.empty()) {
    std::cout << body;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f || !(f << body)) throw Failure{"cannot write " + o.out};
    const auto s = prccsl::summarize(report.verdicts);
    std::cout << s.valid << " valid, " << s.fail << " fail, " << s.vacuous << " vacuous, " << s.error
              << " error of " << s.total() << " relations; report written to " << o.out << '\n';
  }
  return prccsl::exit_code(report.verdicts);
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

int cmd_check(const std::string& spec_path, const std::string& trace_path, std::optional<std::uint64_t> samples,
              const std::optional<std::string>& threshold, const Output& o) {
  const auto start = std::chrono::steady_clock::now();
  auto spec = load_spec(slurp(spec_path), spec_path);
  std::optional<Rational> p;
  if (threshold) p = parse_threshold(*threshold);
  if (!samples) samples = spec.settings.samples;
  configure(spec.relations, samples, p);

  prccsl::Trace trace;
  try {
    trace = prccsl::read_trace_file(trace_path);
  } catch (const prccsl::Error& e) {
    throw Failure{trace_path + ": " + e.what()};
  }

  prccsl::Report report;
  report.spec = spec_path;
  report.provenance = {{"file", trace_path}};
  report.steps = trace.length();
  report.samples = samples;
  report.threshold_override = p;
  report.verdicts = prccsl::check_relations(spec.relations, trace);
  report.duration_ms = elapsed_ms(start);
  return emit(report, o);
}

int cmd_simulate(std::uint64_t steps, std::uint64_t seed, const std::optional<std::string>& fault,
                 const std::string& out_path) {
  prccsl::av::AVParams params;
  params.steps = steps;
  params.seed = seed;
  std::optional<prccsl::av::FaultSpec> f;
  if (fault) f = prccsl::av::FaultSpec::parse(*fault);

  prccsl::av::Simulator sim(params, f);
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw Failure{"cannot open " + out_path + " for writing"};
  prccsl::TraceWriter writer(file, sim.clocks());
  std::vector<std::uint64_t> counts(sim.clocks().size(), 0);
  std::vector<prccsl::Trace::ClockIndex> ticking;
  while (sim.next(ticking)) {
    writer.step(ticking);
    for (auto c : ticking) ++counts[c];
  }
  file.flush();
  if (!file) throw Failure{"write to " + out_path + " failed"};

  std::cout << "steps " << writer.rows() << '\n';
  for (std::size_t i = 0; i < counts.size(); ++i) std::cout << sim.clocks()[i] << ' ' << counts[i] << '\n';
  return 0;
}

int cmd_verify_av(std::uint64_t steps, const std::string& threshold, std::uint64_t seed,
                  const std::optional<std::string>& fault, std::optional<std::uint64_t> samples, const Output& o) {
  const auto start = std::chrono::steady_clock::now();
  auto spec = load_spec(std::string(prccsl::bundled_av_spec()), "<bundled av.prccsl>");
  const Rational p = parse_threshold(threshold);
  if (!samples) samples = spec.settings.samples;
  configure(spec.relations, samples, p);

  prccsl::av::AVParams params;
  params.steps = steps;
  params.seed = seed;
  std::optional<prccsl::av::FaultSpec> f;
  if (fault) f = prccsl::av::FaultSpec::parse(*fault);
  prccsl::av::Simulator sim(params, f);

  // Simulation and checking run in lock step; the trace is never stored.
  prccsl::RelationChecker checker(sim.clocks(), spec.relations);
  std::vector<prccsl::Trace::ClockIndex> ticking;
  while (sim.next(ticking)) checker.step(ticking);

  prccsl::Report report;
  report.spec = "bundled:av.prccsl";
  report.provenance = {{"simulator", "av"}, {"seed", seed}, {"steps", steps}};
  if (f) report.provenance["fault"] = f->to_string();
  report.steps = checker.steps();
  report.samples = samples;
  report.threshold_override = p;
  report.verdicts = checker.verdicts();
  report.duration_ms = elapsed_ms(start);
  return emit(report, o);
}

int cmd_fmt(const std::string& spec_path) {
  const std::string text = slurp(spec_path);
  try {
    std::cout << prccsl::lang::pretty_print(prccsl::lang::parse(text));
  } catch (const prccsl::lang::SpecError& e) {
    throw Failure{spec_path + ":" + e.what()};
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Check probabilistic clock relations against event traces"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(prccsl::kToolVersion));

  Output out;
  const auto add_output = [&out](CLI::App* sub) {
    sub->add_option("--out", out.out, "Write the report to this file");
    sub->add_option("--format", out.format, "Report format")->check(CLI::IsMember({"json", "text"}));
  };

  std::string spec_path, trace_path;
  std::optional<std::uint64_t> samples;
  std::optional<std::string> check_threshold;
  auto* check = app.add_subcommand("check", "Check a relation file against a trace CSV");
  check->add_option("--spec", spec_path, "Relation file (.prccsl)")->required();
  check->add_option("--trace", trace_path, "Trace CSV")->required();
  check->add_option("--samples", samples, "Freeze each verdict after N observations")->check(CLI::PositiveNumber);
  check->add_option("--threshold", check_threshold, "Override every relation's threshold");
  add_output(check);

  std::uint64_t sim_steps = 60000, sim_seed = 42;
  std::optional<std::string> fault;
  std::string sim_out;
  auto* simulate = app.add_subcommand("simulate", "Write a simulated vehicle trace");
  simulate->add_option("--steps", sim_steps, "Number of 1 ms steps")->capture_default_str();
  simulate->add_option("--seed", sim_seed, "Random seed")->capture_default_str();
  simulate->add_option("--fault", fault, "Inject violations, e.g. periodic-R1:0.10");
  simulate->add_option("--out", sim_out, "Trace CSV to write")->required();

  std::uint64_t av_steps = 60000, av_seed = 42;
  std::string av_threshold = "0.95";
  auto* verify = app.add_subcommand("verify-av", "Simulate the vehicle and check the bundled relations");
  verify->add_option("--steps", av_steps, "Number of 1 ms steps")->capture_default_str();
  verify->add_option("--threshold", av_threshold, "Threshold applied to every relation")->capture_default_str();
  verify->add_option("--seed", av_seed, "Random seed")->capture_default_str();
  verify->add_option("--fault", fault, "Inject violations, e.g. periodic-R1:0.10");
  verify->add_option("--samples", samples, "Freeze each verdict after N observations")->check(CLI::PositiveNumber);
  add_output(verify);

  auto* fmt = app.add_subcommand("fmt", "Print a relation file in canonical form");
  fmt->add_option("--spec", spec_path, "Relation file (.prccsl)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    if (*check) return cmd_check(spec_path, trace_path, samples, check_threshold, out);
    if (*simulate) return cmd_simulate(sim_steps, sim_seed, fault, sim_out);
    if (*verify) return cmd_verify_av(av_steps, av_threshold, av_seed, fault, samples, out);
    if (*fmt) return cmd_fmt(spec_path);
  } catch (const Failure& f) {
    std::cerr << "prccsl: " << f.message << '\n';
    return kUsage;
  } catch (const prccsl::Error& e) {
    std::cerr << "prccsl: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
