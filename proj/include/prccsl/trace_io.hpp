#pragma once

// Dense CSV trace files.
//
//   step,<clk1>,<clk2>,...
//   0,0,1,...
//   1,1,0,...
//
// One row per step, 0/1 per clock, LF line endings, no quoting.

#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "prccsl/clock.hpp"
#include "prccsl/error.hpp"

namespace prccsl {

/// Malformed trace file. `line()` is 1-based (the header is line 1).
class TraceFormatError : public Error {
 public:
  TraceFormatError(const std::string& message, std::size_t line)
      : Error(message + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Writes the header on construction and one row per step().
class TraceWriter {
 public:
  TraceWriter(std::ostream& out, std::vector<std::string> clocks);

  void step(std::span<const Trace::ClockIndex> ticking);
  StepIndex rows() const noexcept { return rows_; }

 private:
  std::ostream& out_;
  std::size_t width_;
  std::string row_;
  StepIndex rows_ = 0;
};

/// Throws Error if the stream goes bad.
void write_trace(const Trace& trace, std::ostream& out);
std::string write_trace(const Trace& trace);
void write_trace_file(const Trace& trace, const std::string& path);

/// Throws TraceFormatError on malformed input.
Trace read_trace(std::istream& in);
Trace read_trace(const std::string& text);
/// Also throws Error if the file cannot be opened.
Trace read_trace_file(const std::string& path);

}  // namespace prccsl
