#include "prccsl/trace_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace prccsl {

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (comma == std::string_view::npos) return out;
    start = comma + 1;
  }
}

}  // namespace

TraceWriter::TraceWriter(std::ostream& out, std::vector<std::string> clocks)
    : out_(out), width_(clocks.size()) {
  out_ << "step";
  for (const auto& c : clocks) out_ << ',' << c;
  out_ << '\n';
  if (!out_) throw Error("trace write failed");
}

void TraceWriter::step(std::span<const Trace::ClockIndex> ticking) {
  row_.assign(2 * width_, '0');
  for (std::size_t i = 0; i < width_; ++i) row_[2 * i] = ',';
  for (auto c : ticking) row_.at(2 * c + 1) = '1';
  out_ << rows_ << row_ << '\n';
  if (!out_) throw Error("trace write failed");
  ++rows_;
}

void write_trace(const Trace& trace, std::ostream& out) {
  TraceWriter w(out, trace.clocks());
  for (StepIndex i = 0; i < trace.length(); ++i) w.step(trace.ticking_at(i));
}

std::string write_trace(const Trace& trace) {
  std::ostringstream out;
  write_trace(trace, out);
  return out.str();
}

void write_trace_file(const Trace& trace, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  write_trace(trace, out);
  out.flush();
  if (!out) throw Error("write to " + path + " failed");
}

Trace read_trace(std::istream& in) {
  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(in, line)) throw TraceFormatError("missing header", lineno);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto head = split(line);
  if (head.empty() || head[0] != "step") {
    throw TraceFormatError("malformed header: first field must be 'step'", lineno);
  }
  std::vector<ClockId> ids;
  for (std::size_t i = 1; i < head.size(); ++i) {
    if (!is_identifier(head[i])) {
      throw TraceFormatError("malformed header: bad clock name '" + std::string(head[i]) + "'", lineno);
    }
    ids.emplace_back(std::string(head[i]));
  }
  Trace trace = [&] {
    try {
      return Trace(ids);
    } catch (const DeclarationError& e) {
      throw TraceFormatError(std::string("malformed header: ") + e.what(), lineno);
    }
  }();

  std::vector<Trace::ClockIndex> ticking;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() && in.peek() == std::char_traits<char>::eof()) break;
    const auto cells = split(line);
    if (cells.size() != head.size()) {
      throw TraceFormatError("ragged row: expected " + std::to_string(head.size()) + " fields, found " +
                                 std::to_string(cells.size()),
                             lineno);
    }
    StepIndex index = 0;
    const auto f = cells[0];
    auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), index);
    if (ec != std::errc() || ptr != f.data() + f.size()) {
      throw TraceFormatError("bad step index '" + std::string(f) + "'", lineno);
    }
    if (index != trace.length()) throw TraceFormatError("non-consecutive step index", lineno);
    ticking.clear();
    for (std::size_t c = 1; c < cells.size(); ++c) {
      if (cells[c] == "1") {
        ticking.push_back(static_cast<Trace::ClockIndex>(c - 1));
      } else if (cells[c] != "0") {
        throw TraceFormatError("cell must be 0 or 1", lineno);
      }
    }
    trace.append_step(ticking);
  }
  return trace;
}

Trace read_trace(const std::string& text) {
  std::istringstream in(text);
  return read_trace(in);
}

Trace read_trace_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  return read_trace(in);
}

}  // namespace prccsl
