#include <sstream>

#include "prccsl/spec_lang.hpp"

namespace prccsl::lang {

namespace {

void print_expr(std::ostream& out, const SyntaxExpr& e, bool top) {
  switch (e.kind) {
    case SyntaxExpr::Kind::kName:
      out << e.name;
      return;
    case SyntaxExpr::Kind::kPeriodicOn:
      if (!top) out << '(';
      out << "periodicon ";
      print_expr(out, *e.first, false);
      out << " period " << e.amount;
      if (!top) out << ')';
      return;
    case SyntaxExpr::Kind::kDelayFor:
      if (!top) out << '(';
      print_expr(out, *e.first, false);
      out << " delayfor " << e.amount << " on ";
      print_expr(out, *e.second, false);
      if (!top) out << ')';
      return;
    case SyntaxExpr::Kind::kInf:
    case SyntaxExpr::Kind::kSup:
      out << (e.kind == SyntaxExpr::Kind::kInf ? "inf(" : "sup(");
      print_expr(out, *e.first, false);
      out << ", ";
      print_expr(out, *e.second, false);
      out << ')';
      return;
  }
}

}  // namespace

std::string pretty_print(const SyntaxExpr& expr) {
  std::ostringstream out;
  print_expr(out, expr, true);
  return out.str();
}

std::string pretty_print(const SpecFile& spec) {
  std::ostringstream out;
  if (spec.settings.steps) out << "set steps " << *spec.settings.steps << '\n';
  if (spec.settings.samples) out << "set samples " << *spec.settings.samples << '\n';
  for (const auto& c : spec.clocks) out << "clock " << c.name << '\n';
  for (const auto& d : spec.definitions) {
    out << "def " << d.name << " = ";
    print_expr(out, *d.expr, true);
    out << '\n';
  }
  for (const auto& r : spec.relations) {
    out << "rel " << r.id << ": ";
    print_expr(out, *r.left, true);
    out << ' ' << kind_keyword(r.kind) << ' ';
    print_expr(out, *r.right, true);
    out << " prob >= " << r.threshold.to_decimal() << '\n';
  }
  return out.str();
}

bool structurally_equal(const SyntaxExpr& a, const SyntaxExpr& b) {
  if (a.kind != b.kind || a.name != b.name || a.amount != b.amount) return false;
  const auto same = [](const SyntaxExprPtr& x, const SyntaxExprPtr& y) {
    if (!x || !y) return !x && !y;
    return structurally_equal(*x, *y);
  };
  return same(a.first, b.first) && same(a.second, b.second);
}

bool structurally_equal(const SpecFile& a, const SpecFile& b) {
  if (a.settings.steps != b.settings.steps || a.settings.samples != b.settings.samples) return false;
  if (a.clocks.size() != b.clocks.size() || a.definitions.size() != b.definitions.size() ||
      a.relations.size() != b.relations.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.clocks.size(); ++i) {
    if (a.clocks[i].name != b.clocks[i].name) return false;
  }
  for (std::size_t i = 0; i < a.definitions.size(); ++i) {
    const auto& x = a.definitions[i];
    const auto& y = b.definitions[i];
    if (x.name != y.name || !structurally_equal(*x.expr, *y.expr)) return false;
  }
  for (std::size_t i = 0; i < a.relations.size(); ++i) {
    const auto& x = a.relations[i];
    const auto& y = b.relations[i];
    if (x.id != y.id || x.kind != y.kind || !(x.threshold == y.threshold) ||
        !structurally_equal(*x.left, *y.left) || !structurally_equal(*x.right, *y.right)) {
      return false;
    }
  }
  return true;
}

namespace {

ClockExpr build(const SyntaxExpr& e, const std::map<std::string, ClockExpr>& scope) {
  switch (e.kind) {
    case SyntaxExpr::Kind::kName: {
      auto it = scope.find(e.name);
      if (it == scope.end()) throw SpecError(e.pos, "unknown name '" + e.name + "'");
      return it->second;
    }
    case SyntaxExpr::Kind::kPeriodicOn:
      if (e.amount == 0) throw SpecError(e.pos, "period must be at least 1");
      return ClockExpr::periodic_on(build(*e.first, scope), e.amount);
    case SyntaxExpr::Kind::kDelayFor:
      if (e.amount == 0) throw SpecError(e.pos, "delay must be at least 1");
      return ClockExpr::delay_for(build(*e.first, scope), e.amount, build(*e.second, scope));
    case SyntaxExpr::Kind::kInf:
      return ClockExpr::inf(build(*e.first, scope), build(*e.second, scope));
    case SyntaxExpr::Kind::kSup:
      return ClockExpr::sup(build(*e.first, scope), build(*e.second, scope));
  }
  throw SpecError(e.pos, "malformed expression");
}

}  // namespace

ElaboratedSpec elaborate(const SpecFile& spec) {
  ElaboratedSpec out;
  out.settings = spec.settings;
  std::map<std::string, ClockExpr> scope;
  const auto claim = [&](const std::string& name, SourcePos pos, ClockExpr expr) {
    if (!scope.emplace(name, std::move(expr)).second) {
      throw SpecError(pos, "duplicate name '" + name + "'");
    }
  };

  out.alphabet.emplace_back(kUniversalClock);
  claim(std::string(kUniversalClock), {}, ClockExpr::ref(std::string(kUniversalClock)));
  for (const auto& c : spec.clocks) {
    claim(c.name, c.pos, ClockExpr::ref(c.name));
    out.alphabet.push_back(c.name);
  }
  // Definitions may only use earlier names, which rules out cycles.
  for (const auto& d : spec.definitions) {
    ClockExpr e = build(*d.expr, scope);
    out.definitions.emplace(d.name, e);
    claim(d.name, d.pos, std::move(e));
  }
  std::map<std::string, SourcePos> ids;
  for (const auto& r : spec.relations) {
    if (scope.count(r.id) || !ids.emplace(r.id, r.pos).second) {
      throw SpecError(r.pos, "duplicate name '" + r.id + "'");
    }
    if (r.threshold.num() > r.threshold.den()) throw SpecError(r.pos, "threshold out of range");
    out.relations.push_back(RelationSpec{r.id, r.kind, build(*r.left, scope), build(*r.right, scope),
                                         r.threshold, spec.settings.samples});
  }
  return out;
}

ElaboratedSpec load(std::string_view text) { return elaborate(parse(text)); }

}  // namespace prccsl::lang
