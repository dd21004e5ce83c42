#pragma once

// Text format for clock declarations, derived-clock definitions and
// probabilistic relations (.prccsl files).
//
//   file      := { stmt } ;
//   stmt      := "clock" IDENT
//              | "def" IDENT "=" expr
//              | "rel" IDENT ":" expr relop expr "prob" ">=" DECIMAL
//              | "set" ("steps" | "samples") NAT ;
//   relop     := "subclockof" | "coincides" | "excludes" | "causes" | "precedes" ;
//   expr      := term | "(" expr ")" ;
//   term      := IDENT
//              | "periodicon" expr "period" NAT
//              | expr "delayfor" NAT "on" expr
//              | "inf" "(" expr "," expr ")"
//              | "sup" "(" expr "," expr ")" ;
//
// Keywords are case-insensitive, identifiers are not. `#` starts a line
// comment. `delayfor` is left-associative. Names live in one flat namespace
// and must be declared before use; `ms` is always declared.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prccsl/error.hpp"
#include "prccsl/expr.hpp"
#include "prccsl/rational.hpp"
#include "prccsl/relation.hpp"

namespace prccsl::lang {

struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};

class SpecError : public Error {
 public:
  SpecError(SourcePos pos, const std::string& message, std::vector<std::string> expected = {});

  SourcePos pos() const noexcept { return pos_; }
  /// Tokens that would have been accepted; empty for semantic errors.
  const std::vector<std::string>& expected() const noexcept { return expected_; }
  /// Message without the "line:col: " prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  SourcePos pos_;
  std::vector<std::string> expected_;
  std::string detail_;
};

struct SyntaxExpr;
using SyntaxExprPtr = std::shared_ptr<const SyntaxExpr>;

/// Unresolved expression; names may denote clocks or definitions.
struct SyntaxExpr {
  enum class Kind { kName, kPeriodicOn, kDelayFor, kInf, kSup };

  Kind kind = Kind::kName;
  std::string name;
  std::uint64_t amount = 0;
  SyntaxExprPtr first;
  SyntaxExprPtr second;
  SourcePos pos;
};

struct ClockDecl {
  std::string name;
  SourcePos pos;
};

struct Definition {
  std::string name;
  SyntaxExprPtr expr;
  SourcePos pos;
};

struct RelationDecl {
  std::string id;
  SyntaxExprPtr left;
  RelationKind kind = RelationKind::kSubclock;
  SyntaxExprPtr right;
  Rational threshold;
  SourcePos pos;
};

struct Settings {
  std::optional<std::uint64_t> steps;
  std::optional<std::uint64_t> samples;
};

struct SpecFile {
  std::vector<ClockDecl> clocks;
  std::vector<Definition> definitions;
  std::vector<RelationDecl> relations;
  Settings settings;
};

/// Throws SpecError on syntax or semantic errors.
SpecFile parse(std::string_view text);

/// Canonical text; parse(pretty_print(s)) is structurally equal to s.
std::string pretty_print(const SpecFile& spec);
std::string pretty_print(const SyntaxExpr& expr);

/// Equality that ignores source positions.
bool structurally_equal(const SyntaxExpr& a, const SyntaxExpr& b);
bool structurally_equal(const SpecFile& a, const SpecFile& b);

struct ElaboratedSpec {
  /// `ms` first, then declared clocks in declaration order.
  std::vector<std::string> alphabet;
  std::map<std::string, ClockExpr> definitions;
  std::vector<RelationSpec> relations;
  Settings settings;
};

/// Inlines definitions into a shared expression DAG. Each definition is
/// built once, so every use site points at the same node.
ElaboratedSpec elaborate(const SpecFile& spec);

/// parse + elaborate.
ElaboratedSpec load(std::string_view text);

}  // namespace prccsl::lang
