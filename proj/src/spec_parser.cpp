#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <optional>

#include "prccsl/spec_lang.hpp"

namespace prccsl::lang {

namespace {

std::string format_error(SourcePos pos, const std::string& detail) {
  return std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + detail;
}

enum class Tok { kWord, kNumber, kLParen, kRParen, kComma, kColon, kEquals, kGreaterEq, kEnd };

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

constexpr std::array<std::string_view, 18> kKeywords{
    "clock",    "def",      "rel",  "set",        "steps",  "samples",
    "subclockof", "coincides", "excludes", "causes", "precedes", "prob",
    "periodicon", "period",  "delayfor", "on",     "inf",    "sup"};

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool is_keyword(std::string_view word) {
  const std::string w = lower(word);
  return std::find(kKeywords.begin(), kKeywords.end(), w) != kKeywords.end();
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      const SourcePos pos{line_, col_};
      if (at_end()) {
        out.push_back({Tok::kEnd, "end of input", pos});
        return out;
      }
      const char c = peek();
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string word;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
          word += get();
        }
        out.push_back({Tok::kWord, std::move(word), pos});
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        std::string num;
        while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.')) {
          num += get();
        }
        out.push_back({Tok::kNumber, std::move(num), pos});
      } else if (c == '(') {
        get();
        out.push_back({Tok::kLParen, "(", pos});
      } else if (c == ')') {
        get();
        out.push_back({Tok::kRParen, ")", pos});
      } else if (c == ',') {
        get();
        out.push_back({Tok::kComma, ",", pos});
      } else if (c == ':') {
        get();
        out.push_back({Tok::kColon, ":", pos});
      } else if (c == '=') {
        get();
        out.push_back({Tok::kEquals, "=", pos});
      } else if (c == '>' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
        get();
        get();
        out.push_back({Tok::kGreaterEq, ">=", pos});
      } else {
        throw SpecError(pos, std::string("unexpected character '") + c + "'");
      }
    }
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  char get() {
    const char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  void skip_space() {
    while (!at_end()) {
      const char c = peek();
      if (c == '#') {
        while (!at_end() && peek() != '\n') get();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        get();
      } else {
        return;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::kEnd:
      return "end of input";
    case Tok::kWord:
    case Tok::kNumber:
      return "'" + t.text + "'";
    default:
      return "'" + t.text + "'";
  }
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {
    names_.emplace(std::string(kUniversalClock), NameKind::kClock);
  }

  SpecFile run() {
    SpecFile file;
    while (cur().kind != Tok::kEnd) {
      if (is_word("clock")) {
        parse_clock(file);
      } else if (is_word("def")) {
        parse_def(file);
      } else if (is_word("rel")) {
        parse_rel(file);
      } else if (is_word("set")) {
        parse_set(file);
      } else {
        fail_expected({"clock", "def", "rel", "set"});
      }
      // Name resolution errors surface after the statement's own checks.
      if (deferred_) throw *deferred_;
    }
    return file;
  }

 private:
  enum class NameKind { kClock, kDefinition, kRelation };

  const Token& cur() const { return toks_[idx_]; }
  const Token& advance() { return toks_[idx_++]; }

  bool is_word(std::string_view kw) const {
    return cur().kind == Tok::kWord && lower(cur().text) == kw;
  }

  [[noreturn]] void fail_expected(std::vector<std::string> expected) const {
    std::string msg = "expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i > 0) msg += i + 1 == expected.size() ? " or " : ", ";
      msg += expected[i];
    }
    msg += ", found " + describe(cur());
    throw SpecError(cur().pos, msg, std::move(expected));
  }

  void expect_word(std::string_view kw) {
    if (!is_word(kw)) fail_expected({std::string(kw)});
    advance();
  }

  void expect(Tok kind, const std::string& shown) {
    if (cur().kind != kind) fail_expected({shown});
    advance();
  }

  const Token& expect_ident() {
    if (cur().kind != Tok::kWord || is_keyword(cur().text)) fail_expected({"identifier"});
    return advance();
  }

  std::uint64_t expect_nat(std::string_view what) {
    const Token& t = cur();
    if (t.kind != Tok::kNumber || t.text.find('.') != std::string::npos) {
      fail_expected({"natural number"});
    }
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
      throw SpecError(t.pos, std::string(what) + " '" + t.text + "' is out of range");
    }
    advance();
    return value;
  }

  void declare(const Token& name, NameKind kind) {
    if (!names_.emplace(name.text, kind).second) {
      throw SpecError(name.pos, "duplicate name '" + name.text + "'");
    }
  }

  void parse_clock(SpecFile& file) {
    advance();
    const Token& name = expect_ident();
    declare(name, NameKind::kClock);
    file.clocks.push_back({name.text, name.pos});
  }

  void parse_def(SpecFile& file) {
    const SourcePos pos = advance().pos;
    const Token& name = expect_ident();
    if (names_.count(name.text)) throw SpecError(name.pos, "duplicate name '" + name.text + "'");
    expect(Tok::kEquals, "'='");
    defining_ = name.text;
    auto expr = parse_expr();
    defining_.clear();
    declare(name, NameKind::kDefinition);
    file.definitions.push_back({name.text, std::move(expr), pos});
  }

  void parse_rel(SpecFile& file) {
    const SourcePos pos = advance().pos;
    const Token& id = expect_ident();
    declare(id, NameKind::kRelation);
    expect(Tok::kColon, "':'");
    auto left = parse_expr();
    if (cur().kind != Tok::kWord || !kind_from_keyword(cur().text)) {
      fail_expected({"subclockof", "coincides", "excludes", "causes", "precedes"});
    }
    const RelationKind kind = *kind_from_keyword(advance().text);
    auto right = parse_expr();
    expect_word("prob");
    expect(Tok::kGreaterEq, "'>='");
    const Token& num = cur();
    if (num.kind != Tok::kNumber) fail_expected({"decimal"});
    Rational p;
    try {
      p = Rational::parse_decimal(num.text);
    } catch (const ValidationError& e) {
      throw SpecError(num.pos, e.what());
    }
    if (p.num() > p.den()) throw SpecError(num.pos, "threshold out of range");
    advance();
    file.relations.push_back({id.text, std::move(left), kind, std::move(right), p, pos});
  }

  void parse_set(SpecFile& file) {
    advance();
    if (is_word("steps")) {
      const SourcePos pos = advance().pos;
      if (file.settings.steps) throw SpecError(pos, "duplicate setting 'steps'");
      file.settings.steps = expect_nat("steps");
    } else if (is_word("samples")) {
      const SourcePos pos = advance().pos;
      if (file.settings.samples) throw SpecError(pos, "duplicate setting 'samples'");
      const SourcePos value_pos = cur().pos;
      file.settings.samples = expect_nat("samples");
      if (*file.settings.samples == 0) throw SpecError(value_pos, "sample size must be at least 1");
    } else {
      fail_expected({"steps", "samples"});
    }
  }

  SyntaxExprPtr parse_expr() {
    auto expr = parse_primary();
    while (is_word("delayfor")) {
      const SourcePos pos = advance().pos;
      const SourcePos amount_pos = cur().pos;
      const auto delay = expect_nat("delay");
      if (delay == 0) throw SpecError(amount_pos, "delay must be at least 1");
      expect_word("on");
      auto ref = parse_primary();
      auto node = std::make_shared<SyntaxExpr>();
      node->kind = SyntaxExpr::Kind::kDelayFor;
      node->amount = delay;
      node->first = std::move(expr);
      node->second = std::move(ref);
      node->pos = pos;
      expr = std::move(node);
    }
    return expr;
  }

  SyntaxExprPtr parse_primary() {
    const Token& t = cur();
    auto node = std::make_shared<SyntaxExpr>();
    node->pos = t.pos;
    if (t.kind == Tok::kLParen) {
      advance();
      auto inner = parse_expr();
      expect(Tok::kRParen, "')'");
      return inner;
    }
    if (is_word("periodicon")) {
      advance();
      node->kind = SyntaxExpr::Kind::kPeriodicOn;
      node->first = parse_expr();
      expect_word("period");
      const SourcePos amount_pos = cur().pos;
      node->amount = expect_nat("period");
      if (node->amount == 0) throw SpecError(amount_pos, "period must be at least 1");
      return node;
    }
    if (is_word("inf") || is_word("sup")) {
      node->kind = is_word("inf") ? SyntaxExpr::Kind::kInf : SyntaxExpr::Kind::kSup;
      advance();
      expect(Tok::kLParen, "'('");
      node->first = parse_expr();
      expect(Tok::kComma, "','");
      node->second = parse_expr();
      expect(Tok::kRParen, "')'");
      return node;
    }
    if (t.kind == Tok::kWord && !is_keyword(t.text)) {
      advance();
      auto it = names_.find(t.text);
      if (!defining_.empty() && t.text == defining_) {
        defer(SpecError(t.pos, "cyclic definition: '" + t.text + "' refers to itself"));
      } else if (it == names_.end()) {
        defer(SpecError(t.pos, "unknown name '" + t.text + "'"));
      } else if (it->second == NameKind::kRelation) {
        defer(SpecError(t.pos, "'" + t.text + "' names a relation, not a clock"));
      }
      node->kind = SyntaxExpr::Kind::kName;
      node->name = t.text;
      return node;
    }
    fail_expected({"identifier", "'('", "periodicon", "inf", "sup"});
  }

  void defer(SpecError e) {
    if (!deferred_) deferred_ = std::move(e);
  }

  std::vector<Token> toks_;
  std::size_t idx_ = 0;
  std::optional<SpecError> deferred_;
  std::map<std::string, NameKind> names_;
  std::string defining_;
};

}  // namespace

SpecError::SpecError(SourcePos pos, const std::string& message, std::vector<std::string> expected)
    : Error(format_error(pos, message)), pos_(pos), expected_(std::move(expected)), detail_(message) {}

SpecFile parse(std::string_view text) {
  Lexer lexer(text);
  Parser parser(lexer.run());
  return parser.run();
}

}  // namespace prccsl::lang
