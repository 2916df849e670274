#include "eo/expr/parser.hpp"

#include <cctype>
#include <optional>
#include <string>

#include "eo/error.hpp"

namespace eo::expr {

namespace {

enum class Tok {
  End,
  Dollar,      // `$` followed by `.` or `(`
  DollarName,  // `$Name`
  Ident,
  Number,
  String,
  Dot,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Comma,
  Colon,
  Question,
  AndAnd,
  OrOr,
  Bang,
  EqEq,
  NotEq,
  Lt,
  Gt,
  Le,
  Ge,
  Plus,
  Arrow,   // `<-`
  Assign,  // `=`
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t pos = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_ws();
    Token t;
    t.pos = pos_;
    if (pos_ >= src_.size()) return t;
    const char c = src_[pos_];
    auto peek = [&](std::size_t k) { return pos_ + k < src_.size() ? src_[pos_ + k] : '\0'; };

    if (c == '$') {
      if (std::isalpha(static_cast<unsigned char>(peek(1))) || peek(1) == '_') {
        ++pos_;
        t.kind = Tok::DollarName;
        t.text = ident();
        return t;
      }
      ++pos_;
      t.kind = Tok::Dollar;
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = Tok::Ident;
      t.text = ident();
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) {
        ++pos_;
      }
      t.kind = Tok::Number;
      t.text = std::string(src_.substr(start, pos_ - start));
      return t;
    }
    if (c == '"' || c == '\'') {
      t.kind = Tok::String;
      t.text = quoted(c);
      return t;
    }
    auto two = [&](char a, char b) { return c == a && peek(1) == b; };
    auto emit = [&](Tok kind, std::size_t len) {
      pos_ += len;
      t.kind = kind;
      return t;
    };
    if (two('=', '=')) return emit(Tok::EqEq, peek(2) == '=' ? 3 : 2);
    if (two('!', '=')) return emit(Tok::NotEq, peek(2) == '=' ? 3 : 2);
    if (two('&', '&')) return emit(Tok::AndAnd, 2);
    if (two('|', '|')) return emit(Tok::OrOr, 2);
    if (two('<', '=')) return emit(Tok::Le, 2);
    if (two('>', '=')) return emit(Tok::Ge, 2);
    if (two('<', '-')) return emit(Tok::Arrow, 2);
    switch (c) {
      case '.': return emit(Tok::Dot, 1);
      case '(': return emit(Tok::LParen, 1);
      case ')': return emit(Tok::RParen, 1);
      case '{': return emit(Tok::LBrace, 1);
      case '}': return emit(Tok::RBrace, 1);
      case ',': return emit(Tok::Comma, 1);
      case ':': return emit(Tok::Colon, 1);
      case '?': return emit(Tok::Question, 1);
      case '!': return emit(Tok::Bang, 1);
      case '<': return emit(Tok::Lt, 1);
      case '>': return emit(Tok::Gt, 1);
      case '+': return emit(Tok::Plus, 1);
      case '=': return emit(Tok::Assign, 1);
      default: break;
    }
    throw Error(Errc::SyntaxError,
                "unexpected character '" + std::string(1, c) + "' at offset " + std::to_string(pos_));
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  std::string ident() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      ++pos_;
    }
    return std::string(src_.substr(start, pos_ - start));
  }

  std::string quoted(char quote) {
    const std::size_t start = pos_++;
    std::string out;
    while (pos_ < src_.size() && src_[pos_] != quote) {
      if (src_[pos_] == '\\' && pos_ + 1 < src_.size()) ++pos_;
      out += src_[pos_++];
    }
    if (pos_ >= src_.size()) {
      throw Error(Errc::SyntaxError, "unterminated string starting at offset " + std::to_string(start));
    }
    ++pos_;
    return out;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src), lexer_(src) { advance(); }

  ExprPtr parse_root() {
    ExprPtr e = starts_object() ? parse_object_root() : parse_ternary();
    expect_end();
    return e;
  }

  ExprPtr parse_action_root() {
    if (starts_object()) {
      ExprPtr e = parse_object_root();
      expect_end();
      return e;
    }
    const std::size_t start = tok_.pos;
    ExprPtr lhs = parse_postfix();
    const auto* target = as<PropRef>(*lhs);
    if (!target) fail("action target must be a property reference");
    if (tok_.kind != Tok::Arrow && tok_.kind != Tok::Assign) fail("expected '<-' or '=' in action");
    advance();
    ExprPtr rhs = parse_ternary();
    expect_end();

    DoLiteral d;
    d.action = "EditIndividual";
    d.target = target->of ? target->of : make(CurrentIndividual{}, start, start);
    d.guard = make(Binary{BinaryOp::Eq, make(ValueRef{}, start, start), make(Literal{Value("1")}, start, start)},
                   start, start);
    d.assignments.emplace_back(target->property, std::move(rhs));
    return make(std::move(d), start, src_.size());
  }

 private:
  template <class Node>
  ExprPtr make(Node n, std::size_t begin, std::size_t end) {
    return std::make_shared<const Expr>(Expr{std::move(n), Span{begin, end}});
  }

  [[noreturn]] void fail(const std::string& what) {
    throw Error(Errc::SyntaxError, what + " at offset " + std::to_string(tok_.pos) + " in `" +
                                       std::string(src_) + "`");
  }

  void advance() { tok_ = lexer_.next(); }

  void expect(Tok kind, const char* what) {
    if (tok_.kind != kind) fail(std::string("expected ") + what);
    advance();
  }

  void expect_end() {
    if (tok_.kind != Tok::End) fail("unexpected trailing input");
  }

  bool starts_object() {
    if (tok_.kind == Tok::LBrace) return true;
    if (tok_.kind != Tok::LParen) return false;
    Lexer probe = lexer_;
    return probe.next().kind == Tok::LBrace;
  }

  ExprPtr parse_object_root() {
    const std::size_t start = tok_.pos;
    const bool wrapped = tok_.kind == Tok::LParen;
    if (wrapped) advance();
    expect(Tok::LBrace, "'{'");
    DoLiteral d;
    bool have_do = false;
    bool have_target = false;
    for (;;) {
      if (tok_.kind != Tok::String) fail("expected quoted key in action object");
      const std::string key = tok_.text;
      advance();
      expect(Tok::Colon, "':'");
      if (key == "$do") {
        if (tok_.kind != Tok::String) fail("'$do' expects a quoted action name");
        d.action = tok_.text;
        if (d.action != "EditIndividual") fail("unsupported action '" + d.action + "'");
        advance();
        have_do = true;
      } else if (key == "$IndividualID") {
        d.target = parse_ternary();
        have_target = true;
      } else if (key == "$Condition") {
        d.guard = parse_ternary();
      } else {
        d.assignments.emplace_back(key, parse_ternary());
      }
      if (tok_.kind == Tok::Comma) {
        advance();
        continue;
      }
      break;
    }
    expect(Tok::RBrace, "'}'");
    if (wrapped) expect(Tok::RParen, "')'");
    if (!have_do) fail("action object lacks '$do'");
    if (!have_target) fail("action object lacks '$IndividualID'");
    return make(std::move(d), start, tok_.pos);
  }

  ExprPtr parse_ternary() {
    const std::size_t start = tok_.pos;
    ExprPtr cond = parse_or();
    if (tok_.kind != Tok::Question) return cond;
    advance();
    ExprPtr then_branch = parse_ternary();
    expect(Tok::Colon, "':' in conditional");
    ExprPtr else_branch = parse_ternary();
    return make(Ternary{std::move(cond), std::move(then_branch), std::move(else_branch)}, start, tok_.pos);
  }

  ExprPtr parse_or() {
    const std::size_t start = tok_.pos;
    ExprPtr lhs = parse_and();
    while (tok_.kind == Tok::OrOr) {
      advance();
      lhs = make(Binary{BinaryOp::Or, lhs, parse_and()}, start, tok_.pos);
    }
    return lhs;
  }

  ExprPtr parse_and() {
    const std::size_t start = tok_.pos;
    ExprPtr lhs = parse_equality();
    while (tok_.kind == Tok::AndAnd) {
      advance();
      lhs = make(Binary{BinaryOp::And, lhs, parse_equality()}, start, tok_.pos);
    }
    return lhs;
  }

  ExprPtr parse_equality() {
    const std::size_t start = tok_.pos;
    ExprPtr lhs = parse_comparison();
    while (tok_.kind == Tok::EqEq || tok_.kind == Tok::NotEq) {
      const BinaryOp op = tok_.kind == Tok::EqEq ? BinaryOp::Eq : BinaryOp::Ne;
      advance();
      lhs = make(Binary{op, lhs, parse_comparison()}, start, tok_.pos);
    }
    return lhs;
  }

  ExprPtr parse_comparison() {
    const std::size_t start = tok_.pos;
    ExprPtr lhs = parse_unary();
    for (;;) {
      BinaryOp op;
      switch (tok_.kind) {
        case Tok::Lt: op = BinaryOp::Lt; break;
        case Tok::Gt: op = BinaryOp::Gt; break;
        case Tok::Le: op = BinaryOp::Le; break;
        case Tok::Ge: op = BinaryOp::Ge; break;
        default: return lhs;
      }
      advance();
      lhs = make(Binary{op, lhs, parse_unary()}, start, tok_.pos);
    }
  }

  ExprPtr parse_unary() {
    const std::size_t start = tok_.pos;
    if (tok_.kind == Tok::Plus || tok_.kind == Tok::Bang) {
      const UnaryOp op = tok_.kind == Tok::Plus ? UnaryOp::Plus : UnaryOp::Not;
      advance();
      return make(Unary{op, parse_unary()}, start, tok_.pos);
    }
    return parse_postfix();
  }

  ExprPtr parse_postfix() {
    const std::size_t start = tok_.pos;
    ExprPtr e = parse_primary();
    while (tok_.kind == Tok::Dot) {
      advance();
      if (tok_.kind != Tok::Ident) fail("expected property name after '.'");
      e = make(PropRef{tok_.text, e}, start, tok_.pos + tok_.text.size());
      advance();
    }
    return e;
  }

  ExprPtr parse_primary() {
    const std::size_t start = tok_.pos;
    switch (tok_.kind) {
      case Tok::Number: {
        auto n = parse_number(tok_.text);
        if (!n) fail("malformed number '" + tok_.text + "'");
        advance();
        return make(Literal{Value(*n)}, start, tok_.pos);
      }
      case Tok::String: {
        std::string s = tok_.text;
        advance();
        return make(Literal{Value(std::move(s))}, start, tok_.pos);
      }
      case Tok::Ident: {
        if (tok_.text == "true" || tok_.text == "false") {
          const bool b = tok_.text == "true";
          advance();
          return make(Literal{Value(b)}, start, tok_.pos);
        }
        if (tok_.text == "null") {
          advance();
          return make(Literal{Value()}, start, tok_.pos);
        }
        fail("unexpected identifier '" + tok_.text + "'");
      }
      case Tok::DollarName: {
        const std::string name = tok_.text;
        if (name == "CurrentIndividual") {
          advance();
          return make(CurrentIndividual{}, start, tok_.pos);
        }
        if (name == "Value") {
          advance();
          return make(ValueRef{}, start, tok_.pos);
        }
        fail("unknown builtin '$" + name + "'");
      }
      case Tok::Dollar: {
        advance();
        if (tok_.kind == Tok::Dot) {
          advance();
          if (tok_.kind != Tok::Ident) fail("expected property name after '$.'");
          std::string prop = tok_.text;
          advance();
          return make(PropRef{std::move(prop), nullptr}, start, tok_.pos);
        }
        if (tok_.kind == Tok::LParen) {
          advance();
          if (tok_.kind == Tok::DollarName && tok_.text == "EQ") return parse_query(start);
          ExprPtr of = parse_ternary();
          expect(Tok::RParen, "')'");
          if (tok_.kind != Tok::Dot) fail("'$(...)' must be followed by '.property'");
          advance();
          if (tok_.kind != Tok::Ident) fail("expected property name");
          std::string prop = tok_.text;
          advance();
          return make(PropRef{std::move(prop), std::move(of)}, start, tok_.pos);
        }
        fail("expected '.' or '(' after '$'");
      }
      case Tok::LParen: {
        advance();
        ExprPtr inner = parse_ternary();
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::LBrace:
        fail("action object is only allowed as a whole SetDo expression");
      case Tok::End:
        fail("unexpected end of expression");
      default:
        fail("unexpected token");
    }
  }

  // After `$(` with the current token at `$EQ`.
  ExprPtr parse_query(std::size_t start) {
    Query q;
    bool have_model = false;
    for (;;) {
      if (!(tok_.kind == Tok::DollarName && tok_.text == "EQ")) fail("expected '$EQ' in query");
      advance();
      expect(Tok::Dot, "'.' after '$EQ'");
      if (tok_.kind == Tok::DollarName && tok_.text == "Model") {
        advance();
        expect(Tok::LParen, "'('");
        if (tok_.kind != Tok::String) fail("'$Model' expects a quoted model name");
        if (have_model) fail("query names more than one model");
        q.model = tok_.text;
        have_model = true;
        advance();
        expect(Tok::RParen, "')'");
      } else if (tok_.kind == Tok::Ident) {
        std::string prop = tok_.text;
        advance();
        expect(Tok::LParen, "'('");
        ExprPtr v = parse_ternary();
        expect(Tok::RParen, "')'");
        q.constraints.emplace_back(std::move(prop), std::move(v));
      } else {
        fail("expected '$Model' or a property after '$EQ.'");
      }
      if (tok_.kind == Tok::Comma) {
        advance();
        continue;
      }
      break;
    }
    expect(Tok::RParen, "')' closing query");
    if (!have_model) fail("query lacks '$EQ.$Model(...)'");
    return make(std::move(q), start, tok_.pos);
  }

  std::string_view src_;
  Lexer lexer_;
  Token tok_;
};

}  // namespace

ExprPtr parse_expr(std::string_view text) { return Parser(text).parse_root(); }

ExprPtr parse_action(std::string_view text) { return Parser(text).parse_action_root(); }

}  // namespace eo::expr
