#pragma once

// Profile definition language.
//
//   # comment
//   param R = 1
//   f = R * sqrt(-cos(s))
//   g = R^2 * sin(s)
//   domain = (pi/2, 3*pi/2)
//
// Statements end at a newline or ';'. Expressions use + - * / ^ (right
// associative, exponent free of s), unary minus, parentheses, decimal
// literals, the identifiers s, pi and declared parameters, and the functions
// sin cos tan sqrt exp log abs atan. Derivatives in s come from evaluating the
// tree on second-order jets.

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "heisring/errors.hpp"
#include "heisring/jet.hpp"
#include "heisring/profile.hpp"

namespace heisring {

namespace expr {

enum class Func { sin, cos, tan, sqrt, exp, log, abs, atan };

inline std::optional<Func> func_from_name(std::string_view n) {
  if (n == "sin") return Func::sin;
  if (n == "cos") return Func::cos;
  if (n == "tan") return Func::tan;
  if (n == "sqrt") return Func::sqrt;
  if (n == "exp") return Func::exp;
  if (n == "log") return Func::log;
  if (n == "abs") return Func::abs;
  if (n == "atan") return Func::atan;
  return std::nullopt;
}

struct Node {
  enum class Kind { number, variable, constant, neg, add, sub, mul, div, pow, call };
  Kind kind = Kind::number;
  double value = 0.0;  // number, or resolved constant / parameter
  std::string name;    // identifier as written
  Func func = Func::sin;
  std::unique_ptr<Node> lhs, rhs;
  std::size_t line = 0, column = 0;
};

using NodePtr = std::unique_ptr<Node>;

inline bool depends_on_s(const Node& n) {
  if (n.kind == Node::Kind::variable) return true;
  return (n.lhs && depends_on_s(*n.lhs)) || (n.rhs && depends_on_s(*n.rhs));
}

template <class T>
T apply(Func f, const T& x) {
  using std::abs, std::atan, std::cos, std::exp, std::log, std::sin, std::sqrt, std::tan;
  switch (f) {
    case Func::sin: return sin(x);
    case Func::cos: return cos(x);
    case Func::tan: return tan(x);
    case Func::sqrt: return sqrt(x);
    case Func::exp: return exp(x);
    case Func::log: return log(x);
    case Func::abs: return abs(x);
    case Func::atan: return atan(x);
  }
  return x;
}

/// Evaluates the tree with the variable s bound to `s` (a double or a Jet).
template <class T>
T eval(const Node& n, const T& s) {
  switch (n.kind) {
    case Node::Kind::number:
    case Node::Kind::constant: return T(n.value);
    case Node::Kind::variable: return s;
    case Node::Kind::neg: return -eval(*n.lhs, s);
    case Node::Kind::add: return eval(*n.lhs, s) + eval(*n.rhs, s);
    case Node::Kind::sub: return eval(*n.lhs, s) - eval(*n.rhs, s);
    case Node::Kind::mul: return eval(*n.lhs, s) * eval(*n.rhs, s);
    case Node::Kind::div: return eval(*n.lhs, s) / eval(*n.rhs, s);
    case Node::Kind::pow: {
      using std::pow;
      // The exponent is free of s, so evaluate it as a plain number.
      const double p = eval(*n.rhs, 0.0);
      return pow(eval(*n.lhs, s), p);
    }
    case Node::Kind::call: return apply(n.func, eval(*n.lhs, s));
  }
  return s;
}

struct Token {
  enum class Kind { number, ident, op, newline, end };
  Kind kind = Kind::end;
  std::string text;
  double value = 0.0;
  std::size_t line = 1, column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_blank();
      Token t;
      t.line = line_;
      t.column = col_;
      if (pos_ >= src_.size()) {
        t.kind = Token::Kind::end;
        out.push_back(t);
        return out;
      }
      const char c = src_[pos_];
      if (c == '\n' || c == ';') {
        t.kind = Token::Kind::newline;
        t.text = std::string(1, c);
        advance();
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        t.kind = Token::Kind::number;
        const char* first = src_.data() + pos_;
        const char* last = src_.data() + src_.size();
        auto [ptr, ec] = std::from_chars(first, last, t.value);
        if (ec != std::errc() || ptr == first) throw ParseError("malformed number", t.line, t.column);
        t.text.assign(first, ptr);
        for (std::size_t k = 0; k < t.text.size(); ++k) advance();
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = Token::Kind::ident;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
          t.text.push_back(src_[pos_]);
          advance();
        }
      } else if (std::string_view("+-*/^(),=").find(c) != std::string_view::npos) {
        t.kind = Token::Kind::op;
        t.text = std::string(1, c);
        advance();
      } else {
        throw ParseError(std::string("unexpected character '") + c + "'", t.line, t.column);
      }
      out.push_back(std::move(t));
    }
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r') {
        advance();
      } else {
        return;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

/// The parsed statements of a profile text.
struct ProfileAst {
  NodePtr f, g, lo, hi;
  std::map<std::string, double> params;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(Lexer(src).run()) {}

  ProfileAst run() {
    ProfileAst ast;
    std::vector<std::pair<std::string, NodePtr>> param_exprs;
    while (true) {
      while (peek().kind == Token::Kind::newline) ++i_;
      if (peek().kind == Token::Kind::end) break;
      const Token head = next();
      if (head.kind != Token::Kind::ident) fail("expected a statement", head);
      if (head.text == "param") {
        const Token name = next();
        if (name.kind != Token::Kind::ident) fail("expected a parameter name", name);
        if (name.text == "s" || name.text == "pi" || func_from_name(name.text) || is_keyword(name.text))
          fail("reserved name '" + name.text + "'", name);
        if (ast.params.count(name.text)) fail("parameter '" + name.text + "' declared twice", name);
        expect("=");
        NodePtr e = expression();
        resolve(*e, ast.params);
        if (depends_on_s(*e)) fail("parameter value must not depend on s", name);
        ast.params[name.text] = expr::eval(*e, 0.0);
        param_exprs.emplace_back(name.text, std::move(e));
      } else if (head.text == "f" || head.text == "g") {
        NodePtr& slot = head.text == "f" ? ast.f : ast.g;
        if (slot) fail("'" + head.text + "' defined twice", head);
        expect("=");
        slot = expression();
      } else if (head.text == "domain") {
        if (ast.lo) fail("'domain' defined twice", head);
        expect("=");
        expect("(");
        ast.lo = expression();
        expect(",");
        ast.hi = expression();
        expect(")");
        domain_tok_ = head;
      } else {
        fail("unknown statement '" + head.text + "'", head);
      }
      const Token& end = peek();
      if (end.kind != Token::Kind::newline && end.kind != Token::Kind::end)
        fail("expected end of statement", end);
    }
    const Token& eof = peek();
    if (!ast.f) fail("missing statement 'f = ...'", eof);
    if (!ast.g) fail("missing statement 'g = ...'", eof);
    if (!ast.lo) fail("missing statement 'domain = (lo, hi)'", eof);
    resolve(*ast.f, ast.params);
    resolve(*ast.g, ast.params);
    resolve(*ast.lo, ast.params);
    resolve(*ast.hi, ast.params);
    if (depends_on_s(*ast.lo) || depends_on_s(*ast.hi)) fail("domain bounds must not depend on s", domain_tok_);
    const double lo = expr::eval(*ast.lo, 0.0), hi = expr::eval(*ast.hi, 0.0);
    if (!std::isfinite(lo) || !std::isfinite(hi)) fail("domain bounds are not finite", domain_tok_);
    if (!(lo < hi)) fail("empty domain", domain_tok_);
    return ast;
  }

 private:
  static bool is_keyword(std::string_view n) { return n == "f" || n == "g" || n == "domain" || n == "param"; }

  [[noreturn]] static void fail(const std::string& what, const Token& at) {
    throw ParseError(what, at.line, at.column);
  }

  const Token& peek() const { return toks_[i_]; }
  Token next() {
    Token t = toks_[i_];
    if (t.kind != Token::Kind::end) ++i_;
    return t;
  }
  bool accept(std::string_view op) {
    if (peek().kind == Token::Kind::op && peek().text == op) {
      ++i_;
      return true;
    }
    return false;
  }
  void expect(std::string_view op) {
    if (!accept(op)) fail("expected '" + std::string(op) + "'", peek());
  }

  static NodePtr make(Node::Kind k, const Token& at, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
    auto n = std::make_unique<Node>();
    n->kind = k;
    n->line = at.line;
    n->column = at.column;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
  }

  NodePtr expression() {
    NodePtr lhs = term();
    while (true) {
      const Token at = peek();
      if (accept("+")) lhs = make(Node::Kind::add, at, std::move(lhs), term());
      else if (accept("-")) lhs = make(Node::Kind::sub, at, std::move(lhs), term());
      else return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    while (true) {
      const Token at = peek();
      if (accept("*")) lhs = make(Node::Kind::mul, at, std::move(lhs), unary());
      else if (accept("/")) lhs = make(Node::Kind::div, at, std::move(lhs), unary());
      else return lhs;
    }
  }

  NodePtr unary() {
    const Token at = peek();
    if (accept("-")) return make(Node::Kind::neg, at, unary());
    if (accept("+")) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    const Token at = peek();
    if (accept("^")) {
      NodePtr ex = unary();
      if (depends_on_s(*ex)) fail("exponent must not depend on s", at);
      return make(Node::Kind::pow, at, std::move(base), std::move(ex));
    }
    return base;
  }

  NodePtr primary() {
    const Token t = next();
    if (t.kind == Token::Kind::number) {
      NodePtr n = make(Node::Kind::number, t);
      n->value = t.value;
      return n;
    }
    if (t.kind == Token::Kind::ident) {
      if (const auto f = func_from_name(t.text)) {
        if (!accept("(")) fail("expected '(' after function '" + t.text + "'", peek());
        NodePtr arg = expression();
        expect(")");
        NodePtr n = make(Node::Kind::call, t, std::move(arg));
        n->func = *f;
        n->name = t.text;
        return n;
      }
      NodePtr n = make(t.text == "s" ? Node::Kind::variable : Node::Kind::constant, t);
      n->name = t.text;
      return n;
    }
    if (t.kind == Token::Kind::op && t.text == "(") {
      NodePtr inner = expression();
      expect(")");
      return inner;
    }
    fail(t.kind == Token::Kind::end ? "unexpected end of input" : "unexpected '" + t.text + "'", t);
  }

  /// Binds pi and parameters; anything else but s is an unknown identifier.
  static void resolve(Node& n, const std::map<std::string, double>& params) {
    if (n.kind == Node::Kind::constant) {
      if (n.name == "pi") {
        n.value = std::numbers::pi;
      } else if (const auto it = params.find(n.name); it != params.end()) {
        n.value = it->second;
      } else {
        throw ParseError("unknown identifier '" + n.name + "'", n.line, n.column);
      }
    }
    if (n.lhs) resolve(*n.lhs, params);
    if (n.rhs) resolve(*n.rhs, params);
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  Token domain_tok_;
};

}  // namespace expr

/// Parses profile text into a curve whose derivatives come from jets.
inline ProfileCurve parse_profile(std::string_view text, std::string name = "profile") {
  auto ast = std::make_shared<expr::ProfileAst>(expr::Parser(text).run());
  const Interval dom{expr::eval(*ast->lo, 0.0), expr::eval(*ast->hi, 0.0)};
  ProfileCurve::Evaluator ev = [ast](double s) {
    const Jet x = Jet::variable(s);
    return make_profile_jet(expr::eval(*ast->f, x), expr::eval(*ast->g, x));
  };
  return ProfileCurve(std::move(name), dom, std::move(ev), ast->params);
}

/// Reads and parses a profile file. Throws std::ios_base::failure when the file
/// cannot be read.
inline ProfileCurve load_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot read profile file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_profile(ss.str(), path);
}

}  // namespace heisring
