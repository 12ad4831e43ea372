#pragma once

#include <cctype>
#include <cstdlib>
#include <string>
#include <string_view>

#include "kfield/errors.hpp"
#include "kfield/expr.hpp"

namespace kfield {

// Recursive-descent parser for the expression syntax used in system files
// and on the command line:
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := atom ('^' integer)?
//   atom    := number | name | name '(' expr ')' | '(' expr ')'
//
// Exponents are integer literals. Recognized functions: sin, cos, exp.
// `pi` is a reserved name for the constant. Variable names match
// [A-Za-z][A-Za-z0-9_]*. Errors carry 1-based line and column.
class ExpressionParser {
public:
  explicit ExpressionParser(std::string_view text, int line_offset = 1, int column_offset = 1)
      : text_(text), line_(line_offset), col_(column_offset) {}

  Expression parse() {
    Expression e = parse_sum();
    skip_ws();
    if (pos_ < text_.size()) fail("unexpected trailing input");
    return e;
  }

private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(line_, col_, message); }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i, ++pos_) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
    }
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance(1);
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    advance(1);
    return true;
  }

  Expression parse_sum() {
    Expression e = parse_term();
    for (;;) {
      if (accept('+')) {
        e = e + parse_term();
      } else if (accept('-')) {
        e = e - parse_term();
      } else {
        return e;
      }
    }
  }

  Expression parse_term() {
    Expression e = parse_unary();
    for (;;) {
      if (accept('*')) {
        e = e * parse_unary();
      } else if (accept('/')) {
        e = e / parse_unary();
      } else {
        return e;
      }
    }
  }

  Expression parse_unary() {
    if (accept('-')) return -parse_unary();
    return parse_power();
  }

  Expression parse_power() {
    Expression base = parse_atom();
    if (accept('^')) {
      skip_ws();
      bool negative = false;
      if (pos_ < text_.size() && text_[pos_] == '-') {
        negative = true;
        advance(1);
      }
      skip_ws();
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        fail("exponent must be an integer literal");
      long value = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        value = value * 10 + (text_[pos_] - '0');
        if (value > 1000000) fail("exponent too large");
        advance(1);
      }
      if (peek('^')) fail("chained '^' needs parentheses");
      return pow(base, static_cast<int>(negative ? -value : value));
    }
    return base;
  }

  Expression parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    char c = text_[pos_];
    if (c == '(') {
      advance(1);
      Expression e = parse_sum();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_name();
    fail(std::string("unexpected character '") + c + "'");
  }

  Expression parse_number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance(1);
    if (pos_ < text_.size() && text_[pos_] == '.') {
      advance(1);
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance(1);
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t mark = pos_;
      int mark_col = col_;
      advance(1);
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) advance(1);
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance(1);
      } else {
        // the 'e' starts a following name, not an exponent
        pos_ = mark;
        col_ = mark_col;
      }
    }
    std::string token(text_.substr(start, pos_ - start));
    char* end = nullptr;
    double value = std::strtod(token.c_str(), &end);
    if (end == nullptr || *end != '\0') fail("malformed number '" + token + "'");
    return Expression::constant(value);
  }

  Expression parse_name() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      advance(1);
    std::string name(text_.substr(start, pos_ - start));
    if (name == "pi") return Expression::constant(3.14159265358979323846);
    if (name == "sin" || name == "cos" || name == "exp") {
      if (!accept('(')) fail("expected '(' after " + name);
      Expression arg = parse_sum();
      if (!accept(')')) fail("expected ')'");
      if (name == "sin") return sin(arg);
      if (name == "cos") return cos(arg);
      return exp(arg);
    }
    return Expression::variable(std::move(name));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_;
  int col_;
};

inline Expression parse_expression(std::string_view text, int line_offset = 1,
                                   int column_offset = 1) {
  return ExpressionParser(text, line_offset, column_offset).parse();
}

}  // namespace kfield
