#include "causalg/parser.hpp"

#include <cctype>

#include "causalg/errors.hpp"

namespace causalg {
namespace {

class Parser {
 public:
  Parser(const std::string& text, const TablePtr& table, VarKind kind)
      : text_(text), table_(table), kind_(kind) {}

  Polynomial run() {
    skip_ws();
    Polynomial p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  bool consume(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    // Leading sign accepted so printed polynomials always round-trip.
    bool negate = false;
    skip_ws();
    if (consume('-'))
      negate = true;
    else
      consume('+');
    Polynomial p = term();
    if (negate) p = -p;
    while (true) {
      skip_ws();
      if (consume('+')) {
        p += term();
      } else if (consume('-')) {
        p -= term();
      } else {
        break;
      }
    }
    return p;
  }

  Polynomial term() {
    Polynomial p = factor();
    while (true) {
      skip_ws();
      if (consume('*'))
        p *= factor();
      else
        break;
    }
    return p;
  }

  Polynomial factor() {
    Polynomial base_poly = base();
    skip_ws();
    if (consume('^')) {
      skip_ws();
      std::string digits = read_digits();
      if (digits.empty()) fail("expected positive integer exponent");
      unsigned long e = std::stoul(digits);
      if (e == 0) fail("exponent must be positive");
      return base_poly.pow(static_cast<unsigned>(e));
    }
    return base_poly;
  }

  std::string read_digits() {
    std::string out;
    while (std::isdigit(static_cast<unsigned char>(peek()))) out += text_[pos_++];
    return out;
  }

  Polynomial base() {
    skip_ws();
    char c = peek();
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      skip_ws();
      if (!consume(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return rational_literal();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
      return identifier();
    fail("expected rational, identifier or '('");
  }

  Polynomial rational_literal() {
    std::string num = read_digits();
    if (peek() == '.') fail("decimal literals are forbidden");
    Rational value{mpz_class(num)};
    if (consume('/')) {
      std::size_t den_pos = pos_;
      std::string den = read_digits();
      if (den.empty()) fail("expected denominator");
      mpz_class d(den);
      if (d == 0) {
        pos_ = den_pos;
        fail("rational literal with zero denominator");
      }
      value = Rational(mpz_class(num), d);
      value.canonicalize();
    }
    return Polynomial::constant(table_, value);
  }

  Polynomial identifier() {
    std::string name;
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')
      name += text_[pos_++];
    if (peek() == '(') {
      // Argument list captured verbatim (balanced parentheses).
      int depth = 0;
      do {
        char c = peek();
        if (c == '\0') fail("unterminated argument list");
        if (c == '(') ++depth;
        if (c == ')') --depth;
        name += text_[pos_++];
      } while (depth > 0);
    }
    int var = table_->intern(name, kind_);
    return Polynomial::variable(table_, var);
  }

  const std::string& text_;
  TablePtr table_;
  VarKind kind_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(const std::string& text, const TablePtr& table,
                            VarKind kind) {
  return Parser(text, table, kind).run();
}

}  // namespace causalg
