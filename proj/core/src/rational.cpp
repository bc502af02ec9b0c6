#include "causalg/rational.hpp"

#include <cctype>

#include "causalg/errors.hpp"

namespace causalg {

Rational rational_from_string(const std::string& text) {
  if (text.empty()) throw Error("empty rational literal");
  std::size_t slash = text.find('/');
  std::string num = slash == std::string::npos ? text : text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  auto digits_only = [](const std::string& s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  if (!digits_only(num, true) || !digits_only(den, false))
    throw Error("malformed rational literal '" + text + "'");
  mpz_class d(den);
  if (d == 0) throw Error("rational literal with zero denominator: " + text);
  Rational q(mpz_class(num), d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace causalg
