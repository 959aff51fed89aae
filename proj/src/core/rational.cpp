#include "confsym/rational.hpp"

#include <cctype>

#include "confsym/errors.hpp"

namespace confsym {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (s[0] == '-' || s[0] == '+') i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? "1" : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+') {
    throw ParseError("unparseable rational: '" + std::string(text) + "'");
  }
  mpz_class a{std::string(num[0] == '+' ? num.substr(1) : num)};
  mpz_class b{std::string(den)};
  if (b == 0) throw ParseError("zero denominator in rational: '" + std::string(text) + "'");
  Rational r(a, b);
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

}  // namespace confsym
