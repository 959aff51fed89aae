#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace confsym {

// Exact scalars. mpq_class keeps values canonical (reduced, positive
// denominator) after every arithmetic operation.
using Rational = mpq_class;

// Accepts "a", "a/b", with optional sign; no decimals. Throws ParseError.
Rational parse_rational(std::string_view text);

// Always "num/den", e.g. "3/1", "-1/6".
std::string format_rational(const Rational& r);

inline Rational rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace confsym
