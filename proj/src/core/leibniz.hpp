#pragma once

#include <utility>
#include <vector>

#include "confsym/expvec.hpp"
#include "confsym/rational.hpp"

namespace confsym::detail {

// d^c o x^m = sum_g coef(g) x^(m-g) d^(c-g); returns the pairs (g, coef).
// Entries are cached per (c, m).
const std::vector<std::pair<ExpVec, Rational>>& leibniz_terms(ExpVec c, ExpVec m);

// d^c x^m = coef * x^(m-c), or 0 when c does not divide m.
Rational falling_factor(ExpVec c, ExpVec m);

}  // namespace confsym::detail
