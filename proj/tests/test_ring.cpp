#include <doctest.h>

#include "confsym/errors.hpp"
#include "confsym/phase_poly.hpp"
#include "confsym/rational.hpp"
#include "confsym/signature.hpp"
#include "test_support.hpp"

using namespace confsym;
using testsupport::random_poly;

namespace {

PhasePoly X(int i) { return PhasePoly::x(3, i); }
PhasePoly P(int i) { return PhasePoly::p(3, i); }
PhasePoly R3() { return squared_momentum({1, 1, 1}); }

}  // namespace

TEST_CASE("rationals are canonical and print as num/den") {
  CHECK(format_rational(parse_rational("6/4")) == "3/2");
  CHECK(format_rational(parse_rational("-2")) == "-2/1");
  CHECK(format_rational(parse_rational("0/7")) == "0/1");
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("0.5"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/-2"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
}

TEST_CASE("signature requires n >= 3") {
  CHECK_THROWS_AS(Signature(2, 0), InvalidArgument);
  CHECK_THROWS_AS(Signature(-1, 4), InvalidArgument);
  Signature s(2, 1);
  CHECK(s.n() == 3);
  CHECK(s.eta(1) == 1);
  CHECK(s.eta(2) == -1);
}

TEST_CASE("poly_arith examples") {
  PhasePoly a = X(0) * P(0);
  CHECK(poly_arith(a, -a, PolyOp::Add).is_zero());
  CHECK(poly_arith(P(0), P(0), PolyOp::Mul) == PhasePoly::monomial(3, {0, 0, 0}, {2, 0, 0}));
  PhasePoly half = poly_arith(R3(), R3(), PolyOp::Scale, rational(1, 2));
  CHECK(half.coefficient(PhaseMono{ExpVec::unit(1) + ExpVec::unit(1), {}}) == rational(1, 2));
  CHECK(half.size() == 3);
  CHECK_THROWS_AS(poly_arith(PhasePoly::x(4, 0), X(0), PolyOp::Add), DimensionMismatch);
}

TEST_CASE("partial derivatives") {
  CHECK(partial(X(0) * X(1), VarKind::X, 0) == X(1));
  CHECK(partial(R3(), VarKind::P, 0) == P(0) * Rational(2));
  CHECK(partial(X(0), VarKind::P, 0).is_zero());
  CHECK_THROWS_AS(partial(X(0), VarKind::X, 3), IndexOutOfRange);
  CHECK_THROWS_AS(partial(X(0), VarKind::X, -1), IndexOutOfRange);
}

TEST_CASE("poisson bracket on canonical pairs") {
  CHECK(poisson(P(0), X(0)) == PhasePoly::constant(3, 1));
  CHECK(poisson(X(0), P(0)) == PhasePoly::constant(3, -1));
  CHECK(poisson(R3(), R3()).is_zero());
  PhasePoly f = X(0).pow(3) * X(1) + X(2) * Rational(5);
  CHECK(poisson(P(0), f) == partial(f, VarKind::X, 0));
}

TEST_CASE("ring properties on random polynomials") {
  for (int trial = 0; trial < 40; ++trial) {
    PhasePoly a = random_poly(3, 4, 3, 3);
    PhasePoly b = random_poly(3, 4, 3, 3);
    PhasePoly c = random_poly(3, 4, 3, 3);
    CHECK(poisson(a, b * c) == poisson(a, b) * c + b * poisson(a, c));
    CHECK((poisson(a, poisson(b, c)) + poisson(b, poisson(c, a)) + poisson(c, poisson(a, b))).is_zero());
    CHECK(poisson(a, b) == -poisson(b, a));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        CHECK(partial(partial(a, VarKind::X, i), VarKind::P, j) ==
              partial(partial(a, VarKind::P, j), VarKind::X, i));
      }
    }
  }
}

TEST_CASE("exponent packing keeps graded order and detects overflow") {
  ExpVec a;
  a.set(0, 15);
  ExpVec b = ExpVec::unit(0);
  ExpVec out;
  CHECK_FALSE(a.try_add(b, out));
  CHECK_THROWS_AS(a + b, DegreeOverflow);
  ExpVec c;
  c.set(7, 15);
  CHECK(c.try_add(ExpVec::unit(6), out));
  CHECK(out[7] == 15);
  CHECK(out[6] == 1);
  CHECK(out.degree() == 16);
  CHECK(ExpVec::unit(7) + ExpVec::unit(7) > ExpVec::unit(0));
}
