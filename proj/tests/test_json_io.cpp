#include <doctest.h>

#include "confsym/conformal.hpp"
#include "confsym/errors.hpp"
#include "confsym/json_io.hpp"
#include "test_support.hpp"

using namespace confsym;
using namespace testsupport;

TEST_CASE("rationals round-trip through strings") {
  for (const Rational& r : {Rational(0), rational(-7, 3), rational(12, 8), Rational(5)}) {
    CHECK(rational_from_json(rational_to_json(r)) == r);
  }
  CHECK(rational_from_json(Json("3")) == Rational(3));
  CHECK(rational_from_json(Json(-2)) == Rational(-2));
  CHECK_THROWS_AS(rational_from_json(Json("1/0")), ParseError);
  CHECK_THROWS_AS(rational_from_json(Json("a/2")), ParseError);
}

TEST_CASE("polynomials, operators and symmetry pairs round-trip") {
  for (int t = 0; t < 10; ++t) {
    const PhasePoly f = random_poly(4, 5, 3, 3);
    CHECK(poly_from_json(poly_to_json(f)) == f);
    const DiffOp d(f, rational(1, 3), rational(5, 6));
    CHECK(diff_op_from_json(diff_op_to_json(d)) == d);
    const PhaseOp a = op_compose(PhaseOp::multiplication(f), PhaseOp::d_x(4, 1)) + PhaseOp::d_p(4, 2);
    CHECK(phase_op_from_json(phase_op_to_json(a)) == a);
  }
  const Signature sig(3, 0);
  const auto [lambda, mu] = symmetry_weights(1, sig);
  const SymmetryPair pair{DiffOp(random_poly(3, 3, 1, 2), lambda, lambda), DiffOp(random_poly(3, 3, 1, 2), mu, mu), 1};
  const SymmetryPair back = symmetry_pair_from_json(symmetry_pair_to_json(pair));
  CHECK(back.d1 == pair.d1);
  CHECK(back.d2 == pair.d2);
  CHECK(back.ell == 1);
}

TEST_CASE("enveloping elements round-trip through label words") {
  const Signature sig(2, 1);
  const EnvElement c = casimir(sig);
  CHECK(env_from_json(env_to_json(c)) == c);
  EnvElement u(EnvKind::Enveloping, sig);
  u.add_word({0, 3}, rational(2, 5));
  u.add_word({5}, Rational(-1));
  CHECK(env_from_json(env_to_json(u)) == u);
}

TEST_CASE("documents carry schema version and type") {
  const Json doc = document("PhasePoly", poly_to_json(PhasePoly(3)));
  CHECK(doc.at("schema_version") == kSchemaVersion);
  CHECK(&expect_document(doc, "PhasePoly") == &doc);
  CHECK_THROWS_AS(expect_document(doc, "DiffOp"), ParseError);
  Json future = doc;
  future["schema_version"] = kSchemaVersion + 1;
  CHECK_THROWS_AS(expect_document(future, "PhasePoly"), ParseError);
  CHECK_THROWS_AS(parse_json("{\"n\": "), ParseError);
  CHECK(parse_json(dump_json(doc)) == doc);
}

TEST_CASE("malformed polynomials are rejected") {
  Json j = poly_to_json(random_poly(3, 2, 1, 1));
  j["terms"][0]["x"] = Json::array({1, 0});
  CHECK_THROWS(poly_from_json(j));
  Json k = poly_to_json(PhasePoly(3));
  k["terms"] = Json::array({Json{{"x", {0, 0, -1}}, {"p", {0, 0, 0}}, {"coeff", "1"}}});
  CHECK_THROWS(poly_from_json(k));
}
