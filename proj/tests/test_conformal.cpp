#include <doctest.h>

#include "confsym/conformal.hpp"
#include "confsym/errors.hpp"
#include "test_support.hpp"

using namespace confsym;
using testsupport::random_poly;

namespace {

const Signature kSigs[] = {Signature(3, 0), Signature(2, 1), Signature(4, 0), Signature(2, 2)};

DenseVec unit(int d, int a, const Rational& c = 1) {
  DenseVec v(d, Rational(0));
  v[a] = c;
  return v;
}

// Ambient matrices must preserve the light-cone form: A^T g + g A = 0.
bool preserves_form(const Matrix& a, const Signature& sig) {
  const int amb = sig.n() + 2;
  Matrix g(amb, DenseVec(amb, Rational(0)));
  g[0][amb - 1] = 1;
  g[amb - 1][0] = 1;
  for (int i = 0; i < sig.n(); ++i) g[1 + i][1 + i] = sig.eta(i);
  Matrix ga = multiply(g, a);
  for (int i = 0; i < amb; ++i) {
    for (int j = 0; j < amb; ++j) {
      if (ga[i][j] + ga[j][i] != 0) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("generator list") {
  auto alg = conformal_algebra(Signature(3, 0));
  CHECK(alg->dim() == 10);
  CHECK(conformal_algebra(Signature(4, 0))->dim() == 15);
  CHECK(conformal_algebra(Signature(3, 3))->dim() == 28);
  const int n = 3;
  CHECK(alg->generator(alg->index_of("E")).divergence == PhasePoly::constant(n, 3));
  CHECK(alg->generator(alg->index_of("P2")).divergence.is_zero());
  CHECK(alg->generator(alg->index_of("K1")).divergence == PhasePoly::x(n, 0) * Rational(6));
  auto e = alg->index_of("E");
  for (int i = 0; i < n; ++i) {
    auto p = alg->index_of("P" + std::to_string(i + 1));
    auto k = alg->index_of("K" + std::to_string(i + 1));
    CHECK(alg->bracket(e, p) == unit(alg->dim(), p, -1));
    CHECK(alg->bracket(e, k) == unit(alg->dim(), k, 1));
  }
  CHECK_THROWS_AS(alg->index_of("Q1"), InvalidArgument);
}

TEST_CASE("special conformal divergence in mixed signature") {
  Signature sig(2, 1);
  auto alg = conformal_algebra(sig);
  // Div K_i = 2n x_i with the index lowered by the metric.
  CHECK(alg->generator(alg->index_of("K3")).divergence == PhasePoly::x(3, 2) * Rational(-6));
}

TEST_CASE("vector-field and ambient structure constants agree") {
  for (const auto& sig : kSigs) {
    auto alg = conformal_algebra(sig);
    CHECK(alg->brackets_agree());
    for (const auto& g : alg->generators()) CHECK(preserves_form(g.ambient, sig));
  }
}

TEST_CASE("Killing form") {
  for (const auto& sig : kSigs) {
    auto alg = conformal_algebra(sig);
    const int e = alg->index_of("E");
    CHECK(alg->killing_matrix()[e][e] == 1);
    for (int i = 0; i < sig.n(); ++i) {
      for (int j = 0; j < sig.n(); ++j) CHECK(alg->killing_matrix()[i][j] == 0);
    }
    CHECK(alg->killing_determinant() != 0);
    // ad-invariance on the full basis.
    const int d = alg->dim();
    for (int z = 0; z < d; ++z) {
      for (int x = 0; x < d; ++x) {
        for (int y = 0; y < d; ++y) {
          Rational s = 0;
          for (int c = 0; c < d; ++c) {
            s += alg->bracket(z, x)[c] * alg->killing_matrix()[c][y];
            s += alg->bracket(z, y)[c] * alg->killing_matrix()[x][c];
          }
          CHECK(s == 0);
        }
      }
    }
  }
}

TEST_CASE("lie_density examples and morphism property") {
  Signature sig(3, 0);
  auto alg = conformal_algebra(sig);
  const Rational lam = rational(1, 5);
  CHECK(lie_density(alg->generator(0), lam).symbol() == PhasePoly::p(3, 0));
  PhasePoly euler(3);
  for (int i = 0; i < 3; ++i) euler += PhasePoly::x(3, i) * PhasePoly::p(3, i);
  CHECK(lie_density(alg->generator(alg->index_of("E")), lam).symbol() ==
        euler + PhasePoly::constant(3, 3 * lam));
  CHECK(lie_density(alg->generator(alg->index_of("K2")), 0).symbol() ==
        moment(alg->generator(alg->index_of("K2"))));

  for (const auto& s : kSigs) {
    auto al = conformal_algebra(s);
    const Rational n = s.n();
    for (const Rational& l : {Rational(0), rational(1, 2), Rational((n - 2) / (2 * n))}) {
      for (int a = 0; a < al->dim(); ++a) {
        for (int b = 0; b < al->dim(); ++b) {
          DiffOp lhs(PhasePoly(s.n()), l, l);
          const DenseVec& c = al->bracket(a, b);
          for (int k = 0; k < al->dim(); ++k) {
            if (c[k] != 0) lhs += lie_density(al->generator(k), l) * c[k];
          }
          DiffOp la = lie_density(al->generator(a), l);
          DiffOp lb = lie_density(al->generator(b), l);
          CHECK(lhs == compose(la, lb) - compose(lb, la));
        }
      }
    }
  }
}

TEST_CASE("lie_symbol examples and morphism property") {
  Signature sig(3, 0);
  auto alg = conformal_algebra(sig);
  const PhasePoly r = squared_momentum({1, 1, 1});
  const auto& e = alg->generator(alg->index_of("E"));
  for (const Rational& delta : {Rational(0), rational(2, 3), rational(7, 4)}) {
    CHECK(op_apply(lie_symbol(e, delta), r) == r * (3 * delta - 2));
    CHECK(lie_symbol(alg->generator(1), delta) == PhaseOp::d_x(3, 1));
  }
  for (int t = 0; t < 5; ++t) {
    PhasePoly f = random_poly(3, 5, 3, 3);
    for (const auto& g : alg->generators()) CHECK(op_apply(lie_symbol(g, 0), f) == poisson(moment(g), f));
  }
  for (const auto& s : {Signature(3, 0), Signature(2, 1)}) {
    auto al = conformal_algebra(s);
    for (const Rational& delta : {Rational(0), rational(2, 3)}) {
      for (int a = 0; a < al->dim(); ++a) {
        for (int b = 0; b < al->dim(); ++b) {
          PhaseOp lhs(s.n());
          const DenseVec& c = al->bracket(a, b);
          for (int k = 0; k < al->dim(); ++k) {
            if (c[k] != 0) lhs += lie_symbol(al->generator(k), delta) * c[k];
          }
          CHECK(lhs == commutator(lie_symbol(al->generator(a), delta), lie_symbol(al->generator(b), delta)));
        }
      }
    }
  }
}

TEST_CASE("lie_operator examples") {
  for (const auto& sig : kSigs) {
    auto alg = conformal_algebra(sig);
    const Rational n = sig.n();
    const Rational lam = (n - 2) / (2 * n);
    const Rational mu = (n + 2) / (2 * n);
    DiffOp lap = laplacian_power(sig, 1, lam);
    CHECK(lap.mu() == mu);
    for (const auto& g : alg->generators()) CHECK(lie_operator(g, lam, mu, lap).is_zero());
    DiffOp lap0 = lap.with_weights(0, 0);
    CHECK(lie_operator(alg->generator(alg->index_of("E")), 0, 0, lap0) == lap0 * Rational(-2));
    DiffOp id = DiffOp::identity(sig.n(), rational(1, 3));
    for (const auto& g : alg->generators()) CHECK(lie_operator(g, rational(1, 3), rational(1, 3), id).is_zero());
  }
  auto alg = conformal_algebra(Signature(3, 0));
  CHECK_THROWS_AS(lie_operator(alg->generator(0), 0, 1, DiffOp::identity(3, 0)), WeightMismatch);
}

TEST_CASE("lie_operator is a derivation of composition") {
  Signature sig(2, 1);
  auto alg = conformal_algebra(sig);
  const Rational l = rational(1, 7), v = rational(2, 5), m = rational(-1, 3);
  for (int t = 0; t < 6; ++t) {
    DiffOp b(random_poly(3, 3, 2, 2), l, v);
    DiffOp a(random_poly(3, 3, 2, 2), v, m);
    for (const auto& g : alg->generators()) {
      CHECK(lie_operator(g, l, m, compose(a, b)) ==
            compose(lie_operator(g, v, m, a), b) + compose(a, lie_operator(g, l, v, b)));
    }
  }
}

TEST_CASE("operator action transported to symbols") {
  for (const Signature sig : {Signature(3, 0), Signature(2, 1)}) {
    auto alg = conformal_algebra(sig);
    const Rational l = rational(2, 9), m = rational(-3, 4);
    for (const auto& g : alg->generators()) {
      const PhaseOp act = operator_action_on_symbols(g, l, m);
      for (int t = 0; t < 4; ++t) {
        const PhasePoly s = random_poly(3, 4, 3, 3);
        CHECK(op_apply(act, s) == lie_operator(g, l, m, DiffOp(s, l, m)).symbol());
      }
    }
  }
}
