#include <doctest.h>

#include "confsym/enveloping.hpp"
#include "confsym/linalg.hpp"
#include "test_support.hpp"

using namespace confsym;
using namespace testsupport;

namespace {

EnvElement gen(const Signature& sig, const std::string& label, EnvKind kind = EnvKind::Enveloping) {
  return EnvElement::generator(kind, sig, conformal_algebra(sig)->index_of(label));
}

EnvElement sym2(const Signature& sig, int a, int b) {
  EnvElement e(EnvKind::Symmetric, sig);
  e.add_word({a, b}, 1);
  return e;
}

EnvElement bracket_element(const Signature& sig, int a, int b) {
  const DenseVec& c = conformal_algebra(sig)->bracket(a, b);
  EnvElement e(EnvKind::Enveloping, sig);
  for (std::size_t k = 0; k < c.size(); ++k) e.add_word({static_cast<int>(k)}, c[k]);
  return e;
}

// ell(C)(1) at x = 0 from the fields alone:
// sum K^{ab} (lambda X_a . grad Div X_b + lambda^2 Div X_a Div X_b)(0).
Rational casimir_on_constants(const Signature& sig, const Rational& lambda) {
  auto alg = conformal_algebra(sig);
  const int n = sig.n();
  auto at_origin = [&](const PhasePoly& f) { return f.coefficient(PhaseMono{}); };
  Rational total = 0;
  for (int a = 0; a < alg->dim(); ++a) {
    for (int b = 0; b < alg->dim(); ++b) {
      const Rational k = alg->killing_inverse()[a][b];
      if (k == 0) continue;
      const auto& xa = alg->generator(a);
      const auto& xb = alg->generator(b);
      Rational v = lambda * lambda * at_origin(xa.divergence) * at_origin(xb.divergence);
      for (int i = 0; i < n; ++i) {
        v += lambda * at_origin(xa.field[i]) * at_origin(partial(xb.divergence, VarKind::X, i));
      }
      total += k * v;
    }
  }
  return total;
}

bool in_span(const std::vector<EnvElement>& basis, const EnvElement& e) {
  Indexer<Word> index;
  auto vec = [&](const EnvElement& u) {
    std::vector<std::pair<std::uint32_t, Rational>> entries;
    for (const auto& [w, c] : u.coeffs()) entries.emplace_back(index.id(w), c);
    return normalize(std::move(entries));
  };
  SparseEchelon span;
  for (const auto& b : basis) span.insert(vec(b));
  return span.contains(vec(e));
}

}  // namespace

TEST_CASE("enveloping algebra arithmetic") {
  const Signature sig(3, 0);
  auto alg = conformal_algebra(sig);
  const EnvElement k1 = gen(sig, "K1"), p1 = gen(sig, "P1"), e = gen(sig, "E");
  // X Y - Y X = [X, Y].
  for (int a = 0; a < alg->dim(); a += 3) {
    for (int b = 0; b < alg->dim(); b += 2) {
      const EnvElement xa = EnvElement::generator(EnvKind::Enveloping, sig, a);
      const EnvElement xb = EnvElement::generator(EnvKind::Enveloping, sig, b);
      CHECK(xa * xb - xb * xa == bracket_element(sig, a, b));
    }
  }
  CHECK((k1 * p1) * e == k1 * (p1 * e));
  CHECK((e * k1) * p1 == e * (k1 * p1));
  const EnvElement s = gen(sig, "K1", EnvKind::Symmetric) * gen(sig, "P1", EnvKind::Symmetric);
  CHECK(s == gen(sig, "P1", EnvKind::Symmetric) * gen(sig, "K1", EnvKind::Symmetric));
  CHECK_THROWS_AS(k1 * k1 * k1 * k1 * k1, DegreeOverflow);
  CHECK_THROWS_AS(k1 * s, InvalidArgument);
  CHECK(k1.to_string() == "K1");
}

TEST_CASE("pbw symmetrization") {
  const Signature sig(3, 0);
  auto alg = conformal_algebra(sig);
  const int p1 = alg->index_of("P1"), k1 = alg->index_of("K1");
  CHECK(pbw(EnvElement::generator(EnvKind::Symmetric, sig, k1)) == EnvElement::generator(EnvKind::Enveloping, sig, k1));
  // X Y -> XY - [X,Y]/2 with X before Y in the ordered basis.
  const EnvElement xy = EnvElement::generator(EnvKind::Enveloping, sig, p1) *
                        EnvElement::generator(EnvKind::Enveloping, sig, k1);
  CHECK(pbw(sym2(sig, p1, k1)) == xy - bracket_element(sig, p1, k1) * rational(1, 2));
  CHECK(casimir_operator(sig) == pbw(casimir(sig)));
  CHECK_THROWS_AS(pbw(xy), InvalidArgument);
}

TEST_CASE("pbw is equivariant") {
  const Signature sig(2, 1);
  auto alg = conformal_algebra(sig);
  for (int x = 0; x < alg->dim(); x += 2) {
    for (int a = 0; a < alg->dim(); a += 3) {
      for (int b = a; b < alg->dim(); b += 4) {
        const EnvElement u = sym2(sig, a, b);
        CHECK(pbw(adjoint(x, u)) == adjoint(x, pbw(u)));
      }
    }
  }
}

TEST_CASE("moment pullbacks") {
  for (const auto& sig : {Signature(3, 0), Signature(2, 2)}) {
    auto alg = conformal_algebra(sig);
    const int n = sig.n();
    for (int i = 0; i < n; ++i) {
      const EnvElement pi = EnvElement::generator(EnvKind::Symmetric, sig, alg->index_of("P" + std::to_string(i + 1)));
      CHECK(moment_pullback(pi, PullbackTarget::Model) == PhasePoly::p(n, i));
    }
    CHECK(moment_pullback(casimir(sig), PullbackTarget::Model).is_zero());
    CHECK(moment_pullback(casimir(sig), PullbackTarget::Ambient) == ambient_casimir_function(sig));
    // Poisson morphism on the ambient phase space.
    for (int a = 0; a < alg->dim(); a += 2) {
      for (int b = 1; b < alg->dim(); b += 3) {
        const DenseVec& c = alg->bracket(a, b);
        PhasePoly expected(n + 2);
        for (std::size_t k = 0; k < c.size(); ++k) expected.add_scaled(ambient_moment(alg->generator(k)), c[k]);
        CHECK(poisson(ambient_moment(alg->generator(a)), ambient_moment(alg->generator(b))) == expected);
      }
    }
  }
}

TEST_CASE("ell morphism") {
  const Signature sig(3, 0);
  auto alg = conformal_algebra(sig);
  const Rational lambda = rational(2, 7);
  const int p1 = alg->index_of("P1"), p2 = alg->index_of("P2");
  EnvElement u(EnvKind::Enveloping, sig);
  u.add_word({p1, p2}, 1);
  CHECK(ell_morphism(u, lambda) == DiffOp(PhasePoly::p(3, 0) * PhasePoly::p(3, 1), lambda, lambda));
  for (const auto& g : alg->generators()) {
    const EnvElement x = EnvElement::generator(EnvKind::Enveloping, sig, alg->index_of(g.label));
    CHECK(ell_morphism(x, lambda) == lie_density(g, lambda));
  }
  // Multiplicativity on a product of three generators.
  const EnvElement k2 = gen(sig, "K2"), j13 = gen(sig, "J13"), e = gen(sig, "E");
  CHECK(ell_morphism(k2 * j13 * e, lambda) ==
        compose(compose(ell_morphism(k2, lambda), ell_morphism(j13, lambda)), ell_morphism(e, lambda)));
}

TEST_CASE("Casimir operator acts by a scalar") {
  const std::vector<std::pair<Signature, Rational>> cases{{Signature(3, 0), rational(1, 2)},
                                                          {Signature(3, 0), rational(1, 6)},
                                                          {Signature(4, 0), rational(1, 4)},
                                                          {Signature(4, 0), Rational(0)},
                                                          {Signature(2, 1), rational(-3, 5)}};
  for (const auto& [sig, lambda] : cases) {
    const DiffOp c = ell_morphism(casimir_operator(sig), lambda);
    const Rational value = casimir_on_constants(sig, lambda);
    CHECK(c == DiffOp::identity(sig.n(), lambda) * value);
    CHECK(value == casimir_eigenvalue(lambda, sig));
    const Rational n = sig.n();
    CHECK(value == Rational(n * n * lambda * (lambda - 1)));
    CHECK(rho(lambda, sig) == Rational(-value));
  }
}

TEST_CASE("decomposition of the symmetric square") {
  const Signature sig(3, 0);
  auto alg = conformal_algebra(sig);
  CHECK(g2_component_dimensions(sig) == std::vector<int>{35, 14, 1, 5});
  CHECK(g2_component_dimensions(Signature(4, 0)) == std::vector<int>{84, 20, 1, 15});
  const int p1 = alg->index_of("P1"), e = alg->index_of("E");
  CHECK(decompose_g2(p1, p1, sig).casimir_part.is_zero());
  CHECK(decompose_g2(e, e, sig).wedge.is_zero());
  const EnvElement c = casimir(sig);
  for (int a = 0; a < alg->dim(); ++a) {
    for (int b = a; b < alg->dim(); ++b) {
      const G2Decomposition d = decompose_g2(a, b, sig);
      CHECK(d.box + d.bullet + d.casimir_part + d.wedge == sym2(sig, a, b));
      CHECK(d.casimir_part == c * (alg->killing_matrix()[a][b] / Rational(alg->dim())));
      CHECK(moment_pullback(d.wedge, PullbackTarget::Ambient).is_zero());
    }
  }
  // The projections commute with the adjoint action on a sample.
  const int k2 = alg->index_of("K2"), j12 = alg->index_of("J12");
  const EnvElement moved = adjoint(k2, sym2(sig, p1, j12));
  G2Decomposition sum{EnvElement(EnvKind::Symmetric, sig), EnvElement(EnvKind::Symmetric, sig),
                      EnvElement(EnvKind::Symmetric, sig), EnvElement(EnvKind::Symmetric, sig)};
  for (const auto& [w, coef] : moved.coeffs()) {
    const G2Decomposition d = decompose_g2(w[0], w[1], sig);
    sum.box += d.box * coef;
    sum.wedge += d.wedge * coef;
  }
  const G2Decomposition base = decompose_g2(p1, j12, sig);
  CHECK(sum.box == adjoint(k2, base.box));
  CHECK(sum.wedge == adjoint(k2, base.wedge));
}

TEST_CASE("degree-2 kernels") {
  const std::vector<std::pair<Signature, int>> cases{{Signature(3, 0), 5}, {Signature(4, 0), 15}};
  for (const auto& [sig, wedge_dim] : cases) {
    CHECK(kernel_deg2(KernelMap::AmbientMoment, sig).dimension == wedge_dim);
    CHECK(kernel_deg2(KernelMap::ModelMoment, sig).dimension == wedge_dim + 1);
    for (const Rational& lambda : {Rational(0), rational(1, 2), joseph_weight(sig), rational(-2, 3)}) {
      const Kernel2 k = kernel_deg2(KernelMap::Ell, sig, lambda);
      CHECK(k.dimension == wedge_dim + 1);
      const EnvElement shifted =
          casimir_operator(sig) - EnvElement::scalar(EnvKind::Enveloping, sig, casimir_eigenvalue(lambda, sig));
      CHECK(in_span(k.basis, shifted));
      for (const auto& b : k.basis) CHECK(ell_morphism(b, lambda).is_zero());
    }
  }
}

TEST_CASE("Joseph generators") {
  const Signature sig(3, 0);
  auto alg = conformal_algebra(sig);
  const Rational lj = joseph_weight(sig);
  CHECK(lj == rational(1, 6));
  const int p1 = alg->index_of("P1");
  CHECK(right_divide(ell_morphism(joseph_generator(p1, p1, lj, sig), lj), 1, sig).has_value());
  bool generic_fails = false;
  const Rational generic = rational(1, 3);
  for (int a = 0; a < alg->dim() && !generic_fails; ++a) {
    for (int b = a; b < alg->dim(); ++b) {
      if (!right_divide(ell_morphism(joseph_generator(a, b, generic, sig), generic), 1, sig)) {
        generic_fails = true;
        break;
      }
    }
  }
  CHECK(generic_fails);
  for (int a = 0; a < alg->dim(); a += 2) {
    for (int b = 0; b < alg->dim(); b += 3) {
      CHECK(joseph_generator(a, b, lj, sig) == joseph_generator(b, a, lj, sig));
      CHECK(ell_morphism(jlambda_generator(a, b, generic, sig), generic).is_zero());
    }
  }
}
