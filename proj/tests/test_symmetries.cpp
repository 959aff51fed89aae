#include <doctest.h>

#include "confsym/conformal.hpp"
#include "confsym/invariants.hpp"
#include "confsym/linalg.hpp"
#include "confsym/quantization.hpp"
#include "confsym/symmetries.hpp"
#include "test_support.hpp"

using namespace confsym;
using namespace testsupport;

namespace {

struct PolySpan {
  Indexer<PhaseMono> index;
  SparseVec vec(const PhasePoly& p) {
    std::vector<std::pair<std::uint32_t, Rational>> e;
    for (const auto& [m, c] : p.terms()) e.emplace_back(index.id(m), c);
    return normalize(std::move(e));
  }
  std::size_t rank(const std::vector<PhasePoly>& ps) {
    std::vector<SparseVec> vs;
    for (const auto& p : ps) vs.push_back(vec(p));
    return rank_of(vs);
  }
};

std::vector<PhasePoly> moments(const Signature& sig) {
  std::vector<PhasePoly> out;
  for (const auto& g : conformal_algebra(sig)->generators()) out.push_back(moment(g));
  return out;
}

std::vector<PhasePoly> moment_products(const Signature& sig) {
  const auto mu = moments(sig);
  std::vector<PhasePoly> out;
  for (std::size_t a = 0; a < mu.size(); ++a) {
    for (std::size_t b = a; b < mu.size(); ++b) out.push_back(mu[a] * mu[b]);
  }
  return out;
}

// Elements of span(ps) annihilated by T, computed as a kernel on the span.
std::vector<PhasePoly> tracefree_part_of_span(const std::vector<PhasePoly>& ps, const Signature& sig) {
  const PhaseOp t = canonical("T", sig).realization;
  PolySpan sp;
  std::vector<SparseVec> cols;
  for (const auto& p : ps) cols.push_back(sp.vec(op_apply(t, p)));
  std::vector<PhasePoly> out;
  for (const auto& v : kernel_of_columns(cols)) {
    PhasePoly e(sig.n());
    for (const auto& [j, c] : v) e.add_scaled(ps[j], c);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

TEST_CASE("first-order Killing tensors are the conformal fields") {
  const Signature sig(3, 0);
  const KillingBasis kb = solve_ckt(1, 0, sig, 4);
  CHECK(kb.basis.size() == 10);
  CHECK(kb.stable);
  const auto mu = moments(sig);
  const PhaseOp g0 = canonical("G0", sig, Domain{1, 0}).realization;
  for (const auto& m : mu) CHECK(op_apply(g0, m).is_zero());
  std::vector<PhasePoly> both = kb.basis;
  both.insert(both.end(), mu.begin(), mu.end());
  PolySpan sp;
  CHECK(sp.rank(both) == 10);
  CHECK(sp.rank(mu) == 10);
}

TEST_CASE("constants and invalid requests") {
  const KillingBasis kb = solve_ckt(0, 0, Signature(3, 0));
  CHECK(kb.basis.size() == 1);
  CHECK(kb.stable);
  CHECK_THROWS_AS(solve_ckt(1, 1, Signature(3, 0)), InvalidArgument);
  CHECK_THROWS_AS(solve_ckt(-1, 0, Signature(3, 0)), InvalidArgument);
}

TEST_CASE("quadratic Killing tensors against products of fields") {
  const Signature sig(3, 0);
  const KillingBasis k20 = solve_ckt(2, 0, sig);
  const KillingBasis k21 = solve_ckt(2, 1, sig);
  CHECK(k20.stable);
  CHECK(k21.stable);
  const auto products = moment_products(sig);
  const auto tracefree = tracefree_part_of_span(products, sig);
  PolySpan sp;
  const std::size_t d20 = sp.rank(k20.basis);
  CHECK(d20 == k20.basis.size());
  CHECK(sp.rank(tracefree) == d20);
  std::vector<PhasePoly> both = k20.basis;
  both.insert(both.end(), tracefree.begin(), tracefree.end());
  CHECK(sp.rank(both) == d20);
  CHECK(d20 == 35);

  // The whole degree-2 image splits into the two Killing cells.
  std::vector<PhasePoly> cells = k20.basis;
  cells.insert(cells.end(), k21.basis.begin(), k21.basis.end());
  const std::size_t image = sp.rank(products);
  CHECK(sp.rank(cells) == image);
  std::vector<PhasePoly> all = cells;
  all.insert(all.end(), products.begin(), products.end());
  CHECK(sp.rank(all) == image);
  CHECK(k21.basis.size() == 14);
}

TEST_CASE("Killing basis lies in the right cell and in the kernel") {
  const Signature sig(2, 1);
  const KillingBasis kb = solve_ckt(2, 1, sig);
  const PhaseOp t = canonical("T", sig).realization;
  std::vector<PhaseOp> g0;
  for (int j = 0; j <= 2; ++j) g0.push_back(canonical("G0", sig, Domain{j, 0}).realization);
  for (const auto& k : kb.basis) {
    CHECK(project_to(k, sig, Domain{2, 1}) == k);
    PhasePoly img = op_apply(t, k);
    for (const auto& op : g0) img = op_apply(op, img);
    CHECK(img.is_zero());
  }
  // A small bound is flagged unstable.
  CHECK_FALSE(solve_ckt(2, 0, sig, 1).stable);
}

TEST_CASE("tensor form of the Killing equation") {
  const Signature sig(3, 0);
  for (const auto& k : solve_ckt(2, 0, sig).basis) CHECK(killing_tensor_equation_holds(k, sig));
  const PhasePoly bad = PhasePoly::x(3, 0) * PhasePoly::p(3, 1) * PhasePoly::p(3, 2);
  CHECK_FALSE(killing_tensor_equation_holds(bad, sig));
  CHECK(killing_tensor_equation_holds(PhasePoly::p(3, 0) * PhasePoly::p(3, 1), sig));
}

TEST_CASE("first-order symmetries come from quantized moments") {
  for (const auto& sig : {Signature(3, 0), Signature(2, 2)}) {
    auto alg = conformal_algebra(sig);
    const auto [lambda, mu] = symmetry_weights(1, sig);
    CHECK(lambda == rational(sig.n() - 2, 2 * sig.n()));
    for (const auto& g : alg->generators()) {
      const SymmetryCheck r = verify_symmetry(moment(g), 1, sig);
      REQUIRE(r.valid);
      CHECK_FALSE(r.by_division);
      CHECK(r.pair->d1 == lie_density(g, lambda));
      CHECK(r.pair->d2 == lie_density(g, mu));
    }
  }
}

TEST_CASE("second-order Killing tensors give symmetries of the Laplacian") {
  const Signature sig(3, 0);
  const KillingBasis kb = solve_ckt(2, 0, sig);
  for (std::size_t i = 0; i < kb.basis.size(); i += 5) {
    const SymmetryCheck r = verify_symmetry(kb.basis[i], 1, sig);
    CHECK(r.valid);
    CHECK(r.defect.is_zero());
    REQUIRE(r.pair);
    CHECK(is_symmetry_pair(*r.pair, sig));
  }
}

TEST_CASE("non-Killing symbols fail") {
  const Signature sig(3, 0);
  const PhasePoly k = PhasePoly::x(3, 0) * PhasePoly::p(3, 0).pow(2);
  const SymmetryCheck r = verify_symmetry(k, 1, sig);
  CHECK_FALSE(r.valid);
  CHECK_FALSE(r.defect.is_zero());
  CHECK_FALSE(r.pair.has_value());
}

TEST_CASE("trace symbols give trivial symmetries") {
  const Signature sig(3, 0);
  const PhasePoly r2 = squared_momentum({1, 1, 1});
  const SymmetryCheck r = verify_symmetry(r2, 1, sig);
  CHECK(r.valid);
  const auto [lambda, mu] = symmetry_weights(1, sig);
  CHECK(right_divide(quantize(r2, lambda, lambda, sig), 1, sig).has_value());
}

TEST_CASE("products of symmetries") {
  const Signature sig(3, 0);
  auto alg = conformal_algebra(sig);
  const auto [lambda, mu] = symmetry_weights(1, sig);
  const auto& x = alg->generator(alg->index_of("K1"));
  const auto& y = alg->generator(alg->index_of("P2"));
  const SymmetryPair a = first_order_symmetry(x, 1, sig);
  const SymmetryPair b = first_order_symmetry(y, 1, sig);
  CHECK(is_symmetry_pair(symmetry_product(a, a, sig), sig));
  const SymmetryPair ab = symmetry_product(a, b, sig);
  const SymmetryPair ba = symmetry_product(b, a, sig);
  CHECK(is_symmetry_pair(ab, sig));
  CHECK(is_symmetry_pair(ba, sig));
  const DenseVec c = alg->bracket(alg->index_of("K1"), alg->index_of("P2"));
  DiffOp expected(sig.n(), lambda, lambda);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] != 0) expected += lie_density(alg->generator(i), lambda) * c[i];
  }
  CHECK(ab.d1 - ba.d1 == expected);
  const SymmetryPair id = identity_symmetry(1, sig);
  const SymmetryPair ib = symmetry_product(id, b, sig);
  CHECK(ib.d1 == b.d1);
  CHECK(ib.d2 == b.d2);
  CHECK_THROWS_AS(symmetry_product(a, identity_symmetry(2, sig), sig), InvalidArgument);
}
