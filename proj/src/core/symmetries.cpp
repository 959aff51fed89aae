#include "confsym/symmetries.hpp"

#include <array>

#include "confsym/errors.hpp"
#include "confsym/invariants.hpp"
#include "confsym/linalg.hpp"
#include "confsym/quantization.hpp"
#include "equations.hpp"

namespace confsym {

using detail::times_x;

namespace {

SparseVec to_vec(const PhasePoly& p, Indexer<PhaseMono>& index) {
  std::vector<std::pair<std::uint32_t, Rational>> entries;
  entries.reserve(p.size());
  for (const auto& [m, c] : p.terms()) entries.emplace_back(index.id(m), c);
  return normalize(std::move(entries));
}

std::vector<ExpVec> x_monomials_exact(int n, int d) {
  std::vector<ExpVec> out;
  for (const auto& m : x_monomials(n, d)) {
    if (m.degree() == d) out.push_back(m);
  }
  return out;
}

}  // namespace

int default_ckt_bound(int k, int s) { return 2 * k + 2 * s + 2; }

KillingBasis solve_ckt(int k, int s, const Signature& sig, std::optional<int> degree_bound) {
  if (k < 0 || s < 0 || 2 * s > k) throw InvalidArgument("Killing tensors require 0 <= 2s <= k");
  const int bound = degree_bound.value_or(default_ckt_bound(k, s));
  if (bound < 0) throw InvalidArgument("degree bound must be non-negative");
  KillingBasis out;
  out.k = k;
  out.s = s;
  out.sig = sig;
  out.degree_bound = bound;

  std::vector<PhaseOp> chain;
  const PhaseOp t = canonical("T", sig).realization;
  for (int i = 0; i < s; ++i) chain.push_back(t);
  for (int j = k - 2 * s; j <= k; ++j) chain.push_back(canonical("G0", sig, Domain{j, 0}).realization);
  const auto& pbasis = domain_p_basis(sig, Domain{k, s});

  // G0 has constant coefficients and lowers the x-degree by one, so the
  // kernel splits by x-degree and d_{x^i} maps the degree-(d+1) kernel into
  // the degree-d one: once a degree has no solution, no higher degree has.
  for (int d = 0; d <= bound + 1; ++d) {
    std::vector<PhasePoly> candidates;
    std::vector<SparseVec> columns;
    Indexer<PhaseMono> index;
    for (const auto& xm : x_monomials_exact(sig.n(), d)) {
      for (const auto& pb : pbasis) {
        PhasePoly f = times_x(pb, xm);
        PhasePoly img = f;
        for (const auto& op : chain) img = op_apply(op, img);
        columns.push_back(to_vec(img, index));
        candidates.push_back(std::move(f));
      }
    }
    const auto kernel = kernel_of_columns(columns);
    if (d == bound + 1) {
      out.stable = kernel.empty();
      break;
    }
    for (const auto& v : kernel) {
      PhasePoly e(sig.n());
      for (const auto& [j, c] : v) e.add_scaled(candidates[j], c);
      out.basis.push_back(std::move(e));
    }
    if (kernel.empty()) {
      out.stable = true;
      break;
    }
  }
  return out;
}

std::pair<Rational, Rational> symmetry_weights(int ell, const Signature& sig) {
  if (ell < 1) throw InvalidArgument("ell must be positive");
  const int n = sig.n();
  return {rational(n - 2 * ell, 2 * n), rational(n + 2 * ell, 2 * n)};
}

bool is_symmetry_pair(const SymmetryPair& pair, const Signature& sig) {
  const auto [lambda, mu] = symmetry_weights(pair.ell, sig);
  if (pair.d1.lambda() != lambda || pair.d1.mu() != lambda) return false;
  if (pair.d2.lambda() != mu || pair.d2.mu() != mu) return false;
  const DiffOp lap = laplacian_power(sig, pair.ell, lambda);
  return compose(lap, pair.d1) == compose(pair.d2, lap);
}

SymmetryCheck verify_symmetry(const PhasePoly& k, int ell, const Signature& sig) {
  check_same_dimension(k.n(), sig.n());
  const auto [lambda, mu] = symmetry_weights(ell, sig);
  const DiffOp d1 = quantize(k, lambda, lambda, sig);
  const DiffOp d2 = quantize(k, mu, mu, sig);
  const DiffOp lap = laplacian_power(sig, ell, lambda);
  const DiffOp lhs = compose(lap, d1);
  SymmetryCheck out;
  out.defect = lhs - compose(d2, lap);
  if (out.defect.is_zero()) {
    out.valid = true;
    out.pair = SymmetryPair{d1, d2, ell};
    return out;
  }
  if (auto q = right_divide(lhs, ell, sig)) {
    out.valid = true;
    out.by_division = true;
    out.pair = SymmetryPair{d1, *q, ell};
  }
  return out;
}

SymmetryPair first_order_symmetry(const ConformalGenerator& x, int ell, const Signature& sig) {
  const auto [lambda, mu] = symmetry_weights(ell, sig);
  return {lie_density(x, lambda), lie_density(x, mu), ell};
}

SymmetryPair identity_symmetry(int ell, const Signature& sig) {
  const auto [lambda, mu] = symmetry_weights(ell, sig);
  return {DiffOp::identity(sig.n(), lambda), DiffOp::identity(sig.n(), mu), ell};
}

SymmetryPair symmetry_product(const SymmetryPair& a, const SymmetryPair& b, const Signature& sig) {
  if (a.ell != b.ell) throw InvalidArgument("symmetry pairs for different powers of the Laplacian");
  const auto [lambda, mu] = symmetry_weights(a.ell, sig);
  const DiffOp lap = laplacian_power(sig, a.ell, lambda);
  const LaplacianReduction red = reduce_mod_laplacian(compose(a.d1, b.d1), a.ell, sig);
  // D1 = Q o Delta^ell + r gives Delta^ell r = (D2 - Delta^ell Q) Delta^ell.
  return {red.remainder, compose(a.d2, b.d2) - compose(lap, red.quotient), a.ell};
}

bool killing_tensor_equation_holds(const PhasePoly& k, const Signature& sig) {
  check_same_dimension(k.n(), sig.n());
  if (!k.is_zero() && (!k.is_homogeneous_p() || k.max_degree_p() != 2)) {
    throw InvalidArgument("expected a quadratic symbol");
  }
  const int n = sig.n();
  // Lowered components K_ij as functions of x.
  std::vector<std::vector<PhasePoly>> low(n, std::vector<PhasePoly>(n, PhasePoly(n)));
  for (const auto& [m, c] : k.terms()) {
    int i = -1, j = -1;
    for (int v = 0; v < n; ++v) {
      for (int e = 0; e < m.p[v]; ++e) (i < 0 ? i : j) = v;
    }
    const Rational half = i == j ? Rational(1) : rational(1, 2);
    const PhasePoly coef = PhasePoly::monomial(n, PhaseMono{ExpVec{}, m.x}, c * half * sig.eta(i) * sig.eta(j));
    low[i][j] += coef;
    if (i != j) low[j][i] += coef;
  }
  std::vector<std::array<int, 3>> triples;
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      for (int c = b; c < n; ++c) triples.push_back({a, b, c});
    }
  }
  Indexer<std::pair<std::size_t, ExpVec>> index;
  auto as_vec = [&](const std::vector<PhasePoly>& per_triple) {
    std::vector<std::pair<std::uint32_t, Rational>> entries;
    for (std::size_t t = 0; t < per_triple.size(); ++t) {
      for (const auto& [m, c] : per_triple[t].terms()) entries.emplace_back(index.id({t, m.x}), c);
    }
    return normalize(std::move(entries));
  };
  // Both sides carry the common factor 1/3 of the symmetrization.
  std::vector<PhasePoly> lhs;
  for (const auto& [a, b, c] : triples) {
    lhs.push_back(partial(low[b][c], VarKind::X, a) + partial(low[a][c], VarKind::X, b) +
                  partial(low[a][b], VarKind::X, c));
  }
  const int d = k.max_degree_x();
  SparseEchelon span;
  if (d >= 1) {
    for (int c = 0; c < n; ++c) {
      for (const auto& xm : x_monomials(n, d - 1)) {
        const PhasePoly l = PhasePoly::monomial(n, PhaseMono{ExpVec{}, xm});
        std::vector<PhasePoly> rhs;
        for (const auto& [a1, b1, c1] : triples) {
          PhasePoly r(n);
          // eta_(a1 b1) L_c1 + eta_(a1 c1) L_b1 + eta_(b1 c1) L_a1 with L = l e_c.
          if (a1 == b1 && c1 == c) r.add_scaled(l, sig.eta(a1));
          if (a1 == c1 && b1 == c) r.add_scaled(l, sig.eta(a1));
          if (b1 == c1 && a1 == c) r.add_scaled(l, sig.eta(b1));
          rhs.push_back(std::move(r));
        }
        span.insert(as_vec(rhs));
      }
    }
  }
  return span.contains(as_vec(lhs));
}

}  // namespace confsym
