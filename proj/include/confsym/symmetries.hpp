#pragma once

#include <optional>
#include <vector>

#include "confsym/conformal.hpp"
#include "confsym/opalg.hpp"
#include "confsym/phase_poly.hpp"
#include "confsym/signature.hpp"

namespace confsym {

// s-generalized conformal Killing k-tensors: symbols R^s K in S_{k,s} killed
// by G0^{2s+1} T^s, with coefficients of x-degree <= degree_bound.
struct KillingBasis {
  int k = 0;
  int s = 0;
  Signature sig;
  int degree_bound = 0;
  std::vector<PhasePoly> basis;
  // True when the dimension does not change at degree_bound + 1.
  bool stable = false;
};

int default_ckt_bound(int k, int s);

KillingBasis solve_ckt(int k, int s, const Signature& sig, std::optional<int> degree_bound = {});

// Delta^ell o D1 = D2 o Delta^ell, with D1 of weights (lambda, lambda) and D2
// of weights (mu, mu).
struct SymmetryPair {
  DiffOp d1;
  DiffOp d2;
  int ell = 1;
};

// lambda = (n - 2 ell) / 2n and mu = (n + 2 ell) / 2n.
std::pair<Rational, Rational> symmetry_weights(int ell, const Signature& sig);

bool is_symmetry_pair(const SymmetryPair& pair, const Signature& sig);

struct SymmetryCheck {
  bool valid = false;
  // Set when the quantized candidate D2 failed but Delta^ell D1 was still
  // right-divisible by Delta^ell.
  bool by_division = false;
  std::optional<SymmetryPair> pair;
  // Delta^ell Q(K) - Q'(K) Delta^ell with the quantized candidate.
  DiffOp defect;
};

SymmetryCheck verify_symmetry(const PhasePoly& k, int ell, const Signature& sig);

// (ell^lambda_X, ell^mu_X).
SymmetryPair first_order_symmetry(const ConformalGenerator& x, int ell, const Signature& sig);
SymmetryPair identity_symmetry(int ell, const Signature& sig);

// Composite pair, with D1 reduced modulo the left ideal generated by Delta^ell
// and D2 adjusted to match.
SymmetryPair symmetry_product(const SymmetryPair& a, const SymmetryPair& b, const Signature& sig);

// For a trace-free quadratic symbol K = K^{ij} p_i p_j: whether
// d_(a K_bc) = eta_(ab L_c) admits a polynomial solution L.
bool killing_tensor_equation_holds(const PhasePoly& k, const Signature& sig);

}  // namespace confsym
