#pragma once

#include <optional>
#include <string>
#include <vector>

#include "confsym/conformal.hpp"
#include "confsym/opalg.hpp"
#include "confsym/phase_poly.hpp"
#include "confsym/signature.hpp"

namespace confsym {

// R^a G^b Lambda^c D^e T^f, composed in that order (T acts first).
struct ContractionMono {
  int a = 0;
  int b = 0;
  int c = 0;
  int e = 0;
  int f = 0;

  int p_shift() const { return 2 * a + b - e - 2 * f; }
  int x_order() const { return b + 2 * c + e; }
  std::string to_string() const;

  friend bool operator==(const ContractionMono&, const ContractionMono&) = default;
  friend auto operator<=>(const ContractionMono&, const ContractionMono&) = default;
};

PhaseOp contraction_op(const Signature& sig, const ContractionMono& m);

struct CanonicalOp {
  std::string name;
  PhaseOp realization;
  int dx = 0;  // change of x-degree
  int dp = 0;  // change of p-degree
};

// Symbol subspace S_k (s < 0) or its harmonic component S_{k,s}.
struct Domain {
  int k = 0;
  int s = -1;

  bool full() const { return s < 0; }
  friend bool operator==(const Domain&, const Domain&) = default;
};

// Names: R, T, D, G, Lambda, Ex, Ep; G0 and Lell need a component. G0 acts
// on S_{k,s}; Lell(ell) acts on trace-free symbols of degree k.
CanonicalOp canonical(const std::string& name, const Signature& sig, std::optional<Domain> component = {},
                      int ell = 0);

struct HarmonicPart {
  int s;
  PhasePoly component;  // trace-free, p-degree k - 2s
};

// P = sum_s R^s P_s with T P_s = 0; P must be p-homogeneous. Zero parts are
// omitted.
std::vector<HarmonicPart> harmonic_decompose(const PhasePoly& p, const Signature& sig);
// Component R^s P_s of a p-homogeneous polynomial of degree k.
PhasePoly harmonic_project(const PhasePoly& p, const Signature& sig, int s);
// Applies harmonic_project degree by degree; a full domain returns the degree-k part.
PhasePoly project_to(const PhasePoly& p, const Signature& sig, const Domain& d);

// Constant-coefficient basis of the p-part of a domain.
const std::vector<PhasePoly>& domain_p_basis(const Signature& sig, const Domain& d);
// All monomials in x of degree <= max_degree, by increasing degree.
std::vector<ExpVec> x_monomials(int n, int max_degree);

// Commutator defect L^{delta'}_X o O - O o L^delta_X as an exact operator.
PhaseOp invariance_defect(const ConformalGenerator& x, const PhaseOp& o, const Rational& delta,
                          const Rational& delta_p);

// Without a domain: the defect vanishes identically for every generator.
// With a domain: the defect, followed by projection onto `target` when
// given, vanishes on the domain.
bool is_invariant(const PhaseOp& o, const Rational& delta, const Rational& delta_p, const Signature& sig,
                  std::optional<Domain> domain = {}, std::optional<Domain> target = {});

// Coefficients a_1..a_ell of Lambda^ell + sum_i a_i G^i D^i Lambda^(ell-i),
// invariant on trace-free symbols of degree k at delta = 1/2 + (k - ell)/n.
// Throws NoSolution when the system has no or several solutions.
std::vector<Rational> solve_Lell(int ell, int k, const Signature& sig);
PhaseOp lell_operator(int ell, const std::vector<Rational>& coeffs, const Signature& sig);

struct Classification {
  Domain source;
  Domain target;
  Rational delta;
  Rational delta_p;
  int bound = 0;
  int dimension = 0;
  // Each basis element as a combination of ansatz monomials.
  std::vector<std::vector<std::pair<ContractionMono, Rational>>> basis;
  std::vector<PhaseOp> basis_ops;
  bool stable = false;
};

// Invariant operators S_{k,s} -> S_{k',s'} within the contraction ansatz of
// x-order <= bound. Stability compares with the solve at bound + 1.
Classification classify(int k, int s, int kp, int sp, const Rational& delta, const Rational& delta_p,
                        const Signature& sig, int bound = 4);

// Monomials with the given p-shift and x-order <= bound, restricted to those
// not annihilated trivially on the source domain (f <= s).
std::vector<ContractionMono> ansatz_monomials(int p_shift, int max_order, const Domain& source);
// Subset of `monos` acting linearly independently on the source domain after
// projection to the target; earlier monomials are preferred.
std::vector<ContractionMono> independent_on_domain(const std::vector<ContractionMono>& monos,
                                                   const Signature& sig, const Domain& src,
                                                   const Domain& dst);
// Same with exact x-order.
std::vector<ContractionMono> ansatz_monomials_exact(int p_shift, int order, const Domain& source);

}  // namespace confsym
