#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "confsym/phase_poly.hpp"
#include "confsym/signature.hpp"

namespace confsym {

// Level-m component of P * Q = sum_m (i hbar)^m B_m(P, Q) for the product
// induced by Q^{lambda,lambda}. The power of i hbar is carried by the p-degree.
struct StarComponent {
  int m = 0;
  Rational lambda;
  PhasePoly value;
};

// B_m(P, Q): for homogeneous P, Q of p-degrees k, l, the p-degree k+l-m part
// of dequantize(Q(P) o Q(Q)); extended bilinearly otherwise. Throws
// InvalidArgument for m < 0 and ResonanceError when a needed quantization is
// not unique.
StarComponent star_component(const PhasePoly& p, const PhasePoly& q, int m, const Rational& lambda,
                             const Signature& sig);

// B_0(P, Q), B_1(P, Q), ... up to deg P + deg Q.
std::vector<PhasePoly> star_components(const PhasePoly& p, const PhasePoly& q, const Rational& lambda,
                                       const Signature& sig);

// Span of the products of d moments mu_X = X^i p_i (the degree-d part of the
// image of mu^*), as a reduced basis.
const std::vector<PhasePoly>& moment_image_basis(int d, const Signature& sig);
// Whether every p-degree part of f lies in the image of mu^*.
bool in_moment_image(const PhasePoly& f, const Signature& sig);

struct StarCheckOptions {
  // x-degree bound of the monomial spanning set x^a p^b.
  int x_degree = 2;
  // Number of pseudo-random triples for the associativity check.
  int associativity_triples = 60;
  std::uint32_t seed = 1;
};

struct StarWitness {
  std::vector<PhasePoly> inputs;
  int m = 0;
  std::string note;
};

struct StarVerdict {
  std::string name;
  bool passed = false;
  // Number of instances examined.
  std::size_t checked = 0;
  std::optional<StarWitness> witness;
};

struct StarReport {
  Rational lambda;
  int max_degree = 0;
  Signature sig;
  // Weight at which the descent to K/(R) is checked: (n-2)/2n.
  Rational descent_lambda;
  // Whether B_m(P,Q) = (-1)^m B_m(Q,P) held on the whole spanning set.
  bool symmetric = false;
  // gradation, associativity, invariance, parity, tangentiality, descent.
  std::vector<StarVerdict> verdicts;

  bool passed() const;
  const StarVerdict& verdict(const std::string& name) const;
};

// Checks the star-product axioms over spanning sets of p-degree <= max_degree.
// The parity verdict passes when symmetry holds exactly for lambda = 1/2 and a
// violation is found otherwise.
StarReport check_star(const Rational& lambda, int max_degree, const Signature& sig,
                      const StarCheckOptions& options = {});

}  // namespace confsym
