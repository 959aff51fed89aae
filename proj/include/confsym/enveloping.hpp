#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "confsym/conformal.hpp"
#include "confsym/opalg.hpp"
#include "confsym/phase_poly.hpp"
#include "confsym/signature.hpp"

namespace confsym {

enum class EnvKind { Symmetric, Enveloping };

inline constexpr int kMaxEnvDegree = 4;

// Weakly increasing generator indices.
using Word = std::vector<int>;

// Degree-truncated element of S(g) or U(g) in the ordered monomial basis.
class EnvElement {
 public:
  EnvElement() = default;
  EnvElement(EnvKind kind, const Signature& sig, int max_degree = 3);

  static EnvElement scalar(EnvKind kind, const Signature& sig, const Rational& c, int max_degree = 3);
  static EnvElement generator(EnvKind kind, const Signature& sig, int index, int max_degree = 3);

  EnvKind kind() const { return kind_; }
  const Signature& signature() const { return sig_; }
  int max_degree() const { return max_degree_; }
  const std::map<Word, Rational>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  // -1 for zero.
  int degree() const;
  Rational coefficient(const Word& w) const;

  // Adds c times the product of the listed generators in the given order;
  // enveloping words are rewritten to the ordered basis.
  void add_word(const Word& w, const Rational& c);

  EnvElement& operator+=(const EnvElement& other);
  EnvElement& operator-=(const EnvElement& other);
  EnvElement& operator*=(const Rational& c);
  friend EnvElement operator+(EnvElement a, const EnvElement& b) { return a += b; }
  friend EnvElement operator-(EnvElement a, const EnvElement& b) { return a -= b; }
  friend EnvElement operator*(EnvElement a, const Rational& c) { return a *= c; }
  friend EnvElement operator*(const Rational& c, EnvElement a) { return a *= c; }
  // Algebra product; throws DegreeOverflow past max_degree.
  friend EnvElement operator*(const EnvElement& a, const EnvElement& b);
  friend bool operator==(const EnvElement& a, const EnvElement& b) {
    return a.kind_ == b.kind_ && a.sig_ == b.sig_ && a.coeffs_ == b.coeffs_;
  }

  // Part of exact degree d.
  EnvElement degree_part(int d) const;
  std::string to_string() const;

 private:
  void check_compatible(const EnvElement& other) const;

  EnvKind kind_ = EnvKind::Symmetric;
  Signature sig_;
  int max_degree_ = 3;
  std::shared_ptr<const ConformalAlgebra> alg_;
  std::map<Word, Rational> coeffs_;
};

// Full symmetrization S(g) -> U(g).
EnvElement pbw(const EnvElement& u);
// ad_X for the generator with the given index (derivation on S(g),
// commutator on U(g)).
EnvElement adjoint(int index, const EnvElement& u);

// C = K^{ab} X_a X_b with K the Killing matrix 1/2 Tr(A_X A_Y).
EnvElement casimir(const Signature& sig);
// pbw(C).
EnvElement casimir_operator(const Signature& sig);

enum class PullbackTarget { Model, Ambient };

// Model: X -> X^i p_i. Ambient: X -> the moment of the linear field of its
// ambient matrix on T*R^{p+1,q+1}, variables ordered (+, 1..n, -).
PhasePoly moment_pullback(const EnvElement& u, PullbackTarget target);
PhasePoly ambient_moment(const ConformalGenerator& x);
// (xp)^2 - x^2 p^2 on the ambient phase space, metric 2 x^+ x^- + eta_ii x^i x^i.
PhasePoly ambient_casimir_function(const Signature& sig);

// X -> ell^lambda_X, extended multiplicatively.
DiffOp ell_morphism(const EnvElement& u, const Rational& lambda);

// n^2 lambda (1 - lambda).
Rational rho(const Rational& lambda, const Signature& sig);
// Scalar by which ell^lambda(pbw(C)) acts for the 1/2 Tr normalization; this
// is -rho(lambda), since <E,E> = 1 makes the E^2 term contribute +n^2 lambda^2.
Rational casimir_eigenvalue(const Rational& lambda, const Signature& sig);

// X Y = box + bullet + casimir_part + wedge in S_2(g): the Young (2,2)_0,
// (2)_0, trivial and (1,1,1,1) components.
struct G2Decomposition {
  EnvElement box;
  EnvElement bullet;
  EnvElement casimir_part;
  EnvElement wedge;
};

G2Decomposition decompose_g2(int a, int b, const Signature& sig);

// Dimensions of the four components of S_2(g), in the order above.
std::vector<int> g2_component_dimensions(const Signature& sig);

enum class KernelMap { ModelMoment, AmbientMoment, Ell };

struct Kernel2 {
  int dimension = 0;
  // Reduced echelon basis in the ordered word coordinates.
  std::vector<EnvElement> basis;
};

// Degree-2 kernel of mu* on S_2(g), or of ell^lambda on U_2(g).
Kernel2 kernel_deg2(KernelMap map, const Signature& sig, const Rational& lambda = 0);

// pbw(X Y - X box Y) - c <X,Y> / dim g with c = casimir_eigenvalue(lambda):
// degree-2 generator of J^lambda + (pbw(S^2_0)), the Joseph ideal at
// lambda = (n-2)/(2n).
EnvElement joseph_generator(int a, int b, const Rational& lambda, const Signature& sig);
// pbw(X Y - X box Y - X bullet Y) - c(lambda) <X,Y> / dim g, in ker ell^lambda.
EnvElement jlambda_generator(int a, int b, const Rational& lambda, const Signature& sig);

Rational joseph_weight(const Signature& sig);

}  // namespace confsym
