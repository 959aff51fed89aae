#pragma once

#include <memory>
#include <string>
#include <vector>

#include "confsym/linalg.hpp"
#include "confsym/opalg.hpp"
#include "confsym/phase_poly.hpp"
#include "confsym/signature.hpp"

namespace confsym {

enum class GeneratorKind { Translation, Rotation, Dilation, SpecialConformal };

// Element of the standard basis of o(p+1,q+1) acting on R^{p,q}.
struct ConformalGenerator {
  GeneratorKind kind;
  int i = -1;  // 0-based; unused for the dilation
  int j = -1;  // second index of a rotation
  std::string label;
  // Components X^j(x), polynomials without p-dependence.
  std::vector<PhasePoly> field;
  PhasePoly divergence;
  // (n+2)x(n+2) matrix in the light-cone basis (e+, e_1..e_n, e-).
  Matrix ambient;
};

// P_i, J_ij (i<j), E, K_i in that order. Throws InvalidArgument for n < 3.
std::vector<ConformalGenerator> generators(const Signature& sig);

// [X,Y]^i = X(Y^i) - Y(X^i).
std::vector<PhasePoly> field_bracket(const std::vector<PhasePoly>& x, const std::vector<PhasePoly>& y);

// mu_X = X^i p_i.
PhasePoly moment(const ConformalGenerator& x);

// ell^lambda_X = X + lambda Div X, weights (lambda, lambda).
DiffOp lie_density(const ConformalGenerator& x, const Rational& lambda);
// L^delta_X = X^i d_{x^i} - p_j (d_i X^j) d_{p_i} + delta Div X.
PhaseOp lie_symbol(const ConformalGenerator& x, const Rational& delta);
// ell^mu_X o A - A o ell^lambda_X; A must have weights (lambda, mu).
DiffOp lie_operator(const ConformalGenerator& x, const Rational& lambda, const Rational& mu,
                    const DiffOp& a);

// The action L^{lambda,mu}_X transported to symbols through N: the PhaseOp S
// with sigma(L^{lambda,mu}_X N(P)) = S(P), from the composition rule
// sigma(A o B) = sum_g (1/g!) d_p^g sigma(A) d_x^g sigma(B).
PhaseOp operator_action_on_symbols(const ConformalGenerator& x, const Rational& lambda, const Rational& mu);

// 1/2 Tr(A_X A_Y) on ambient matrices.
Rational killing_form(const ConformalGenerator& x, const ConformalGenerator& y);

// The algebra with its structure constants and Killing data, built once per
// signature.
class ConformalAlgebra {
 public:
  explicit ConformalAlgebra(const Signature& sig);

  const Signature& signature() const { return sig_; }
  int n() const { return sig_.n(); }
  int dim() const { return static_cast<int>(gens_.size()); }
  const std::vector<ConformalGenerator>& generators() const { return gens_; }
  const ConformalGenerator& generator(int a) const { return gens_.at(a); }
  // Throws InvalidArgument for an unknown label.
  int index_of(const std::string& label) const;

  // Coordinates of [X_a, X_b] from the vector-field bracket.
  const DenseVec& bracket(int a, int b) const { return field_consts_[a][b]; }
  // Same from ambient matrix commutators.
  const DenseVec& ambient_bracket(int a, int b) const { return ambient_consts_[a][b]; }
  bool brackets_agree() const { return field_consts_ == ambient_consts_; }

  const Matrix& killing_matrix() const { return killing_; }
  const Matrix& killing_inverse() const { return killing_inv_; }
  Rational killing_determinant() const { return determinant(killing_); }

  // Coordinates of a vector field in the basis, or nullopt if it is not conformal.
  std::optional<DenseVec> field_coordinates(const std::vector<PhasePoly>& field) const;
  // Coordinates of an ambient matrix, or nullopt.
  std::optional<DenseVec> ambient_coordinates(const Matrix& m) const;

  // Linear combination of generator fields.
  std::vector<PhasePoly> combine_fields(const DenseVec& coords) const;

 private:
  Signature sig_;
  std::vector<ConformalGenerator> gens_;
  std::vector<std::vector<DenseVec>> field_consts_;
  std::vector<std::vector<DenseVec>> ambient_consts_;
  Matrix killing_;
  Matrix killing_inv_;
  Indexer<std::pair<int, PhaseMono>> field_index_;
  SparseEchelon field_span_;
  SparseEchelon ambient_span_;
};

// Shared instance per signature (construction is deterministic and pure).
std::shared_ptr<const ConformalAlgebra> conformal_algebra(const Signature& sig);

}  // namespace confsym
