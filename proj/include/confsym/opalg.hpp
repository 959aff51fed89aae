#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "confsym/phase_poly.hpp"
#include "confsym/signature.hpp"

namespace confsym {

// x^a p^b d_x^c d_p^d: multiplications act after derivations.
struct OpMono {
  ExpVec x;
  ExpVec p;
  ExpVec dx;
  ExpVec dp;

  friend bool operator==(const OpMono&, const OpMono&) = default;
  friend std::strong_ordering operator<=>(const OpMono& a, const OpMono& b) {
    if (auto c = a.dp <=> b.dp; c != 0) return c;
    if (auto c = a.dx <=> b.dx; c != 0) return c;
    if (auto c = a.p <=> b.p; c != 0) return c;
    return a.x <=> b.x;
  }
};

// Normal-ordered polynomial differential operator on phase space.
class PhaseOp {
 public:
  using TermMap = std::map<OpMono, Rational>;

  PhaseOp() = default;
  explicit PhaseOp(int n);

  static PhaseOp identity(int n);
  static PhaseOp scalar(int n, const Rational& c);
  static PhaseOp multiplication(const PhasePoly& f);
  static PhaseOp d_x(int n, int i);
  static PhaseOp d_p(int n, int i);

  int n() const { return n_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const OpMono& m, const Rational& c);

  PhaseOp& operator+=(const PhaseOp& other);
  PhaseOp& operator-=(const PhaseOp& other);
  PhaseOp& operator*=(const Rational& c);
  void add_scaled(const PhaseOp& other, const Rational& c);

  friend PhaseOp operator+(PhaseOp a, const PhaseOp& b) { return a += b; }
  friend PhaseOp operator-(PhaseOp a, const PhaseOp& b) { return a -= b; }
  friend PhaseOp operator*(PhaseOp a, const Rational& c) { return a *= c; }
  friend PhaseOp operator*(const Rational& c, PhaseOp a) { return a *= c; }
  friend bool operator==(const PhaseOp& a, const PhaseOp& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  std::string to_string() const;

 private:
  int n_ = 0;
  TermMap terms_;
};

PhasePoly op_apply(const PhaseOp& a, const PhasePoly& f);
PhaseOp op_compose(const PhaseOp& a, const PhaseOp& b);
PhaseOp commutator(const PhaseOp& a, const PhaseOp& b);
PhaseOp op_pow(const PhaseOp& a, int e);

// Differential operator sum_beta A_beta(x) d^beta between densities of weight
// lambda (source) and mu (target). Stored as its normal-ordered symbol: the
// term x^alpha p^beta stands for x^alpha d^beta.
class DiffOp {
 public:
  DiffOp() = default;
  DiffOp(int n, const Rational& lambda, const Rational& mu);
  DiffOp(PhasePoly symbol, const Rational& lambda, const Rational& mu);

  static DiffOp identity(int n, const Rational& lambda);
  static DiffOp multiplication(const PhasePoly& f, const Rational& lambda, const Rational& mu);

  int n() const { return symbol_.n(); }
  const Rational& lambda() const { return lambda_; }
  const Rational& mu() const { return mu_; }
  const PhasePoly& symbol() const { return symbol_; }
  bool is_zero() const { return symbol_.is_zero(); }
  // -1 for the zero operator.
  int order() const { return symbol_.max_degree_p(); }
  PhasePoly principal_symbol() const { return symbol_.degree_p_part(order()); }

  DiffOp with_weights(const Rational& lambda, const Rational& mu) const;

  DiffOp& operator+=(const DiffOp& other);
  DiffOp& operator-=(const DiffOp& other);
  DiffOp& operator*=(const Rational& c);

  friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
  friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
  friend DiffOp operator*(DiffOp a, const Rational& c) { return a *= c; }
  friend DiffOp operator*(const Rational& c, DiffOp a) { return a *= c; }
  // Weights are compared too.
  friend bool operator==(const DiffOp& a, const DiffOp& b) {
    return a.lambda_ == b.lambda_ && a.mu_ == b.mu_ && a.symbol_ == b.symbol_;
  }

  std::string to_string() const;

 private:
  void check_weights(const DiffOp& other) const;

  PhasePoly symbol_;
  Rational lambda_;
  Rational mu_;
};

// A o B; requires A.lambda == B.mu. Result has weights (B.lambda, A.mu).
DiffOp compose(const DiffOp& a, const DiffOp& b);
// Action on functions of x (p variables are treated as constants).
PhasePoly apply(const DiffOp& a, const PhasePoly& f);
PhaseOp to_phase_op(const DiffOp& a);

// P^beta(x) p_beta -> P^beta(x) d_beta.
DiffOp normal_order_N(const PhasePoly& symbol, const Rational& lambda, const Rational& mu);

// Delta^ell with source weight lambda and target weight lambda + 2 ell / n.
DiffOp laplacian_power(const Signature& sig, int ell, const Rational& lambda);

// Exact quotient a / b of polynomials, or nullopt when b does not divide a.
// The divisor must not depend on x.
std::optional<PhasePoly> exact_divide(const PhasePoly& a, const PhasePoly& b);

// B with A = B o Delta^ell, or nullopt.
std::optional<DiffOp> right_divide(const DiffOp& a, int ell, const Signature& sig);

struct LaplacianReduction {
  DiffOp quotient;
  DiffOp remainder;
};

// A = quotient o Delta^ell + remainder, where no order-graded part of the
// remainder's symbol has a leading term divisible by that of R^ell. The
// remainder is a canonical representative of A modulo the left ideal.
LaplacianReduction reduce_mod_laplacian(const DiffOp& a, int ell, const Signature& sig);

}  // namespace confsym
