#pragma once

#include <compare>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include "confsym/expvec.hpp"
#include "confsym/rational.hpp"

namespace confsym {

// x^alpha p^beta. Ordered graded-lex on (beta, alpha).
struct PhaseMono {
  ExpVec p;
  ExpVec x;

  friend bool operator==(const PhaseMono&, const PhaseMono&) = default;
  friend std::strong_ordering operator<=>(const PhaseMono& a, const PhaseMono& b) {
    if (auto c = a.p <=> b.p; c != 0) return c;
    return a.x <=> b.x;
  }
};

enum class VarKind { X, P };

// Sparse polynomial in x^1..x^n, p_1..p_n with exact rational coefficients.
// No zero coefficient is ever stored.
class PhasePoly {
 public:
  using TermMap = std::map<PhaseMono, Rational>;

  PhasePoly() = default;
  explicit PhasePoly(int n);

  static PhasePoly constant(int n, const Rational& c);
  static PhasePoly x(int n, int i);
  static PhasePoly p(int n, int i);
  static PhasePoly monomial(int n, const PhaseMono& m, const Rational& c = 1);
  // Exponent lists of length n.
  static PhasePoly monomial(int n, const std::vector<int>& xexp, const std::vector<int>& pexp,
                            const Rational& c = 1);

  int n() const { return n_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const PhaseMono& m, const Rational& c);
  Rational coefficient(const PhaseMono& m) const;

  // -1 for the zero polynomial.
  int max_degree_p() const;
  int min_degree_p() const;
  int max_degree_x() const;
  bool is_homogeneous_p() const;
  bool depends_on_p() const;

  // Part of p-degree exactly k.
  PhasePoly degree_p_part(int k) const;
  // Part of x-degree exactly d.
  PhasePoly degree_x_part(int d) const;

  PhasePoly& operator+=(const PhasePoly& other);
  PhasePoly& operator-=(const PhasePoly& other);
  PhasePoly& operator*=(const Rational& c);
  // Adds c * other.
  void add_scaled(const PhasePoly& other, const Rational& c);

  friend PhasePoly operator+(PhasePoly a, const PhasePoly& b) { return a += b; }
  friend PhasePoly operator-(PhasePoly a, const PhasePoly& b) { return a -= b; }
  friend PhasePoly operator-(PhasePoly a) { return a *= Rational(-1); }
  friend PhasePoly operator*(PhasePoly a, const Rational& c) { return a *= c; }
  friend PhasePoly operator*(const Rational& c, PhasePoly a) { return a *= c; }
  friend PhasePoly operator*(const PhasePoly& a, const PhasePoly& b);
  friend bool operator==(const PhasePoly& a, const PhasePoly& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  PhasePoly pow(int e) const;

  std::string to_string() const;

 private:
  int n_ = 0;
  TermMap terms_;
};

void check_same_dimension(int a, int b);

// Scale by c, or add/multiply; the spelled-out entry point of the ring module.
enum class PolyOp { Add, Mul, Scale };
PhasePoly poly_arith(const PhasePoly& a, const PhasePoly& b, PolyOp op, const Rational& c = 1);

// Formal partial derivative in x^i or p_i (0-based index).
PhasePoly partial(const PhasePoly& a, VarKind kind, int i);

// {a,b} = sum_i d_{p_i}a d_{x^i}b - d_{x^i}a d_{p_i}b.
PhasePoly poisson(const PhasePoly& a, const PhasePoly& b);

// eta^{ij} p_i p_j for the given diagonal metric (entries +-1).
PhasePoly squared_momentum(const std::vector<int>& eta);
// eta_{ij} x^i x^j.
PhasePoly squared_position(const std::vector<int>& eta);

}  // namespace confsym
