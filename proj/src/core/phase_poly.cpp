#include "confsym/phase_poly.hpp"

#include <sstream>
#include <string>

#include "confsym/errors.hpp"

namespace confsym {

void check_same_dimension(int a, int b) {
  if (a != b) {
    throw DimensionMismatch("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

PhasePoly::PhasePoly(int n) : n_(n) {
  if (n < 0 || n > kMaxVars) throw DegreeOverflow("at most 8 variables per block are supported");
}

PhasePoly PhasePoly::constant(int n, const Rational& c) {
  PhasePoly r(n);
  r.add_term(PhaseMono{}, c);
  return r;
}

PhasePoly PhasePoly::x(int n, int i) {
  if (i < 0 || i >= n) throw IndexOutOfRange("variable index out of range");
  PhasePoly r(n);
  r.add_term(PhaseMono{ExpVec{}, ExpVec::unit(i)}, 1);
  return r;
}

PhasePoly PhasePoly::p(int n, int i) {
  if (i < 0 || i >= n) throw IndexOutOfRange("variable index out of range");
  PhasePoly r(n);
  r.add_term(PhaseMono{ExpVec::unit(i), ExpVec{}}, 1);
  return r;
}

PhasePoly PhasePoly::monomial(int n, const PhaseMono& m, const Rational& c) {
  PhasePoly r(n);
  r.add_term(m, c);
  return r;
}

PhasePoly PhasePoly::monomial(int n, const std::vector<int>& xexp, const std::vector<int>& pexp,
                              const Rational& c) {
  if (static_cast<int>(xexp.size()) != n || static_cast<int>(pexp.size()) != n) {
    throw DimensionMismatch("exponent vector length must equal n");
  }
  PhaseMono m;
  for (int i = 0; i < n; ++i) {
    m.x.set(i, xexp[i]);
    m.p.set(i, pexp[i]);
  }
  return monomial(n, m, c);
}

void PhasePoly::add_term(const PhaseMono& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational PhasePoly::coefficient(const PhaseMono& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

int PhasePoly::max_degree_p() const {
  // Terms are ordered by p-degree first.
  return terms_.empty() ? -1 : terms_.rbegin()->first.p.degree();
}

int PhasePoly::min_degree_p() const {
  return terms_.empty() ? -1 : terms_.begin()->first.p.degree();
}

int PhasePoly::max_degree_x() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.x.degree());
  return d;
}

bool PhasePoly::is_homogeneous_p() const { return max_degree_p() == min_degree_p(); }

bool PhasePoly::depends_on_p() const { return max_degree_p() > 0; }

PhasePoly PhasePoly::degree_p_part(int k) const {
  PhasePoly r(n_);
  for (const auto& [m, c] : terms_) {
    if (m.p.degree() == k) r.terms_.emplace_hint(r.terms_.end(), m, c);
  }
  return r;
}

PhasePoly PhasePoly::degree_x_part(int d) const {
  PhasePoly r(n_);
  for (const auto& [m, c] : terms_) {
    if (m.x.degree() == d) r.terms_.emplace_hint(r.terms_.end(), m, c);
  }
  return r;
}

PhasePoly& PhasePoly::operator+=(const PhasePoly& other) {
  add_scaled(other, 1);
  return *this;
}

PhasePoly& PhasePoly::operator-=(const PhasePoly& other) {
  add_scaled(other, -1);
  return *this;
}

PhasePoly& PhasePoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& [m, v] : terms_) v *= c;
  }
  return *this;
}

void PhasePoly::add_scaled(const PhasePoly& other, const Rational& c) {
  check_same_dimension(n_, other.n_);
  if (c == 0) return;
  for (const auto& [m, v] : other.terms_) add_term(m, v * c);
}

PhasePoly operator*(const PhasePoly& a, const PhasePoly& b) {
  check_same_dimension(a.n_, b.n_);
  PhasePoly r(a.n_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      r.add_term(PhaseMono{ma.p + mb.p, ma.x + mb.x}, ca * cb);
    }
  }
  return r;
}

PhasePoly PhasePoly::pow(int e) const {
  PhasePoly r = constant(n_, 1);
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

std::string PhasePoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.get_str() << ")";
    for (int i = 0; i < n_; ++i) {
      if (m.x[i] > 0) os << "*x" << i + 1 << (m.x[i] > 1 ? "^" + std::to_string(m.x[i]) : "");
    }
    for (int i = 0; i < n_; ++i) {
      if (m.p[i] > 0) os << "*p" << i + 1 << (m.p[i] > 1 ? "^" + std::to_string(m.p[i]) : "");
    }
  }
  return os.str();
}

PhasePoly poly_arith(const PhasePoly& a, const PhasePoly& b, PolyOp op, const Rational& c) {
  switch (op) {
    case PolyOp::Add:
      return a + b;
    case PolyOp::Mul:
      return a * b;
    case PolyOp::Scale:
      return a * c;
  }
  throw InvalidArgument("unknown polynomial operation");
}

PhasePoly partial(const PhasePoly& a, VarKind kind, int i) {
  if (i < 0 || i >= a.n()) {
    throw IndexOutOfRange("derivative index " + std::to_string(i + 1) + " out of range 1.." +
                          std::to_string(a.n()));
  }
  PhasePoly r(a.n());
  for (const auto& [m, c] : a.terms()) {
    PhaseMono d = m;
    ExpVec& e = kind == VarKind::X ? d.x : d.p;
    const int k = e[i];
    if (k == 0) continue;
    e.set(i, k - 1);
    r.add_term(d, c * k);
  }
  return r;
}

PhasePoly poisson(const PhasePoly& a, const PhasePoly& b) {
  check_same_dimension(a.n(), b.n());
  PhasePoly r(a.n());
  for (int i = 0; i < a.n(); ++i) {
    r += partial(a, VarKind::P, i) * partial(b, VarKind::X, i);
    r -= partial(a, VarKind::X, i) * partial(b, VarKind::P, i);
  }
  return r;
}

PhasePoly squared_momentum(const std::vector<int>& eta) {
  const int n = static_cast<int>(eta.size());
  PhasePoly r(n);
  for (int i = 0; i < n; ++i) {
    PhaseMono m;
    m.p.set(i, 2);
    r.add_term(m, eta[i]);
  }
  return r;
}

PhasePoly squared_position(const std::vector<int>& eta) {
  const int n = static_cast<int>(eta.size());
  PhasePoly r(n);
  for (int i = 0; i < n; ++i) {
    PhaseMono m;
    m.x.set(i, 2);
    r.add_term(m, eta[i]);
  }
  return r;
}

}  // namespace confsym
