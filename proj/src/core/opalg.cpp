#include "confsym/opalg.hpp"

#include <sstream>
#include <unordered_map>

#include "confsym/errors.hpp"
#include "leibniz.hpp"

namespace confsym {
namespace detail {

namespace {

struct PairHash {
  std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& k) const {
    return std::hash<std::uint64_t>()(k.first * 0x9E3779B97F4A7C15ull ^ k.second);
  }
};

long falling(int m, int g) {
  long r = 1;
  for (int i = 0; i < g; ++i) r *= m - i;
  return r;
}

long binom(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

const std::vector<std::pair<ExpVec, Rational>>& leibniz_terms(ExpVec c, ExpVec m) {
  thread_local std::unordered_map<std::pair<std::uint64_t, std::uint64_t>,
                                  std::vector<std::pair<ExpVec, Rational>>, PairHash>
      cache;
  auto key = std::make_pair(c.raw(), m.raw());
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  std::vector<std::pair<ExpVec, Rational>> out{{ExpVec{}, Rational(1)}};
  for (int i = 0; i < kMaxVars; ++i) {
    const int top = std::min(c[i], m[i]);
    if (top == 0) continue;
    std::vector<std::pair<ExpVec, Rational>> next;
    next.reserve(out.size() * (top + 1));
    for (const auto& [g, coef] : out) {
      for (int e = 0; e <= top; ++e) {
        ExpVec ge = g;
        ge.set(i, e);
        next.emplace_back(ge, coef * binom(c[i], e) * falling(m[i], e));
      }
    }
    out = std::move(next);
  }
  return cache.emplace(key, std::move(out)).first->second;
}

Rational falling_factor(ExpVec c, ExpVec m) {
  if (!c.divides(m)) return 0;
  Rational r = 1;
  for (int i = 0; i < kMaxVars; ++i) {
    if (c[i] > 0) r *= falling(m[i], c[i]);
  }
  return r;
}

}  // namespace detail

using detail::falling_factor;
using detail::leibniz_terms;

// ---- PhaseOp ----

PhaseOp::PhaseOp(int n) : n_(n) {
  if (n < 0 || n > kMaxVars) throw DegreeOverflow("at most 8 variables per block are supported");
}

PhaseOp PhaseOp::identity(int n) { return scalar(n, 1); }

PhaseOp PhaseOp::scalar(int n, const Rational& c) {
  PhaseOp r(n);
  r.add_term(OpMono{}, c);
  return r;
}

PhaseOp PhaseOp::multiplication(const PhasePoly& f) {
  PhaseOp r(f.n());
  for (const auto& [m, c] : f.terms()) r.add_term(OpMono{m.x, m.p, {}, {}}, c);
  return r;
}

PhaseOp PhaseOp::d_x(int n, int i) {
  if (i < 0 || i >= n) throw IndexOutOfRange("derivative index out of range");
  PhaseOp r(n);
  r.add_term(OpMono{{}, {}, ExpVec::unit(i), {}}, 1);
  return r;
}

PhaseOp PhaseOp::d_p(int n, int i) {
  if (i < 0 || i >= n) throw IndexOutOfRange("derivative index out of range");
  PhaseOp r(n);
  r.add_term(OpMono{{}, {}, {}, ExpVec::unit(i)}, 1);
  return r;
}

void PhaseOp::add_term(const OpMono& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

PhaseOp& PhaseOp::operator+=(const PhaseOp& other) {
  add_scaled(other, 1);
  return *this;
}

PhaseOp& PhaseOp::operator-=(const PhaseOp& other) {
  add_scaled(other, -1);
  return *this;
}

PhaseOp& PhaseOp::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& [m, v] : terms_) v *= c;
  }
  return *this;
}

void PhaseOp::add_scaled(const PhaseOp& other, const Rational& c) {
  check_same_dimension(n_, other.n_);
  if (c == 0) return;
  for (const auto& [m, v] : other.terms_) add_term(m, v * c);
}

std::string PhaseOp::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  auto put = [&](const char* name, ExpVec e) {
    for (int i = 0; i < n_; ++i) {
      if (e[i] > 0) os << "*" << name << i + 1 << (e[i] > 1 ? "^" + std::to_string(e[i]) : "");
    }
  };
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.get_str() << ")";
    put("x", m.x);
    put("p", m.p);
    put("dx", m.dx);
    put("dp", m.dp);
  }
  return os.str();
}

PhasePoly op_apply(const PhaseOp& a, const PhasePoly& f) {
  check_same_dimension(a.n(), f.n());
  PhasePoly r(a.n());
  for (const auto& [om, oc] : a.terms()) {
    for (const auto& [fm, fc] : f.terms()) {
      if (!om.dx.divides(fm.x) || !om.dp.divides(fm.p)) continue;
      const Rational k = falling_factor(om.dx, fm.x) * falling_factor(om.dp, fm.p);
      r.add_term(PhaseMono{fm.p.minus(om.dp) + om.p, fm.x.minus(om.dx) + om.x}, oc * fc * k);
    }
  }
  return r;
}

PhaseOp op_compose(const PhaseOp& a, const PhaseOp& b) {
  check_same_dimension(a.n(), b.n());
  PhaseOp r(a.n());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      const auto& xs = leibniz_terms(ma.dx, mb.x);
      const auto& ps = leibniz_terms(ma.dp, mb.p);
      const Rational cab = ca * cb;
      for (const auto& [gx, kx] : xs) {
        const ExpVec x = ma.x + mb.x.minus(gx);
        const ExpVec dx = ma.dx.minus(gx) + mb.dx;
        for (const auto& [gp, kp] : ps) {
          r.add_term(OpMono{x, ma.p + mb.p.minus(gp), dx, ma.dp.minus(gp) + mb.dp}, cab * kx * kp);
        }
      }
    }
  }
  return r;
}

PhaseOp commutator(const PhaseOp& a, const PhaseOp& b) { return op_compose(a, b) - op_compose(b, a); }

PhaseOp op_pow(const PhaseOp& a, int e) {
  PhaseOp r = PhaseOp::identity(a.n());
  for (int i = 0; i < e; ++i) r = op_compose(r, a);
  return r;
}

// ---- DiffOp ----

DiffOp::DiffOp(int n, const Rational& lambda, const Rational& mu)
    : symbol_(n), lambda_(lambda), mu_(mu) {}

DiffOp::DiffOp(PhasePoly symbol, const Rational& lambda, const Rational& mu)
    : symbol_(std::move(symbol)), lambda_(lambda), mu_(mu) {}

DiffOp DiffOp::identity(int n, const Rational& lambda) {
  return DiffOp(PhasePoly::constant(n, 1), lambda, lambda);
}

DiffOp DiffOp::multiplication(const PhasePoly& f, const Rational& lambda, const Rational& mu) {
  if (f.depends_on_p()) throw InvalidArgument("multiplication operator must not depend on p");
  return DiffOp(f, lambda, mu);
}

DiffOp DiffOp::with_weights(const Rational& lambda, const Rational& mu) const {
  return DiffOp(symbol_, lambda, mu);
}

void DiffOp::check_weights(const DiffOp& other) const {
  if (lambda_ != other.lambda_ || mu_ != other.mu_) {
    throw WeightMismatch("operators act between different density weights");
  }
}

DiffOp& DiffOp::operator+=(const DiffOp& other) {
  check_weights(other);
  symbol_ += other.symbol_;
  return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& other) {
  check_weights(other);
  symbol_ -= other.symbol_;
  return *this;
}

DiffOp& DiffOp::operator*=(const Rational& c) {
  symbol_ *= c;
  return *this;
}

std::string DiffOp::to_string() const {
  std::string s = symbol_.to_string();
  for (std::size_t pos = s.find("*p"); pos != std::string::npos; pos = s.find("*p", pos)) {
    s.replace(pos, 2, "*d");
  }
  return s;
}

DiffOp compose(const DiffOp& a, const DiffOp& b) {
  check_same_dimension(a.n(), b.n());
  if (a.lambda() != b.mu()) {
    throw WeightMismatch("composition requires source weight of the left factor (" +
                         format_rational(a.lambda()) + ") to equal target weight of the right (" +
                         format_rational(b.mu()) + ")");
  }
  PhasePoly r(a.n());
  for (const auto& [ma, ca] : a.symbol().terms()) {
    for (const auto& [mb, cb] : b.symbol().terms()) {
      const Rational cab = ca * cb;
      for (const auto& [g, k] : leibniz_terms(ma.p, mb.x)) {
        r.add_term(PhaseMono{ma.p.minus(g) + mb.p, ma.x + mb.x.minus(g)}, cab * k);
      }
    }
  }
  return DiffOp(std::move(r), b.lambda(), a.mu());
}

PhasePoly apply(const DiffOp& a, const PhasePoly& f) {
  check_same_dimension(a.n(), f.n());
  PhasePoly r(a.n());
  for (const auto& [om, oc] : a.symbol().terms()) {
    for (const auto& [fm, fc] : f.terms()) {
      if (!om.p.divides(fm.x)) continue;
      r.add_term(PhaseMono{fm.p, fm.x.minus(om.p) + om.x}, oc * fc * falling_factor(om.p, fm.x));
    }
  }
  return r;
}

PhaseOp to_phase_op(const DiffOp& a) {
  PhaseOp r(a.n());
  for (const auto& [m, c] : a.symbol().terms()) r.add_term(OpMono{m.x, {}, m.p, {}}, c);
  return r;
}

DiffOp normal_order_N(const PhasePoly& symbol, const Rational& lambda, const Rational& mu) {
  return DiffOp(symbol, lambda, mu);
}

DiffOp laplacian_power(const Signature& sig, int ell, const Rational& lambda) {
  std::vector<int> eta(sig.n());
  for (int i = 0; i < sig.n(); ++i) eta[i] = sig.eta(i);
  const PhasePoly r = squared_momentum(eta).pow(ell);
  return DiffOp(r, lambda, lambda + rational(2 * ell, sig.n()));
}

namespace {

struct DivResult {
  PhasePoly quotient;
  PhasePoly remainder;
};

// Division by a single polynomial with respect to the (p, x) graded-lex
// order. A single polynomial is a Groebner basis of the ideal it generates,
// so the remainder is canonical and vanishes exactly when b divides a.
DivResult divide(const PhasePoly& a, const PhasePoly& b) {
  if (b.is_zero()) throw InvalidArgument("division by zero polynomial");
  const auto& [lead, lead_c] = *b.terms().rbegin();
  PhasePoly work = a;
  DivResult out{PhasePoly(a.n()), PhasePoly(a.n())};
  while (!work.is_zero()) {
    const auto [m, c] = *work.terms().rbegin();
    if (lead.p.divides(m.p) && lead.x.divides(m.x)) {
      const PhaseMono q{m.p.minus(lead.p), m.x.minus(lead.x)};
      const Rational f = c / lead_c;
      out.quotient.add_term(q, f);
      work.add_scaled(PhasePoly::monomial(a.n(), q) * b, -f);
    } else {
      out.remainder.add_term(m, c);
      work.add_term(m, -c);
    }
  }
  return out;
}

}  // namespace

std::optional<PhasePoly> exact_divide(const PhasePoly& a, const PhasePoly& b) {
  check_same_dimension(a.n(), b.n());
  DivResult d = divide(a, b);
  if (!d.remainder.is_zero()) return std::nullopt;
  return d.quotient;
}

LaplacianReduction reduce_mod_laplacian(const DiffOp& a, int ell, const Signature& sig) {
  if (ell < 1) throw InvalidArgument("power of the Laplacian must be positive");
  check_same_dimension(a.n(), sig.n());
  const DiffOp lap = laplacian_power(sig, ell, a.lambda());
  const Rational mid = lap.mu();
  DiffOp quotient(a.n(), mid, a.mu());
  DiffOp rest = a;
  for (int d = rest.order(); d >= 2 * ell; --d) {
    const PhasePoly part = rest.symbol().degree_p_part(d);
    if (part.is_zero()) continue;
    DivResult q = divide(part, lap.symbol());
    if (q.quotient.is_zero()) continue;
    const DiffOp qop(q.quotient, mid, a.mu());
    quotient += qop;
    rest -= compose(qop, lap);
  }
  return LaplacianReduction{quotient, rest};
}

std::optional<DiffOp> right_divide(const DiffOp& a, int ell, const Signature& sig) {
  LaplacianReduction red = reduce_mod_laplacian(a, ell, sig);
  if (!red.remainder.is_zero()) return std::nullopt;
  return red.quotient;
}

}  // namespace confsym
