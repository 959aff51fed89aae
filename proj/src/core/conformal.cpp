#include "confsym/conformal.hpp"

#include <map>
#include <mutex>

#include "confsym/errors.hpp"

namespace confsym {

namespace {

PhasePoly xvar(int n, int i) { return PhasePoly::x(n, i); }

Matrix zero_matrix(int size) { return Matrix(size, DenseVec(size, Rational(0))); }

PhasePoly apply_field(const std::vector<PhasePoly>& x, const PhasePoly& f) {
  PhasePoly r(f.n());
  for (int i = 0; i < static_cast<int>(x.size()); ++i) {
    if (!x[i].is_zero()) r += x[i] * partial(f, VarKind::X, i);
  }
  return r;
}

PhasePoly divergence_of(const std::vector<PhasePoly>& x, int n) {
  PhasePoly r(n);
  for (int i = 0; i < n; ++i) r += partial(x[i], VarKind::X, i);
  return r;
}

std::string one_based(int i) { return std::to_string(i + 1); }

// The ambient matrix is -M, where M generates the field
// V_M = (M xi)_mid - x (M xi)_+ with xi = (1, x, -x^2/2); the minus sign turns
// the anti-homomorphism M -> V_M into a homomorphism.
Matrix negate(Matrix m) {
  for (auto& row : m) {
    for (auto& v : row) v = -v;
  }
  return m;
}

}  // namespace

std::vector<ConformalGenerator> generators(const Signature& sig) {
  const int n = sig.n();
  const int amb = n + 2;
  const int plus = 0;
  const int minus = n + 1;
  PhasePoly x2(n);
  for (int k = 0; k < n; ++k) x2.add_scaled(xvar(n, k).pow(2), sig.eta(k));

  auto make = [&](GeneratorKind kind, int i, int j, std::string label, std::vector<PhasePoly> field,
                  Matrix m) {
    ConformalGenerator g{kind, i, j, std::move(label), std::move(field), PhasePoly(n), negate(std::move(m))};
    g.divergence = divergence_of(g.field, n);
    return g;
  };
  auto empty_field = [&] { return std::vector<PhasePoly>(n, PhasePoly(n)); };

  std::vector<ConformalGenerator> out;
  for (int i = 0; i < n; ++i) {
    auto f = empty_field();
    f[i] = PhasePoly::constant(n, 1);
    Matrix m = zero_matrix(amb);
    m[1 + i][plus] = 1;
    m[minus][1 + i] = -sig.eta(i);
    out.push_back(make(GeneratorKind::Translation, i, -1, "P" + one_based(i), std::move(f), std::move(m)));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      auto f = empty_field();
      f[j] = xvar(n, i) * Rational(sig.eta(i));
      f[i] = xvar(n, j) * Rational(-sig.eta(j));
      Matrix m = zero_matrix(amb);
      m[1 + j][1 + i] = sig.eta(i);
      m[1 + i][1 + j] = -sig.eta(j);
      out.push_back(make(GeneratorKind::Rotation, i, j, "J" + one_based(i) + one_based(j), std::move(f),
                         std::move(m)));
    }
  }
  {
    auto f = empty_field();
    for (int k = 0; k < n; ++k) f[k] = xvar(n, k);
    Matrix m = zero_matrix(amb);
    m[plus][plus] = -1;
    m[minus][minus] = 1;
    out.push_back(make(GeneratorKind::Dilation, -1, -1, "E", std::move(f), std::move(m)));
  }
  for (int i = 0; i < n; ++i) {
    auto f = empty_field();
    const PhasePoly xi = xvar(n, i) * Rational(2 * sig.eta(i));
    for (int k = 0; k < n; ++k) f[k] = xi * xvar(n, k);
    f[i] -= x2;
    Matrix m = zero_matrix(amb);
    m[1 + i][minus] = 2;
    m[plus][1 + i] = -2 * sig.eta(i);
    out.push_back(make(GeneratorKind::SpecialConformal, i, -1, "K" + one_based(i), std::move(f),
                       std::move(m)));
  }
  return out;
}

std::vector<PhasePoly> field_bracket(const std::vector<PhasePoly>& x, const std::vector<PhasePoly>& y) {
  if (x.size() != y.size()) throw DimensionMismatch("vector fields of different dimension");
  std::vector<PhasePoly> r;
  r.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r.push_back(apply_field(x, y[i]) - apply_field(y, x[i]));
  return r;
}

PhasePoly moment(const ConformalGenerator& x) {
  const int n = static_cast<int>(x.field.size());
  PhasePoly r(n);
  for (int i = 0; i < n; ++i) r += x.field[i] * PhasePoly::p(n, i);
  return r;
}

DiffOp lie_density(const ConformalGenerator& x, const Rational& lambda) {
  return DiffOp(moment(x) + x.divergence * lambda, lambda, lambda);
}

PhaseOp lie_symbol(const ConformalGenerator& x, const Rational& delta) {
  const int n = static_cast<int>(x.field.size());
  PhaseOp r = PhaseOp::multiplication(x.divergence * delta);
  for (int i = 0; i < n; ++i) {
    r += op_compose(PhaseOp::multiplication(x.field[i]), PhaseOp::d_x(n, i));
    PhasePoly coeff(n);
    for (int j = 0; j < n; ++j) coeff += PhasePoly::p(n, j) * partial(x.field[j], VarKind::X, i);
    r -= op_compose(PhaseOp::multiplication(coeff), PhaseOp::d_p(n, i));
  }
  return r;
}

DiffOp lie_operator(const ConformalGenerator& x, const Rational& lambda, const Rational& mu,
                    const DiffOp& a) {
  if (a.lambda() != lambda || a.mu() != mu) {
    throw WeightMismatch("operator weights (" + format_rational(a.lambda()) + ", " +
                         format_rational(a.mu()) + ") differ from the requested (" +
                         format_rational(lambda) + ", " + format_rational(mu) + ")");
  }
  return compose(lie_density(x, mu), a) - compose(a, lie_density(x, lambda));
}

PhaseOp operator_action_on_symbols(const ConformalGenerator& x, const Rational& lambda, const Rational& mu) {
  const int n = static_cast<int>(x.field.size());
  PhaseOp r = PhaseOp::multiplication(x.divergence * Rational(mu - lambda));
  for (int i = 0; i < n; ++i) r += op_compose(PhaseOp::multiplication(x.field[i]), PhaseOp::d_x(n, i));
  // - sum_{|g| >= 1} (1/g!) (d_x^g sigma) d_p^g, with sigma = X^i p_i + lambda Div X
  // of x-degree at most 2.
  const PhasePoly sigma = moment(x) + x.divergence * lambda;
  for (int i = 0; i < n; ++i) {
    const PhasePoly di = partial(sigma, VarKind::X, i);
    if (di.is_zero()) continue;
    r -= op_compose(PhaseOp::multiplication(di), PhaseOp::d_p(n, i));
    for (int j = i; j < n; ++j) {
      const PhasePoly dij = partial(di, VarKind::X, j);
      if (dij.is_zero()) continue;
      const Rational w = i == j ? Rational(1, 2) : Rational(1);
      r -= op_compose(PhaseOp::multiplication(dij * w), op_compose(PhaseOp::d_p(n, i), PhaseOp::d_p(n, j)));
    }
  }
  return r;
}

Rational killing_form(const ConformalGenerator& x, const ConformalGenerator& y) {
  const auto& a = x.ambient;
  const auto& b = y.ambient;
  Rational tr = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (a[i][k] != 0 && b[k][i] != 0) tr += a[i][k] * b[k][i];
    }
  }
  return tr / 2;
}

namespace {

SparseVec matrix_vector(const Matrix& m) {
  SparseVec v;
  const std::size_t size = m.size();
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      if (m[i][j] != 0) v.emplace_back(static_cast<std::uint32_t>(i * size + j), m[i][j]);
    }
  }
  return v;
}

Matrix matrix_commutator(const Matrix& a, const Matrix& b) {
  Matrix ab = multiply(a, b);
  Matrix ba = multiply(b, a);
  for (std::size_t i = 0; i < ab.size(); ++i) {
    for (std::size_t j = 0; j < ab.size(); ++j) ab[i][j] -= ba[i][j];
  }
  return ab;
}

}  // namespace

ConformalAlgebra::ConformalAlgebra(const Signature& sig) : sig_(sig), gens_(confsym::generators(sig)) {
  const int d = dim();
  for (int a = 0; a < d; ++a) {
    const SparseVec tag{{static_cast<std::uint32_t>(a), Rational(1)}};
    std::vector<std::pair<std::uint32_t, Rational>> entries;
    for (int i = 0; i < n(); ++i) {
      for (const auto& [m, c] : gens_[a].field[i].terms()) entries.emplace_back(field_index_.id({i, m}), c);
    }
    if (!field_span_.insert(normalize(std::move(entries)), tag)) {
      throw Error("internal: generator fields are linearly dependent");
    }
    if (!ambient_span_.insert(matrix_vector(gens_[a].ambient), tag)) {
      throw Error("internal: ambient matrices are linearly dependent");
    }
  }
  field_consts_.assign(d, std::vector<DenseVec>(d));
  ambient_consts_.assign(d, std::vector<DenseVec>(d));
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      auto fc = field_coordinates(field_bracket(gens_[a].field, gens_[b].field));
      auto ac = ambient_coordinates(matrix_commutator(gens_[a].ambient, gens_[b].ambient));
      if (!fc || !ac) throw Error("internal: conformal generators do not close under the bracket");
      field_consts_[a][b] = std::move(*fc);
      ambient_consts_[a][b] = std::move(*ac);
    }
  }
  killing_.assign(d, DenseVec(d, Rational(0)));
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) killing_[a][b] = killing_form(gens_[a], gens_[b]);
  }
  killing_inv_ = inverse(killing_);
}

int ConformalAlgebra::index_of(const std::string& label) const {
  for (int a = 0; a < dim(); ++a) {
    if (gens_[a].label == label) return a;
  }
  throw InvalidArgument("unknown generator label '" + label + "'");
}

std::optional<DenseVec> ConformalAlgebra::field_coordinates(const std::vector<PhasePoly>& field) const {
  if (static_cast<int>(field.size()) != n()) throw DimensionMismatch("vector field of wrong dimension");
  std::vector<std::pair<std::uint32_t, Rational>> entries;
  for (int i = 0; i < n(); ++i) {
    for (const auto& [m, c] : field[i].terms()) {
      auto id = field_index_.find({i, m});
      if (!id) return std::nullopt;
      entries.emplace_back(*id, c);
    }
  }
  auto coords = field_span_.coordinates(normalize(std::move(entries)));
  if (!coords) return std::nullopt;
  return to_dense(*coords, dim());
}

std::optional<DenseVec> ConformalAlgebra::ambient_coordinates(const Matrix& m) const {
  auto coords = ambient_span_.coordinates(matrix_vector(m));
  if (!coords) return std::nullopt;
  return to_dense(*coords, dim());
}

std::vector<PhasePoly> ConformalAlgebra::combine_fields(const DenseVec& coords) const {
  std::vector<PhasePoly> out(n(), PhasePoly(n()));
  for (int a = 0; a < dim(); ++a) {
    if (coords[a] == 0) continue;
    for (int i = 0; i < n(); ++i) out[i].add_scaled(gens_[a].field[i], coords[a]);
  }
  return out;
}

std::shared_ptr<const ConformalAlgebra> conformal_algebra(const Signature& sig) {
  static std::mutex mutex;
  static std::map<Signature, std::shared_ptr<const ConformalAlgebra>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[sig];
  if (!slot) slot = std::make_shared<const ConformalAlgebra>(sig);
  return slot;
}

}  // namespace confsym
