#include "confsym/invariants.hpp"

#include <map>
#include <memory>
#include <mutex>

#include "confsym/errors.hpp"
#include "confsym/linalg.hpp"
#include "equations.hpp"

namespace confsym {

using detail::add_rows;
using detail::times_x;

std::string ContractionMono::to_string() const {
  std::string out;
  auto put = [&](const char* name, int e) {
    if (e == 0) return;
    if (!out.empty()) out += " ";
    out += name;
    if (e > 1) out += "^" + std::to_string(e);
  };
  put("R", a);
  put("G", b);
  put("Lambda", c);
  put("D", e);
  put("T", f);
  return out.empty() ? "Id" : out;
}

namespace {

PhaseOp make_R(const Signature& sig) {
  std::vector<int> eta(sig.n());
  for (int i = 0; i < sig.n(); ++i) eta[i] = sig.eta(i);
  return PhaseOp::multiplication(squared_momentum(eta));
}

PhaseOp make_T(const Signature& sig) {
  PhaseOp r(sig.n());
  for (int i = 0; i < sig.n(); ++i) {
    OpMono m;
    m.dp.set(i, 2);
    r.add_term(m, sig.eta(i));
  }
  return r;
}

PhaseOp make_D(const Signature& sig) {
  PhaseOp r(sig.n());
  for (int i = 0; i < sig.n(); ++i) r.add_term(OpMono{{}, {}, ExpVec::unit(i), ExpVec::unit(i)}, 1);
  return r;
}

PhaseOp make_G(const Signature& sig) {
  PhaseOp r(sig.n());
  for (int i = 0; i < sig.n(); ++i) r.add_term(OpMono{{}, ExpVec::unit(i), ExpVec::unit(i), {}}, sig.eta(i));
  return r;
}

PhaseOp make_Lambda(const Signature& sig) {
  PhaseOp r(sig.n());
  for (int i = 0; i < sig.n(); ++i) {
    OpMono m;
    m.dx.set(i, 2);
    r.add_term(m, sig.eta(i));
  }
  return r;
}

PhaseOp make_Ex(const Signature& sig) {
  PhaseOp r(sig.n());
  for (int i = 0; i < sig.n(); ++i) r.add_term(OpMono{ExpVec::unit(i), {}, ExpVec::unit(i), {}}, 1);
  return r;
}

PhaseOp make_Ep(const Signature& sig) {
  PhaseOp r(sig.n());
  for (int i = 0; i < sig.n(); ++i) r.add_term(OpMono{{}, ExpVec::unit(i), {}, ExpVec::unit(i)}, 1);
  return r;
}

std::vector<ExpVec> monomials_of_degree(int n, int k) {
  std::vector<ExpVec> out;
  ExpVec cur;
  auto rec = [&](auto&& self, int var, int left) -> void {
    if (var == n - 1) {
      cur.set(var, left);
      out.push_back(cur);
      cur.set(var, 0);
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur.set(var, e);
      self(self, var + 1, left - e);
    }
    cur.set(var, 0);
  };
  if (n > 0) rec(rec, 0, k);
  return out;
}

// Harmonic structure of constant-coefficient p-polynomials of degree k.
struct HarmonicData {
  int k = 0;
  std::map<ExpVec, std::uint32_t> index;
  SparseEchelon echelon;         // rows R^s h, tagged by position
  std::vector<int> part;         // s of each basis position
  std::vector<PhasePoly> traceless;  // h of each basis position
  std::vector<std::vector<PhasePoly>> component_basis;  // R^s h grouped by s
};

// Trace-free constant-coefficient polynomials of degree j.
std::vector<PhasePoly> harmonic_basis(const Signature& sig, int j) {
  const int n = sig.n();
  const auto monos = monomials_of_degree(n, j);
  std::vector<PhasePoly> out;
  if (j < 2) {
    for (const auto& m : monos) out.push_back(PhasePoly::monomial(n, PhaseMono{m, {}}));
    return out;
  }
  std::map<ExpVec, std::uint32_t> lower;
  std::uint32_t next = 0;
  for (const auto& m : monomials_of_degree(n, j - 2)) lower[m] = next++;
  const PhaseOp t = make_T(sig);
  std::vector<SparseVec> columns;
  for (const auto& m : monos) {
    std::vector<std::pair<std::uint32_t, Rational>> entries;
    const PhasePoly image = op_apply(t, PhasePoly::monomial(n, PhaseMono{m, {}}));
    for (const auto& [pm, c] : image.terms()) {
      entries.emplace_back(lower.at(pm.p), c);
    }
    columns.push_back(normalize(std::move(entries)));
  }
  for (const auto& v : kernel_of_columns(columns)) {
    PhasePoly h(n);
    for (const auto& [i, c] : v) h.add_term(PhaseMono{monos[i], {}}, c);
    out.push_back(std::move(h));
  }
  return out;
}

std::shared_ptr<const HarmonicData> harmonic_data(const Signature& sig, int k) {
  static std::mutex mutex;
  static std::map<std::pair<Signature, int>, std::shared_ptr<const HarmonicData>> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find({sig, k});
    if (it != cache.end()) return it->second;
  }
  auto data = std::make_shared<HarmonicData>();
  const int n = sig.n();
  data->k = k;
  std::uint32_t next = 0;
  for (const auto& m : monomials_of_degree(n, k)) data->index[m] = next++;
  std::vector<int> eta(n);
  for (int i = 0; i < n; ++i) eta[i] = sig.eta(i);
  const PhasePoly r = squared_momentum(eta);
  data->component_basis.resize(k / 2 + 1);
  for (int s = 0; 2 * s <= k; ++s) {
    const PhasePoly rs = r.pow(s);
    for (const auto& h : harmonic_basis(sig, k - 2 * s)) {
      const PhasePoly full = rs * h;
      std::vector<std::pair<std::uint32_t, Rational>> entries;
      for (const auto& [m, c] : full.terms()) entries.emplace_back(data->index.at(m.p), c);
      const SparseVec tag{{static_cast<std::uint32_t>(data->part.size()), Rational(1)}};
      if (!data->echelon.insert(normalize(std::move(entries)), tag)) {
        throw Error("internal: harmonic decomposition is not direct");
      }
      data->part.push_back(s);
      data->traceless.push_back(h);
      data->component_basis[s].push_back(full);
    }
  }
  if (data->echelon.rank() != data->index.size()) throw Error("internal: harmonic decomposition incomplete");
  std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(std::make_pair(sig, k), std::move(data)).first->second;
}

// Components P_s (not multiplied by R^s) of a p-homogeneous polynomial.
std::vector<PhasePoly> components_of(const PhasePoly& p, const Signature& sig, int k) {
  const int n = sig.n();
  auto data = harmonic_data(sig, k);
  std::map<ExpVec, std::vector<std::pair<std::uint32_t, Rational>>> by_x;
  for (const auto& [m, c] : p.terms()) by_x[m.x].emplace_back(data->index.at(m.p), c);
  std::vector<PhasePoly> out(k / 2 + 1, PhasePoly(n));
  for (auto& [x, entries] : by_x) {
    auto coords = data->echelon.coordinates(normalize(std::move(entries)));
    if (!coords) throw Error("internal: symbol outside the harmonic basis");
    const PhasePoly xm = PhasePoly::monomial(n, PhaseMono{{}, x});
    for (const auto& [i, c] : *coords) out[data->part[i]].add_scaled(xm * data->traceless[i], c);
  }
  return out;
}

void require_homogeneous(const PhasePoly& p) {
  if (!p.is_homogeneous_p()) throw InvalidArgument("symbol is not homogeneous in p");
}

}  // namespace

PhaseOp contraction_op(const Signature& sig, const ContractionMono& m) {
  static std::mutex mutex;
  static std::map<std::pair<Signature, ContractionMono>, PhaseOp> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find({sig, m});
    if (it != cache.end()) return it->second;
  }
  PhaseOp r = op_pow(make_R(sig), m.a);
  r = op_compose(r, op_pow(make_G(sig), m.b));
  r = op_compose(r, op_pow(make_Lambda(sig), m.c));
  r = op_compose(r, op_pow(make_D(sig), m.e));
  r = op_compose(r, op_pow(make_T(sig), m.f));
  std::lock_guard<std::mutex> lock(mutex);
  cache.emplace(std::make_pair(sig, m), r);
  return r;
}

std::vector<HarmonicPart> harmonic_decompose(const PhasePoly& p, const Signature& sig) {
  check_same_dimension(p.n(), sig.n());
  if (p.is_zero()) return {};
  require_homogeneous(p);
  const int k = p.max_degree_p();
  auto comps = components_of(p, sig, k);
  std::vector<HarmonicPart> out;
  for (int s = 0; s < static_cast<int>(comps.size()); ++s) {
    if (!comps[s].is_zero()) out.push_back(HarmonicPart{s, std::move(comps[s])});
  }
  return out;
}

PhasePoly harmonic_project(const PhasePoly& p, const Signature& sig, int s) {
  check_same_dimension(p.n(), sig.n());
  if (p.is_zero()) return p;
  require_homogeneous(p);
  const int k = p.max_degree_p();
  if (s < 0 || 2 * s > k) return PhasePoly(p.n());
  auto comps = components_of(p, sig, k);
  std::vector<int> eta(sig.n());
  for (int i = 0; i < sig.n(); ++i) eta[i] = sig.eta(i);
  return squared_momentum(eta).pow(s) * comps[s];
}

PhasePoly project_to(const PhasePoly& p, const Signature& sig, const Domain& d) {
  PhasePoly part = p.degree_p_part(d.k);
  if (d.full() || part.is_zero()) return part;
  return harmonic_project(part, sig, d.s);
}

const std::vector<PhasePoly>& domain_p_basis(const Signature& sig, const Domain& d) {
  static std::mutex mutex;
  static std::map<std::pair<Signature, std::pair<int, int>>, std::vector<PhasePoly>> cache;
  if (d.k < 0 || (!d.full() && 2 * d.s > d.k)) throw InvalidArgument("invalid symbol component");
  const auto key = std::make_pair(sig, std::make_pair(d.k, d.s));
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  std::vector<PhasePoly> basis;
  if (d.full()) {
    for (const auto& m : monomials_of_degree(sig.n(), d.k)) {
      basis.push_back(PhasePoly::monomial(sig.n(), PhaseMono{m, {}}));
    }
  } else {
    basis = harmonic_data(sig, d.k)->component_basis[d.s];
  }
  std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(key, std::move(basis)).first->second;
}

std::vector<ExpVec> x_monomials(int n, int max_degree) {
  std::vector<ExpVec> out;
  for (int d = 0; d <= max_degree; ++d) {
    auto part = monomials_of_degree(n, d);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

CanonicalOp canonical(const std::string& name, const Signature& sig, std::optional<Domain> component,
                      int ell) {
  if (name == "R") return {name, make_R(sig), 0, 2};
  if (name == "T") return {name, make_T(sig), 0, -2};
  if (name == "D") return {name, make_D(sig), -1, -1};
  if (name == "G") return {name, make_G(sig), -1, 1};
  if (name == "Lambda") return {name, make_Lambda(sig), -2, 0};
  if (name == "Ex") return {name, make_Ex(sig), 0, 0};
  if (name == "Ep") return {name, make_Ep(sig), 0, 0};
  if (name == "G0") {
    if (!component || component->full()) {
      throw InvalidArgument("G0 requires the source component (k, s)");
    }
    const Domain src = *component;
    const Domain dst{src.k + 1, src.s};
    // pi_{k+1,s} o G restricted to S_{k,s}, written in the contraction ansatz.
    const auto monos = ansatz_monomials_exact(1, 1, src);
    DenseSystem sys(monos.size());
    std::vector<PhaseOp> ops;
    for (const auto& m : monos) ops.push_back(contraction_op(sig, m));
    // sum u_j ops[j] = pi o G on the source; only G is projected.
    std::map<detail::ImageKey, std::vector<PhasePoly>> grouped;
    for (std::size_t j = 0; j < ops.size(); ++j) {
      for (auto& [key, img] : detail::domain_images(ops[j], sig, src, std::nullopt)) {
        grouped.try_emplace(key, std::vector<PhasePoly>(ops.size(), PhasePoly(sig.n()))).first->second[j] = img;
      }
    }
    auto want = detail::domain_images(make_G(sig) * Rational(-1), sig, src, dst);
    for (const auto& [key, img] : want) {
      grouped.try_emplace(key, std::vector<PhasePoly>(ops.size(), PhasePoly(sig.n())));
    }
    const PhasePoly zero(sig.n());
    for (const auto& [key, images] : grouped) {
      auto it = want.find(key);
      add_rows(sys, images, it == want.end() ? &zero : &it->second);
    }
    if (!sys.consistent()) throw Error("internal: trace-free gradient outside the contraction ansatz");
    const DenseVec coeffs = sys.particular_solution();
    PhaseOp g0(sig.n());
    for (std::size_t j = 0; j < ops.size(); ++j) g0.add_scaled(ops[j], coeffs[j]);
    return {name, g0, -1, 1};
  }
  if (name == "Lell") {
    if (!component || ell < 1) throw InvalidArgument("Lell requires a positive power and the degree k");
    return {name, lell_operator(ell, solve_Lell(ell, component->k, sig), sig), -2 * ell, 0};
  }
  throw InvalidArgument("unknown canonical operator '" + name + "'");
}

namespace detail {

std::map<XKey, PhaseOp> split_x(const PhaseOp& op) {
  std::map<XKey, PhaseOp> out;
  for (const auto& [m, c] : op.terms()) {
    auto& q = out.try_emplace(XKey{m.x, m.dx}, PhaseOp(op.n())).first->second;
    q.add_term(OpMono{ExpVec{}, m.p, ExpVec{}, m.dp}, c);
  }
  return out;
}

std::map<ImageKey, PhasePoly> domain_images(const PhaseOp& op, const Signature& sig, const Domain& src,
                                            const std::optional<Domain>& target) {
  std::map<ImageKey, PhasePoly> out;
  const auto& basis = domain_p_basis(sig, src);
  for (const auto& [key, q] : split_x(op)) {
    for (std::size_t b = 0; b < basis.size(); ++b) {
      PhasePoly img = op_apply(q, basis[b]);
      if (target) img = project_to(img, sig, *target);
      if (!img.is_zero()) out.emplace(ImageKey{key.first, key.second, b}, std::move(img));
    }
  }
  return out;
}

void add_domain_rows(DenseSystem& sys, const std::vector<PhaseOp>& ops, const PhaseOp* rhs,
                     const Signature& sig, const Domain& src, const std::optional<Domain>& target) {
  const std::size_t w = ops.size();
  std::map<ImageKey, std::vector<PhasePoly>> grouped;
  std::map<ImageKey, PhasePoly> rhs_images;
  auto slot = [&](const ImageKey& k) -> std::vector<PhasePoly>& {
    return grouped.try_emplace(k, std::vector<PhasePoly>(w, PhasePoly(sig.n()))).first->second;
  };
  for (std::size_t j = 0; j < w; ++j) {
    for (auto& [k, img] : domain_images(ops[j], sig, src, target)) slot(k)[j] = std::move(img);
  }
  if (rhs != nullptr) {
    rhs_images = domain_images(*rhs, sig, src, target);
    for (const auto& [k, img] : rhs_images) slot(k);
  }
  const PhasePoly zero(sig.n());
  for (const auto& [k, images] : grouped) {
    if (rhs == nullptr) {
      add_rows(sys, images, nullptr);
    } else {
      auto it = rhs_images.find(k);
      add_rows(sys, images, it == rhs_images.end() ? &zero : &it->second);
    }
  }
}

}  // namespace detail

PhaseOp invariance_defect(const ConformalGenerator& x, const PhaseOp& o, const Rational& delta,
                          const Rational& delta_p) {
  return op_compose(lie_symbol(x, delta_p), o) - op_compose(o, lie_symbol(x, delta));
}

namespace {

// The generators whose equations are imposed: dilation and special conformal
// ones. Constant-coefficient contractions commute with translations and are
// O(p,q)-equivariant, so the remaining equations hold identically.
std::vector<const ConformalGenerator*> essential_generators(const ConformalAlgebra& alg) {
  std::vector<const ConformalGenerator*> out;
  for (const auto& g : alg.generators()) {
    if (g.kind == GeneratorKind::Dilation || g.kind == GeneratorKind::SpecialConformal) out.push_back(&g);
  }
  return out;
}

}  // namespace

bool is_invariant(const PhaseOp& o, const Rational& delta, const Rational& delta_p, const Signature& sig,
                  std::optional<Domain> domain, std::optional<Domain> target) {
  check_same_dimension(o.n(), sig.n());
  auto alg = conformal_algebra(sig);
  for (const auto& g : alg->generators()) {
    const PhaseOp defect = invariance_defect(g, o, delta, delta_p);
    if (defect.is_zero()) continue;
    if (!domain) return false;
    if (!detail::domain_images(defect, sig, *domain, target).empty()) return false;
  }
  return true;
}

std::vector<ContractionMono> ansatz_monomials_exact(int p_shift, int order, const Domain& source) {
  std::vector<ContractionMono> out;
  const int max_f = source.full() ? source.k / 2 : source.s;
  for (int b = 0; b <= order; ++b) {
    for (int c = 0; 2 * c <= order - b; ++c) {
      const int e = order - b - 2 * c;
      for (int f = 0; f <= max_f; ++f) {
        const int twice_a = p_shift - b + e + 2 * f;
        if (twice_a < 0 || twice_a % 2 != 0) continue;
        if (e + 2 * f > source.k) continue;
        out.push_back(ContractionMono{twice_a / 2, b, c, e, f});
      }
    }
  }
  return out;
}

std::vector<ContractionMono> ansatz_monomials(int p_shift, int max_order, const Domain& source) {
  std::vector<ContractionMono> out;
  for (int r = 0; r <= max_order; ++r) {
    auto part = ansatz_monomials_exact(p_shift, r, source);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

// Keeps the monomials that act independently (after projection to the
// target) on the source domain.
std::vector<ContractionMono> independent_on_domain(const std::vector<ContractionMono>& monos,
                                                   const Signature& sig, const Domain& src,
                                                   const Domain& dst) {
  Indexer<std::pair<detail::ImageKey, PhaseMono>> index;
  SparseEchelon span;
  std::vector<ContractionMono> out;
  for (std::size_t j = 0; j < monos.size(); ++j) {
    std::vector<std::pair<std::uint32_t, Rational>> entries;
    for (const auto& [key, img] : detail::domain_images(contraction_op(sig, monos[j]), sig, src, dst)) {
      for (const auto& [m, c] : img.terms()) entries.emplace_back(index.id({key, m}), c);
    }
    if (span.insert(normalize(std::move(entries)))) out.push_back(monos[j]);
  }
  return out;
}

namespace {

struct RawClassification {
  std::vector<ContractionMono> monos;
  std::vector<DenseVec> kernel;
};

RawClassification classify_at(const Domain& src, const Domain& dst, const Rational& delta,
                              const Rational& delta_p, const Signature& sig, int bound) {
  RawClassification out;
  out.monos = independent_on_domain(ansatz_monomials(dst.k - src.k, bound, src), sig, src, dst);
  const std::size_t w = out.monos.size();
  if (w == 0) return out;
  auto alg = conformal_algebra(sig);
  DenseSystem sys(w);
  for (const ConformalGenerator* g : essential_generators(*alg)) {
    std::vector<PhaseOp> defects;
    for (const auto& m : out.monos) defects.push_back(invariance_defect(*g, contraction_op(sig, m), delta, delta_p));
    detail::add_domain_rows(sys, defects, nullptr, sig, src, dst);
    if (sys.rank() == w) return out;
  }
  out.kernel = sys.kernel();
  return out;
}

}  // namespace

Classification classify(int k, int s, int kp, int sp, const Rational& delta, const Rational& delta_p,
                        const Signature& sig, int bound) {
  if (k < 0 || kp < 0 || s < 0 || sp < 0 || 2 * s > k || 2 * sp > kp) {
    throw InvalidArgument("components require 0 <= 2s <= k");
  }
  if (bound < 0) throw InvalidArgument("search bound must be non-negative");
  const Domain src{k, s};
  const Domain dst{kp, sp};
  RawClassification raw = classify_at(src, dst, delta, delta_p, sig, bound);
  RawClassification wider = classify_at(src, dst, delta, delta_p, sig, bound + 1);
  Classification out;
  out.source = src;
  out.target = dst;
  out.delta = delta;
  out.delta_p = delta_p;
  out.bound = bound;
  out.dimension = static_cast<int>(raw.kernel.size());
  out.stable = wider.kernel.size() == raw.kernel.size();
  for (const auto& v : raw.kernel) {
    std::vector<std::pair<ContractionMono, Rational>> combo;
    PhaseOp op(sig.n());
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (v[j] == 0) continue;
      combo.emplace_back(raw.monos[j], v[j]);
      op.add_scaled(contraction_op(sig, raw.monos[j]), v[j]);
    }
    out.basis.push_back(std::move(combo));
    out.basis_ops.push_back(std::move(op));
  }
  return out;
}

std::vector<Rational> solve_Lell(int ell, int k, const Signature& sig) {
  if (ell < 1) throw InvalidArgument("ell must be positive");
  if (k < 0) throw InvalidArgument("degree must be non-negative");
  const Rational n = sig.n();
  const Rational delta = rational(1, 2) + Rational(k - ell) / n;
  const Rational delta_p = delta + Rational(2 * ell) / n;
  const Domain dom{k, 0};
  const PhaseOp base = contraction_op(sig, ContractionMono{0, 0, ell, 0, 0});
  std::vector<PhaseOp> terms;
  for (int i = 1; i <= ell; ++i) terms.push_back(contraction_op(sig, ContractionMono{0, i, ell - i, i, 0}));
  auto alg = conformal_algebra(sig);
  DenseSystem sys(ell);
  for (const ConformalGenerator* g : essential_generators(*alg)) {
    const PhaseOp d0 = invariance_defect(*g, base, delta, delta_p);
    std::vector<PhaseOp> defects;
    for (const auto& t : terms) defects.push_back(invariance_defect(*g, t, delta, delta_p));
    detail::add_domain_rows(sys, defects, &d0, sig, dom, dom);
  }
  if (!sys.consistent()) {
    throw NoSolution("no invariant operator of the form Lambda^" + std::to_string(ell) +
                     " + sum a_i G^i D^i Lambda^(ell-i) on trace-free symbols of degree " + std::to_string(k));
  }
  if (sys.rank() < static_cast<std::size_t>(ell)) {
    throw NoSolution("coefficients of the invariant operator are not unique for ell=" + std::to_string(ell) +
                     ", k=" + std::to_string(k));
  }
  return sys.particular_solution();
}

PhaseOp lell_operator(int ell, const std::vector<Rational>& coeffs, const Signature& sig) {
  if (static_cast<int>(coeffs.size()) != ell) throw DimensionMismatch("expected ell coefficients");
  PhaseOp r = contraction_op(sig, ContractionMono{0, 0, ell, 0, 0});
  for (int i = 1; i <= ell; ++i) r.add_scaled(contraction_op(sig, ContractionMono{0, i, ell - i, i, 0}), coeffs[i - 1]);
  return r;
}

}  // namespace confsym
