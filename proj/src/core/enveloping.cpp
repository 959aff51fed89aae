#include "confsym/enveloping.hpp"

#include <algorithm>
#include <array>
#include <mutex>

#include "confsym/errors.hpp"
#include "confsym/linalg.hpp"

namespace confsym {

namespace {

using Terms = std::map<Word, Rational>;

void add_into(Terms& t, const Word& w, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = t.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) t.erase(it);
  }
}

// Rewrites an arbitrary product of generators to the ordered basis using
// ab = ba + [a,b].
void straighten(const ConformalAlgebra& alg, const Word& w, const Rational& c, Terms& out) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (w[i] <= w[i + 1]) continue;
    Word swapped = w;
    std::swap(swapped[i], swapped[i + 1]);
    straighten(alg, swapped, c, out);
    const DenseVec& br = alg.bracket(w[i], w[i + 1]);
    for (std::size_t k = 0; k < br.size(); ++k) {
      if (br[k] == 0) continue;
      Word shorter(w.begin(), w.begin() + static_cast<long>(i));
      shorter.push_back(static_cast<int>(k));
      shorter.insert(shorter.end(), w.begin() + static_cast<long>(i) + 2, w.end());
      straighten(alg, shorter, Rational(c * br[k]), out);
    }
    return;
  }
  add_into(out, w, c);
}

}  // namespace

EnvElement::EnvElement(EnvKind kind, const Signature& sig, int max_degree)
    : kind_(kind), sig_(sig), max_degree_(max_degree), alg_(conformal_algebra(sig)) {
  if (max_degree < 0 || max_degree > kMaxEnvDegree) {
    throw DegreeOverflow("truncation degree must lie in 0.." + std::to_string(kMaxEnvDegree));
  }
}

EnvElement EnvElement::scalar(EnvKind kind, const Signature& sig, const Rational& c, int max_degree) {
  EnvElement e(kind, sig, max_degree);
  e.add_word({}, c);
  return e;
}

EnvElement EnvElement::generator(EnvKind kind, const Signature& sig, int index, int max_degree) {
  EnvElement e(kind, sig, max_degree);
  e.add_word({index}, 1);
  return e;
}

int EnvElement::degree() const {
  int d = -1;
  for (const auto& [w, c] : coeffs_) d = std::max(d, static_cast<int>(w.size()));
  return d;
}

Rational EnvElement::coefficient(const Word& w) const {
  auto it = coeffs_.find(w);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

void EnvElement::add_word(const Word& w, const Rational& c) {
  if (static_cast<int>(w.size()) > max_degree_) {
    throw DegreeOverflow("word of length " + std::to_string(w.size()) + " exceeds the truncation degree " +
                         std::to_string(max_degree_));
  }
  for (int i : w) {
    if (i < 0 || i >= alg_->dim()) throw IndexOutOfRange("generator index " + std::to_string(i));
  }
  if (kind_ == EnvKind::Symmetric) {
    Word sorted = w;
    std::sort(sorted.begin(), sorted.end());
    add_into(coeffs_, sorted, c);
  } else {
    straighten(*alg_, w, c, coeffs_);
  }
}

void EnvElement::check_compatible(const EnvElement& other) const {
  if (kind_ != other.kind_) throw InvalidArgument("mixing symmetric and enveloping elements");
  if (!(sig_ == other.sig_)) throw DimensionMismatch("elements over different signatures");
}

EnvElement& EnvElement::operator+=(const EnvElement& other) {
  check_compatible(other);
  for (const auto& [w, c] : other.coeffs_) add_into(coeffs_, w, c);
  max_degree_ = std::max(max_degree_, other.max_degree_);
  return *this;
}

EnvElement& EnvElement::operator-=(const EnvElement& other) {
  check_compatible(other);
  for (const auto& [w, c] : other.coeffs_) add_into(coeffs_, w, Rational(-c));
  max_degree_ = std::max(max_degree_, other.max_degree_);
  return *this;
}

EnvElement& EnvElement::operator*=(const Rational& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [w, v] : coeffs_) v *= c;
  return *this;
}

EnvElement operator*(const EnvElement& a, const EnvElement& b) {
  a.check_compatible(b);
  EnvElement out(a.kind_, a.sig_, std::max(a.max_degree_, b.max_degree_));
  for (const auto& [wa, ca] : a.coeffs_) {
    for (const auto& [wb, cb] : b.coeffs_) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out.add_word(w, Rational(ca * cb));
    }
  }
  return out;
}

EnvElement EnvElement::degree_part(int d) const {
  EnvElement out(kind_, sig_, max_degree_);
  for (const auto& [w, c] : coeffs_) {
    if (static_cast<int>(w.size()) == d) out.coeffs_.emplace(w, c);
  }
  return out;
}

std::string EnvElement::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (const auto& [w, c] : coeffs_) {
    if (!out.empty()) out += " + ";
    std::string word;
    for (int i : w) {
      if (!word.empty()) word += "*";
      word += alg_->generator(i).label;
    }
    if (word.empty()) {
      out += format_rational(c);
    } else if (c == 1) {
      out += word;
    } else {
      out += format_rational(c) + "*" + word;
    }
  }
  return out;
}

EnvElement pbw(const EnvElement& u) {
  if (u.kind() != EnvKind::Symmetric) throw InvalidArgument("pbw expects a symmetric element");
  EnvElement out(EnvKind::Enveloping, u.signature(), u.max_degree());
  for (const auto& [w, c] : u.coeffs()) {
    Word perm = w;
    std::vector<Word> all;
    do {
      all.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    // Each distinct ordering occurs equally often among all k! permutations.
    const Rational share = Rational(c) / Rational(static_cast<long>(all.size()));
    for (const auto& p : all) out.add_word(p, share);
  }
  return out;
}

EnvElement adjoint(int index, const EnvElement& u) {
  auto alg = conformal_algebra(u.signature());
  if (index < 0 || index >= alg->dim()) throw IndexOutOfRange("generator index " + std::to_string(index));
  if (u.kind() == EnvKind::Enveloping) {
    const EnvElement x = EnvElement::generator(EnvKind::Enveloping, u.signature(), index, u.max_degree());
    return x * u - u * x;
  }
  EnvElement out(EnvKind::Symmetric, u.signature(), u.max_degree());
  for (const auto& [w, c] : u.coeffs()) {
    for (std::size_t j = 0; j < w.size(); ++j) {
      const DenseVec& br = alg->bracket(index, w[j]);
      for (std::size_t k = 0; k < br.size(); ++k) {
        if (br[k] == 0) continue;
        Word v = w;
        v[j] = static_cast<int>(k);
        out.add_word(v, Rational(c * br[k]));
      }
    }
  }
  return out;
}

EnvElement casimir(const Signature& sig) {
  auto alg = conformal_algebra(sig);
  const Matrix& kinv = alg->killing_inverse();
  EnvElement c(EnvKind::Symmetric, sig);
  for (int a = 0; a < alg->dim(); ++a) {
    for (int b = 0; b < alg->dim(); ++b) {
      if (kinv[a][b] != 0) c.add_word({a, b}, kinv[a][b]);
    }
  }
  return c;
}

EnvElement casimir_operator(const Signature& sig) { return pbw(casimir(sig)); }

PhasePoly ambient_moment(const ConformalGenerator& x) {
  const int amb = static_cast<int>(x.ambient.size());
  PhasePoly r(amb);
  for (int a = 0; a < amb; ++a) {
    for (int b = 0; b < amb; ++b) {
      if (x.ambient[a][b] == 0) continue;
      r.add_scaled(PhasePoly::p(amb, a) * PhasePoly::x(amb, b), Rational(-x.ambient[a][b]));
    }
  }
  return r;
}

PhasePoly ambient_casimir_function(const Signature& sig) {
  const int n = sig.n();
  const int amb = n + 2;
  PhasePoly xp(amb), x2(amb), p2(amb);
  for (int a = 0; a < amb; ++a) xp += PhasePoly::x(amb, a) * PhasePoly::p(amb, a);
  x2.add_scaled(PhasePoly::x(amb, 0) * PhasePoly::x(amb, amb - 1), 2);
  p2.add_scaled(PhasePoly::p(amb, 0) * PhasePoly::p(amb, amb - 1), 2);
  for (int i = 0; i < n; ++i) {
    x2.add_scaled(PhasePoly::x(amb, 1 + i).pow(2), sig.eta(i));
    p2.add_scaled(PhasePoly::p(amb, 1 + i).pow(2), sig.eta(i));
  }
  return xp * xp - x2 * p2;
}

PhasePoly moment_pullback(const EnvElement& u, PullbackTarget target) {
  if (u.kind() != EnvKind::Symmetric) throw InvalidArgument("moment pullback expects a symmetric element");
  auto alg = conformal_algebra(u.signature());
  const int vars = target == PullbackTarget::Model ? alg->n() : alg->n() + 2;
  std::vector<PhasePoly> images;
  for (const auto& g : alg->generators()) {
    images.push_back(target == PullbackTarget::Model ? moment(g) : ambient_moment(g));
  }
  PhasePoly out(vars);
  for (const auto& [w, c] : u.coeffs()) {
    PhasePoly term = PhasePoly::constant(vars, c);
    for (int i : w) term = term * images[i];
    out += term;
  }
  return out;
}

DiffOp ell_morphism(const EnvElement& u, const Rational& lambda) {
  if (u.kind() != EnvKind::Enveloping) throw InvalidArgument("ell morphism expects an enveloping element");
  auto alg = conformal_algebra(u.signature());
  std::vector<DiffOp> gens;
  for (const auto& g : alg->generators()) gens.push_back(lie_density(g, lambda));
  DiffOp out(alg->n(), lambda, lambda);
  for (const auto& [w, c] : u.coeffs()) {
    DiffOp term = DiffOp::identity(alg->n(), lambda);
    for (int i : w) term = compose(term, gens[i]);
    out += term * c;
  }
  return out;
}

Rational rho(const Rational& lambda, const Signature& sig) {
  const Rational n = sig.n();
  return Rational(n * n * lambda * (1 - lambda));
}

Rational casimir_eigenvalue(const Rational& lambda, const Signature& sig) { return Rational(-rho(lambda, sig)); }

namespace {

// Ordered degree-2 words a <= b.
std::vector<Word> pair_words(int d) {
  std::vector<Word> out;
  for (int a = 0; a < d; ++a) {
    for (int b = a; b < d; ++b) out.push_back({a, b});
  }
  return out;
}

Matrix ambient_metric(const Signature& sig) {
  const int amb = sig.n() + 2;
  Matrix g(amb, DenseVec(amb, Rational(0)));
  g[0][amb - 1] = 1;
  g[amb - 1][0] = 1;
  for (int i = 0; i < sig.n(); ++i) g[1 + i][1 + i] = sig.eta(i);
  return g;
}

// Offset separating the blocks of stacked images.
constexpr std::uint32_t kBlock = 1u << 16;

int permutation_sign(const std::array<int, 4>& p) {
  int inversions = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) inversions += p[i] > p[j];
  }
  return inversions % 2 == 0 ? 1 : -1;
}

struct G2Data {
  std::vector<Word> words;
  // Component bases in word coordinates: box, bullet, casimir, wedge.
  std::array<std::vector<SparseVec>, 4> parts;
  SparseEchelon echelon;
  std::vector<int> owner;  // component of each inserted vector
};

SparseVec combine(const std::vector<SparseVec>& basis, const SparseVec& coeffs) {
  SparseVec r;
  for (const auto& [j, c] : coeffs) r = axpy(r, c, basis[j]);
  return r;
}

std::vector<SparseVec> kernel_within(const std::vector<SparseVec>& basis, const std::vector<SparseVec>& images) {
  std::vector<SparseVec> out;
  for (const auto& v : kernel_of_columns(images)) out.push_back(combine(basis, v));
  return out;
}

std::shared_ptr<const G2Data> build_g2(const Signature& sig) {
  auto alg = conformal_algebra(sig);
  auto data = std::make_shared<G2Data>();
  const int d = alg->dim();
  const int amb = sig.n() + 2;
  data->words = pair_words(d);
  const std::size_t w = data->words.size();
  const Matrix g = ambient_metric(sig);
  const Matrix& kil = alg->killing_matrix();

  std::vector<Matrix> lowered;
  for (const auto& gen : alg->generators()) lowered.push_back(multiply(g, gen.ambient));

  // Equivariant maps onto the trivial, Lambda^4 and S^2_0 modules.
  std::vector<SparseVec> trace_img(w), wedge_img(w), sym_img(w);
  for (std::size_t j = 0; j < w; ++j) {
    const int a = data->words[j][0];
    const int b = data->words[j][1];
    if (kil[a][b] != 0) trace_img[j] = {{0, kil[a][b]}};

    std::vector<std::pair<std::uint32_t, Rational>> e;
    std::uint32_t slot = 0;
    for (int i0 = 0; i0 < amb; ++i0) {
      for (int i1 = i0 + 1; i1 < amb; ++i1) {
        for (int i2 = i1 + 1; i2 < amb; ++i2) {
          for (int i3 = i2 + 1; i3 < amb; ++i3, ++slot) {
            const std::array<int, 4> idx{i0, i1, i2, i3};
            std::array<int, 4> p{0, 1, 2, 3};
            Rational s = 0;
            do {
              s += permutation_sign(p) * lowered[a][idx[p[0]]][idx[p[1]]] * lowered[b][idx[p[2]]][idx[p[3]]];
            } while (std::next_permutation(p.begin(), p.end()));
            if (s != 0) e.emplace_back(slot, s);
          }
        }
      }
    }
    wedge_img[j] = normalize(std::move(e));

    Matrix s = multiply(alg->generator(a).ambient, alg->generator(b).ambient);
    const Matrix s2 = multiply(alg->generator(b).ambient, alg->generator(a).ambient);
    Rational tr = 0;
    for (int r = 0; r < amb; ++r) {
      for (int c = 0; c < amb; ++c) s[r][c] = (s[r][c] + s2[r][c]) / 2;
      tr += s[r][r];
    }
    const Matrix gs = multiply(g, s);
    e.clear();
    slot = 0;
    for (int r = 0; r < amb; ++r) {
      for (int c = r; c < amb; ++c, ++slot) {
        const Rational v = gs[r][c] - tr / amb * g[r][c];
        if (v != 0) e.emplace_back(slot, v);
      }
    }
    sym_img[j] = normalize(std::move(e));
  }

  std::vector<SparseVec> unit(w);
  for (std::size_t j = 0; j < w; ++j) unit[j] = {{static_cast<std::uint32_t>(j), Rational(1)}};

  std::vector<SparseVec> all_img(w);
  const std::uint32_t off_w = kBlock, off_s = 2 * kBlock;
  for (std::size_t j = 0; j < w; ++j) {
    std::vector<std::pair<std::uint32_t, Rational>> e;
    for (const auto& [i, c] : trace_img[j]) e.emplace_back(i, c);
    for (const auto& [i, c] : wedge_img[j]) e.emplace_back(off_w + i, c);
    for (const auto& [i, c] : sym_img[j]) e.emplace_back(off_s + i, c);
    all_img[j] = normalize(std::move(e));
  }
  const std::vector<SparseVec> box = kernel_within(unit, all_img);

  // Killing-orthogonal complement of the box component: distinct
  // irreducible components are orthogonal for the induced invariant form.
  auto form = [&](std::size_t i, std::size_t j) {
    const int a = data->words[i][0], b = data->words[i][1];
    const int c = data->words[j][0], e = data->words[j][1];
    return Rational(kil[a][c] * kil[b][e] + kil[a][e] * kil[b][c]);
  };
  std::vector<SparseVec> pair_img(w);
  for (std::size_t j = 0; j < w; ++j) {
    std::vector<std::pair<std::uint32_t, Rational>> e;
    for (std::size_t t = 0; t < box.size(); ++t) {
      Rational s = 0;
      for (const auto& [i, c] : box[t]) s += c * form(j, i);
      if (s != 0) e.emplace_back(static_cast<std::uint32_t>(t), s);
    }
    pair_img[j] = normalize(std::move(e));
  }
  const std::vector<SparseVec> rest = kernel_within(unit, pair_img);

  auto images_on = [&](const std::vector<SparseVec>& basis, const std::vector<const std::vector<SparseVec>*>& maps) {
    std::vector<SparseVec> cols;
    for (const auto& v : basis) {
      std::vector<std::pair<std::uint32_t, Rational>> e;
      std::uint32_t off = 0;
      for (const auto* m : maps) {
        SparseVec img;
        for (const auto& [j, c] : v) img = axpy(img, c, (*m)[j]);
        for (const auto& [i, c] : img) e.emplace_back(off + i, c);
        off += kBlock;
      }
      cols.push_back(normalize(std::move(e)));
    }
    return cols;
  };
  data->parts[0] = box;
  data->parts[1] = kernel_within(rest, images_on(rest, {&trace_img, &wedge_img}));
  data->parts[2] = kernel_within(rest, images_on(rest, {&wedge_img, &sym_img}));
  data->parts[3] = kernel_within(rest, images_on(rest, {&trace_img, &sym_img}));

  std::uint32_t tag = 0;
  for (int part = 0; part < 4; ++part) {
    for (const auto& v : data->parts[part]) {
      if (!data->echelon.insert(v, {{tag, Rational(1)}})) {
        throw Error("internal: components of S^2(g) are not independent");
      }
      data->owner.push_back(part);
      ++tag;
    }
  }
  if (data->echelon.rank() != w) throw Error("internal: components of S^2(g) do not span");
  return data;
}

std::shared_ptr<const G2Data> g2_data(const Signature& sig) {
  static std::mutex mutex;
  static std::map<Signature, std::shared_ptr<const G2Data>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[sig];
  if (!slot) slot = build_g2(sig);
  return slot;
}

EnvElement from_pair_coords(const Signature& sig, const std::vector<Word>& words, const SparseVec& v) {
  EnvElement e(EnvKind::Symmetric, sig);
  for (const auto& [j, c] : v) e.add_word(words[j], c);
  return e;
}

}  // namespace

G2Decomposition decompose_g2(int a, int b, const Signature& sig) {
  auto alg = conformal_algebra(sig);
  if (a < 0 || b < 0 || a >= alg->dim() || b >= alg->dim()) throw IndexOutOfRange("generator index");
  auto data = g2_data(sig);
  const Word key{std::min(a, b), std::max(a, b)};
  const auto pos = static_cast<std::uint32_t>(std::find(data->words.begin(), data->words.end(), key) -
                                              data->words.begin());
  const auto coords = data->echelon.coordinates({{pos, Rational(1)}});
  if (!coords) throw Error("internal: degree-2 monomial outside the component span");
  std::array<SparseVec, 4> parts;
  for (const auto& [t, c] : *coords) {
    const int part = data->owner[t];
    std::size_t local = t;
    for (int q = 0; q < part; ++q) local -= data->parts[q].size();
    parts[part] = axpy(parts[part], c, data->parts[part][local]);
  }
  return {from_pair_coords(sig, data->words, parts[0]), from_pair_coords(sig, data->words, parts[1]),
          from_pair_coords(sig, data->words, parts[2]), from_pair_coords(sig, data->words, parts[3])};
}

std::vector<int> g2_component_dimensions(const Signature& sig) {
  auto data = g2_data(sig);
  std::vector<int> out;
  for (const auto& p : data->parts) out.push_back(static_cast<int>(p.size()));
  return out;
}

Kernel2 kernel_deg2(KernelMap map, const Signature& sig, const Rational& lambda) {
  auto alg = conformal_algebra(sig);
  const EnvKind kind = map == KernelMap::Ell ? EnvKind::Enveloping : EnvKind::Symmetric;
  std::vector<Word> words;
  if (kind == EnvKind::Enveloping) {
    words.push_back({});
    for (int a = 0; a < alg->dim(); ++a) words.push_back({a});
  }
  for (const auto& w : pair_words(alg->dim())) words.push_back(w);

  Indexer<PhaseMono> index;
  std::vector<SparseVec> cols;
  for (const auto& w : words) {
    EnvElement e(kind, sig);
    e.add_word(w, 1);
    PhasePoly img;
    switch (map) {
      case KernelMap::ModelMoment:
        img = moment_pullback(e, PullbackTarget::Model);
        break;
      case KernelMap::AmbientMoment:
        img = moment_pullback(e, PullbackTarget::Ambient);
        break;
      case KernelMap::Ell:
        img = ell_morphism(e, lambda).symbol();
        break;
    }
    std::vector<std::pair<std::uint32_t, Rational>> entries;
    for (const auto& [m, c] : img.terms()) entries.emplace_back(index.id(m), c);
    cols.push_back(normalize(std::move(entries)));
  }
  Kernel2 out;
  for (const auto& v : kernel_of_columns(cols)) {
    EnvElement e(kind, sig);
    for (const auto& [j, c] : v) e.add_word(words[j], c);
    out.basis.push_back(std::move(e));
  }
  out.dimension = static_cast<int>(out.basis.size());
  return out;
}

namespace {

EnvElement ideal_generator(int a, int b, const Rational& lambda, const Signature& sig, bool drop_bullet) {
  auto alg = conformal_algebra(sig);
  const G2Decomposition dec = decompose_g2(a, b, sig);
  EnvElement u(EnvKind::Symmetric, sig);
  u.add_word({a, b}, 1);
  u -= dec.box;
  if (drop_bullet) u -= dec.bullet;
  const Rational shift = casimir_eigenvalue(lambda, sig) * alg->killing_matrix()[a][b] / alg->dim();
  return pbw(u) - EnvElement::scalar(EnvKind::Enveloping, sig, shift);
}

}  // namespace

EnvElement joseph_generator(int a, int b, const Rational& lambda, const Signature& sig) {
  return ideal_generator(a, b, lambda, sig, false);
}

EnvElement jlambda_generator(int a, int b, const Rational& lambda, const Signature& sig) {
  return ideal_generator(a, b, lambda, sig, true);
}

Rational joseph_weight(const Signature& sig) { return rational(sig.n() - 2, 2 * sig.n()); }

}  // namespace confsym
