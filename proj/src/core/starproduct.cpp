#include "confsym/starproduct.hpp"

#include <map>
#include <mutex>
#include <random>
#include <tuple>

#include "confsym/conformal.hpp"
#include "confsym/invariants.hpp"
#include "confsym/linalg.hpp"
#include "confsym/opalg.hpp"
#include "confsym/quantization.hpp"

namespace confsym {

namespace {

std::vector<PhasePoly> p_degree_parts(const PhasePoly& f) {
  std::vector<PhasePoly> parts;
  if (f.is_zero()) return parts;
  parts.reserve(f.max_degree_p() + 1);
  for (int d = 0; d <= f.max_degree_p(); ++d) parts.push_back(f.degree_p_part(d));
  return parts;
}

// Full components of a homogeneous pair; index m holds B_m.
std::vector<PhasePoly> homogeneous_components(const Quantizer& qz, const PhasePoly& a, int k, const PhasePoly& b,
                                              int l) {
  const PhasePoly prod = qz.dequantize(compose(qz.quantize(a), qz.quantize(b)));
  std::vector<PhasePoly> out;
  for (int m = 0; m <= k + l; ++m) out.push_back(prod.degree_p_part(k + l - m));
  return out;
}

std::vector<PhasePoly> components_with(const Quantizer& qz, const PhasePoly& p, const PhasePoly& q) {
  check_same_dimension(p.n(), q.n());
  const auto ps = p_degree_parts(p);
  const auto qs = p_degree_parts(q);
  std::vector<PhasePoly> out;
  const int top = static_cast<int>(ps.size() + qs.size()) - 2;
  for (int m = 0; m <= std::max(top, 0); ++m) out.emplace_back(p.n());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (ps[i].is_zero()) continue;
    for (std::size_t j = 0; j < qs.size(); ++j) {
      if (qs[j].is_zero()) continue;
      const auto c = homogeneous_components(qz, ps[i], static_cast<int>(i), qs[j], static_cast<int>(j));
      for (std::size_t m = 0; m < c.size(); ++m) out[m] += c[m];
    }
  }
  return out;
}

PhasePoly component_or_zero(const std::vector<PhasePoly>& c, int m, int n) {
  return m < static_cast<int>(c.size()) ? c[m] : PhasePoly(n);
}

// Image of mu^* degree by degree, with a membership test.
struct MomentImage {
  Indexer<PhaseMono> index;
  std::vector<SparseEchelon> echelon;
  std::vector<std::vector<PhasePoly>> basis;

  SparseVec vec(const PhasePoly& f) {
    std::vector<std::pair<std::uint32_t, Rational>> e;
    for (const auto& [m, c] : f.terms()) e.emplace_back(index.id(m), c);
    return normalize(std::move(e));
  }
};

MomentImage& moment_image(const Signature& sig, int d, std::unique_lock<std::mutex>& lock) {
  static std::map<Signature, MomentImage> cache;
  (void)lock;
  MomentImage& img = cache[sig];
  const int n = sig.n();
  if (img.basis.empty()) {
    img.basis.push_back({PhasePoly::constant(n, 1)});
    img.echelon.emplace_back();
    img.echelon[0].insert(img.vec(img.basis[0][0]));
  }
  if (d > 2 * kMaxExponent) throw DegreeOverflow("moment image degree out of range");
  std::vector<PhasePoly> mu;
  if (static_cast<int>(img.basis.size()) <= d) {
    for (const auto& g : generators(sig)) mu.push_back(moment(g));
  }
  while (static_cast<int>(img.basis.size()) <= d) {
    const auto& prev = img.basis.back();
    SparseEchelon ech;
    std::vector<PhasePoly> found;
    for (const auto& b : prev) {
      for (const auto& m : mu) {
        PhasePoly f = m * b;
        if (ech.insert(img.vec(f))) found.push_back(std::move(f));
      }
    }
    img.echelon.push_back(std::move(ech));
    img.basis.push_back(std::move(found));
  }
  return img;
}

std::mutex& image_mutex() {
  static std::mutex m;
  return m;
}

PhasePoly metric_laplacian_symbol(const Signature& sig) {
  std::vector<int> eta;
  for (int i = 0; i < sig.n(); ++i) eta.push_back(sig.eta(i));
  return squared_momentum(eta);
}

std::vector<PhasePoly> monomial_spanning_set(const Signature& sig, int max_degree, int x_degree) {
  const int n = sig.n();
  std::vector<PhasePoly> out;
  for (const auto& pe : x_monomials(n, max_degree)) {
    for (const auto& xe : x_monomials(n, x_degree)) out.push_back(PhasePoly::monomial(n, PhaseMono{pe, xe}));
  }
  return out;
}

struct VerdictBuilder {
  StarVerdict v;
  explicit VerdictBuilder(std::string name) {
    v.name = std::move(name);
    v.passed = true;
  }
  void count() { ++v.checked; }
  void fail(std::vector<PhasePoly> inputs, int m, std::string note) {
    if (!v.passed) return;
    v.passed = false;
    v.witness = StarWitness{std::move(inputs), m, std::move(note)};
  }
};

}  // namespace

StarComponent star_component(const PhasePoly& p, const PhasePoly& q, int m, const Rational& lambda,
                             const Signature& sig) {
  if (m < 0) throw InvalidArgument("star component level must be >= 0");
  auto qz = quantizer(sig, lambda, lambda);
  return {m, lambda, component_or_zero(components_with(*qz, p, q), m, sig.n())};
}

std::vector<PhasePoly> star_components(const PhasePoly& p, const PhasePoly& q, const Rational& lambda,
                                       const Signature& sig) {
  return components_with(*quantizer(sig, lambda, lambda), p, q);
}

const std::vector<PhasePoly>& moment_image_basis(int d, const Signature& sig) {
  if (d < 0) throw InvalidArgument("degree must be >= 0");
  std::unique_lock lock(image_mutex());
  return moment_image(sig, d, lock).basis[d];
}

bool in_moment_image(const PhasePoly& f, const Signature& sig) {
  check_same_dimension(f.n(), sig.n());
  if (f.is_zero()) return true;
  std::unique_lock lock(image_mutex());
  MomentImage& img = moment_image(sig, f.max_degree_p(), lock);
  for (int d = 0; d <= f.max_degree_p(); ++d) {
    const PhasePoly part = f.degree_p_part(d);
    if (!part.is_zero() && !img.echelon[d].contains(img.vec(part))) return false;
  }
  return true;
}

bool StarReport::passed() const {
  for (const auto& v : verdicts) {
    if (!v.passed) return false;
  }
  return !verdicts.empty();
}

const StarVerdict& StarReport::verdict(const std::string& name) const {
  for (const auto& v : verdicts) {
    if (v.name == name) return v;
  }
  throw InvalidArgument("no star verdict named " + name);
}

StarReport check_star(const Rational& lambda, int max_degree, const Signature& sig, const StarCheckOptions& options) {
  if (max_degree < 0 || options.x_degree < 0) throw InvalidArgument("degree bounds must be >= 0");
  const int n = sig.n();
  auto qz = quantizer(sig, lambda, lambda);
  StarReport report;
  report.lambda = lambda;
  report.max_degree = max_degree;
  report.sig = sig;
  report.descent_lambda = rational(n - 2, 2 * n);

  const auto span = monomial_spanning_set(sig, max_degree, options.x_degree);
  auto degree_of = [](const PhasePoly& f) { return f.max_degree_p(); };

  VerdictBuilder grad("gradation");
  VerdictBuilder parity("parity");
  bool symmetric = true;
  std::optional<StarWitness> asym;
  for (const auto& a : span) {
    for (const auto& b : span) {
      const int k = degree_of(a);
      const int l = degree_of(b);
      const PhasePoly full = qz->dequantize(compose(qz->quantize(a), qz->quantize(b)));
      grad.count();
      if (full.max_degree_p() > k + l) grad.fail({a, b}, -1, "component above degree k+l");
      if (full.degree_p_part(k + l) != a * b) grad.fail({a, b}, 0, "B_0(P,Q) != PQ");
      const bool unit = (k == 0 && a.max_degree_x() == 0) || (l == 0 && b.max_degree_x() == 0);
      if (unit && full != a * b) {
        grad.fail({a, b}, 1, "constant argument with nonzero higher component");
      }
      if (!symmetric) continue;
      const PhasePoly swapped = qz->dequantize(compose(qz->quantize(b), qz->quantize(a)));
      for (int m = 0; m <= k + l && symmetric; ++m) {
        PhasePoly rhs = swapped.degree_p_part(k + l - m);
        if (m % 2 == 1) rhs *= Rational(-1);
        if (full.degree_p_part(k + l - m) != rhs) {
          symmetric = false;
          asym = StarWitness{{a, b}, m, "B_m(P,Q) != (-1)^m B_m(Q,P)"};
        }
      }
    }
  }
  parity.v.checked = span.size() * span.size();
  report.symmetric = symmetric;
  const bool want_symmetric = lambda == rational(1, 2);
  parity.v.passed = symmetric == want_symmetric;
  if (asym) parity.v.witness = asym;

  // Associativity at levels M <= 3 over pseudo-random triples.
  VerdictBuilder assoc("associativity");
  std::mt19937 rng(options.seed);
  std::uniform_int_distribution<std::size_t> pick(0, span.size() - 1);
  for (int t = 0; t < options.associativity_triples; ++t) {
    const PhasePoly& a = span[pick(rng)];
    const PhasePoly& b = span[pick(rng)];
    const PhasePoly& c = span[pick(rng)];
    const auto ab = components_with(*qz, a, b);
    const auto bc = components_with(*qz, b, c);
    for (int level = 0; level <= 3; ++level) {
      PhasePoly left(n);
      PhasePoly right(n);
      for (int j = 0; j <= level; ++j) {
        const int i = level - j;
        left += component_or_zero(components_with(*qz, component_or_zero(ab, j, n), c), i, n);
        right += component_or_zero(components_with(*qz, a, component_or_zero(bc, j, n)), i, n);
      }
      assoc.count();
      if (left != right) assoc.fail({a, b, c}, level, "associativity defect");
    }
  }

  // Strong invariance: [mu_X, P]_* = i hbar {mu_X, P}.
  VerdictBuilder inv("invariance");
  for (const auto& g : generators(sig)) {
    const PhasePoly mx = moment(g);
    for (const auto& a : span) {
      const auto left = components_with(*qz, mx, a);
      const auto right = components_with(*qz, a, mx);
      inv.count();
      const std::size_t top = std::max(left.size(), right.size());
      for (std::size_t m = 1; m < top; ++m) {
        PhasePoly d = component_or_zero(left, m, n) - component_or_zero(right, m, n);
        if (m == 1) d -= poisson(mx, a);
        if (!d.is_zero()) inv.fail({mx, a}, static_cast<int>(m), "bracket with a moment is not Poisson");
      }
    }
  }

  // Tangentiality to the image of mu^*.
  std::vector<PhasePoly> kbasis;
  for (int d = 0; d <= max_degree; ++d) {
    const auto& part = moment_image_basis(d, sig);
    kbasis.insert(kbasis.end(), part.begin(), part.end());
  }
  VerdictBuilder tan("tangentiality");
  for (const auto& a : kbasis) {
    for (const auto& b : kbasis) {
      const auto c = components_with(*qz, a, b);
      tan.count();
      for (std::size_t m = 0; m < c.size(); ++m) {
        if (!in_moment_image(c[m], sig)) tan.fail({a, b}, static_cast<int>(m), "component leaves the image of mu^*");
      }
    }
  }

  // Descent to K/(R) for the product at (n-2)/2n.
  VerdictBuilder desc("descent");
  {
    auto qd = quantizer(sig, report.descent_lambda, report.descent_lambda);
    const PhasePoly r = metric_laplacian_symbol(sig);
    std::vector<PhasePoly> multiples;
    for (int d = 0; d <= std::max(max_degree - 1, 0); ++d) {
      for (const auto& s : moment_image_basis(d, sig)) multiples.push_back(r * s);
    }
    for (const auto& a : kbasis) {
      for (const auto& rs : multiples) {
        for (const auto& c : {components_with(*qd, a, rs), components_with(*qd, rs, a)}) {
          desc.count();
          for (std::size_t m = 0; m < c.size(); ++m) {
            if (!c[m].is_zero() && !exact_divide(c[m], r)) {
              desc.fail({a, rs}, static_cast<int>(m), "component not divisible by R");
            }
          }
        }
      }
    }
  }

  report.verdicts = {grad.v, assoc.v, inv.v, parity.v, tan.v, desc.v};
  return report;
}

}  // namespace confsym
