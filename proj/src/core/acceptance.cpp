#include "confsym/acceptance.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>

#include "confsym/enveloping.hpp"
#include "confsym/invariants.hpp"
#include "confsym/linalg.hpp"
#include "confsym/quantization.hpp"
#include "confsym/starproduct.hpp"
#include "confsym/symmetries.hpp"

namespace confsym {

namespace {

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (!passed) detail << "; ";
      passed = false;
      detail << what;
    }
  }
};

std::string q(const Rational& r) { return r.get_str(); }

int binomial(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<int>(r);
}

struct PolySpan {
  Indexer<PhaseMono> index;
  SparseVec vec(const PhasePoly& p) {
    std::vector<std::pair<std::uint32_t, Rational>> e;
    for (const auto& [m, c] : p.terms()) e.emplace_back(index.id(m), c);
    return normalize(std::move(e));
  }
  std::size_t rank(const std::vector<PhasePoly>& ps) {
    std::vector<SparseVec> vs;
    for (const auto& p : ps) vs.push_back(vec(p));
    return rank_of(vs);
  }
};

PhasePoly laplacian_symbol(const Signature& sig) {
  std::vector<int> eta;
  for (int i = 0; i < sig.n(); ++i) eta.push_back(sig.eta(i));
  return squared_momentum(eta);
}

// 1. ell^lambda(pbw(C)) against n^2 lambda (1 - lambda).
void casimir_eigenvalue_check(Outcome& out) {
  const std::vector<std::pair<int, Rational>> cases = {
      {3, rational(1, 2)}, {3, rational(1, 6)}, {4, rational(1, 4)}, {4, Rational(0)}};
  std::ostringstream seen;
  for (const auto& [n, lambda] : cases) {
    const Signature sig(n, 0);
    const DiffOp op = ell_morphism(casimir_operator(sig), lambda);
    const Rational want = rho(lambda, sig);
    const bool scalar = op.symbol().max_degree_p() <= 0 && op.symbol().max_degree_x() <= 0;
    const Rational got = op.symbol().coefficient(PhaseMono{});
    seen << " (n=" << n << ",l=" << q(lambda) << "): " << q(got);
    out.require(scalar, "ell(C) is not a scalar for n=" + std::to_string(n));
    out.require(got == want, "n=" + std::to_string(n) + " l=" + q(lambda) + ": expected " + q(want) + ", got " +
                                 q(got));
  }
  out.detail << (out.passed ? "" : "; ") << "observed scalars" << seen.str();
}

// 2. Trace-free quantization at delta = 0 against the closed form.
void closed_form_check(Outcome& out) {
  int compared = 0;
  for (int n : {3, 4}) {
    const Signature sig(n, 0);
    for (const Rational& lambda : {Rational(0), rational(1, 2), rational(n - 2, 2 * n)}) {
      for (int k = 0; k <= 3; ++k) {
        const QuantMap qm = solve_quantization(k, 0, sig, lambda, Domain{k, 0});
        const std::string where = "n=" + std::to_string(n) + " k=" + std::to_string(k) + " l=" + q(lambda);
        out.require(qm.status == QuantStatus::Unique, where + ": status " + to_string(qm.status));
        const auto c = closed_form_coeffs(k, n, lambda, 0);
        for (const auto& [mono, v] : qm.corrections) {
          const bool is_power_of_d = mono.a == 0 && mono.b == 0 && mono.c == 0 && mono.f == 0;
          out.require(is_power_of_d && v == c[mono.e], where + ": coefficient of " + mono.to_string());
        }
        for (int m = 1; m <= k; ++m) {
          auto it = qm.corrections.find(ContractionMono{0, 0, 0, m, 0});
          out.require((it == qm.corrections.end() ? Rational(0) : it->second) == c[m],
                      where + ": c_" + std::to_string(m));
          ++compared;
        }
      }
    }
  }
  out.detail << (out.passed ? "" : "; ") << compared << " coefficients compared";
}

// 3. Delta ell^lambda_X = ell^mu_X Delta.
void first_order_check(Outcome& out) {
  int count = 0;
  for (int n : {3, 4}) {
    const Signature sig(n, 0);
    const auto [lambda, mu] = symmetry_weights(1, sig);
    const DiffOp lap = laplacian_power(sig, 1, lambda);
    for (const auto& g : generators(sig)) {
      const DiffOp d = compose(lap, lie_density(g, lambda)) - compose(lie_density(g, mu), lap);
      out.require(d.is_zero(), "n=" + std::to_string(n) + " " + g.label);
      ++count;
    }
  }
  out.detail << (out.passed ? "" : "; ") << count << " generators";
}

// 4. Every conformal Killing tensor gives a symmetry.
void killing_symmetry_check(Outcome& out) {
  std::ostringstream dims;
  for (int n : {3, 4}) {
    const Signature sig(n, 0);
    for (const auto& [k, s] : std::vector<std::pair<int, int>>{{1, 0}, {2, 0}, {2, 1}, {3, 1}}) {
      const KillingBasis kb = solve_ckt(k, s, sig);
      const std::string where = "n=" + std::to_string(n) + " (" + std::to_string(k) + "," + std::to_string(s) + ")";
      dims << " " << where << ":" << kb.basis.size();
      out.require(kb.stable && !kb.basis.empty(), where + ": unstable or empty basis");
      std::vector<int> ells = {1};
      if (s == 1) ells.push_back(2);
      for (int ell : ells) {
        int bad = 0;
        for (const auto& b : kb.basis) {
          const SymmetryCheck c = verify_symmetry(b, ell, sig);
          if (!c.valid || !c.defect.is_zero()) ++bad;
        }
        out.require(bad == 0, where + " ell=" + std::to_string(ell) + ": " + std::to_string(bad) + " failures");
      }
    }
  }
  out.detail << (out.passed ? "" : "; ") << "dimensions" << dims.str();
}

// 5. Trace-free symbols outside the Killing span are not symmetries.
void bijectivity_check(Outcome& out) {
  const Signature sig(3, 0);
  const int n = sig.n();
  const KillingBasis kb = solve_ckt(2, 0, sig);
  PolySpan span;
  const std::size_t base = span.rank(kb.basis);
  std::mt19937 rng(4242);
  std::uniform_int_distribution<int> coeff(-4, 4);
  std::uniform_int_distribution<int> var(0, n - 1);
  std::uniform_int_distribution<int> xdeg(0, 2);
  int tested = 0;
  int attempts = 0;
  while (tested < 20 && attempts < 200) {
    ++attempts;
    PhasePoly f(n);
    for (int t = 0; t < 3; ++t) {
      PhaseMono m;
      for (int j = 0, d = xdeg(rng); j < d; ++j) {
        const int i = var(rng);
        m.x.set(i, m.x[i] + 1);
      }
      for (int j = 0; j < 2; ++j) {
        const int i = var(rng);
        m.p.set(i, m.p[i] + 1);
      }
      int c = coeff(rng);
      f.add_term(m, Rational(c == 0 ? 1 : c));
    }
    f = harmonic_project(f, sig, 0);
    if (f.is_zero()) continue;
    std::vector<PhasePoly> with = kb.basis;
    with.push_back(f);
    if (span.rank(with) == base) continue;
    const SymmetryCheck c = verify_symmetry(f, 1, sig);
    out.require(!c.valid && !c.defect.is_zero(), "symbol accepted: " + f.to_string());
    ++tested;
  }
  out.require(tested == 20, "only " + std::to_string(tested) + " symbols generated");
  out.detail << (out.passed ? "" : "; ") << tested << " symbols rejected";
}

// 6. Degree-2 kernels of mu^* and ell^lambda.
void kernel_check(Outcome& out) {
  std::ostringstream seen;
  for (int n : {3, 4}) {
    const Signature sig(n, 0);
    const int box = binomial(n + 2, 4);
    const std::string nn = "n=" + std::to_string(n);
    const int amb = kernel_deg2(KernelMap::AmbientMoment, sig).dimension;
    const int model = kernel_deg2(KernelMap::ModelMoment, sig).dimension;
    out.require(amb == box, nn + ": ambient kernel " + std::to_string(amb));
    out.require(model == box + 1, nn + ": model kernel " + std::to_string(model));
    seen << " " << nn << " ambient " << amb << " model " << model;
    for (const Rational& lambda : {rational(1, 2), rational(n - 2, 2 * n)}) {
      const int ell = kernel_deg2(KernelMap::Ell, sig, lambda).dimension;
      out.require(ell == box + 1, nn + " l=" + q(lambda) + ": ell kernel " + std::to_string(ell));
      const Rational r = rho(lambda, sig);
      const EnvElement shifted = casimir_operator(sig) - EnvElement::scalar(EnvKind::Enveloping, sig, r);
      const DiffOp image = ell_morphism(shifted, lambda);
      out.require(image.is_zero(), nn + " l=" + q(lambda) + ": C - rho maps to " + image.symbol().to_string());
      const EnvElement observed =
          casimir_operator(sig) - EnvElement::scalar(EnvKind::Enveloping, sig, casimir_eigenvalue(lambda, sig));
      seen << " ell(" << q(lambda) << ") " << ell;
      if (ell_morphism(observed, lambda).is_zero()) seen << " with C + rho in kernel";
    }
  }
  out.detail << (out.passed ? "" : "; ") << "dimensions" << seen.str();
}

// 7. Ambient pullback of the Casimir.
void ambient_casimir_check(Outcome& out) {
  for (const auto& sig : {Signature(3, 0), Signature(4, 0), Signature(2, 1)}) {
    const PhasePoly got = moment_pullback(casimir(sig), PullbackTarget::Ambient);
    out.require(got == ambient_casimir_function(sig),
                "signature (" + std::to_string(sig.p) + "," + std::to_string(sig.q) + ")");
  }
  out.detail << (out.passed ? "" : "; ") << "signatures (3,0), (4,0), (2,1)";
}

// 8. Joseph generators map into the left ideal generated by Delta.
void joseph_check(Outcome& out) {
  std::ostringstream seen;
  for (int n : {3, 4}) {
    const Signature sig(n, 0);
    const int dim = conformal_algebra(sig)->dim();
    const Rational lj = joseph_weight(sig);
    const Rational generic = rational(1, 3);
    int divisible = 0;
    int generic_failures = 0;
    int pairs = 0;
    for (int a = 0; a < dim; ++a) {
      for (int b = a; b < dim; ++b) {
        ++pairs;
        if (right_divide(ell_morphism(joseph_generator(a, b, lj, sig), lj), 1, sig)) ++divisible;
        if (!right_divide(ell_morphism(joseph_generator(a, b, generic, sig), generic), 1, sig)) ++generic_failures;
      }
    }
    out.require(divisible == pairs, "n=" + std::to_string(n) + ": " + std::to_string(pairs - divisible) +
                                        " pairs not divisible at " + q(lj));
    out.require(generic_failures > 0, "n=" + std::to_string(n) + ": no failure at l=" + q(generic));
    seen << "; n=" << n << " " << divisible << "/" << pairs << " divisible, " << generic_failures
         << " failures at l=1/3";
  }
  out.detail << (out.passed ? "" : "; ") << seen.str().substr(2);
}

// 9. Star-product axioms.
void star_check(Outcome& out) {
  const Signature sig(3, 0);
  const StarReport half = check_star(rational(1, 2), 2, sig);
  for (const auto& v : half.verdicts) out.require(v.passed, "l=1/2: " + v.name);
  out.require(half.symmetric, "l=1/2 not symmetric");
  const StarReport zero = check_star(Rational(0), 2, sig);
  const StarVerdict& parity = zero.verdict("parity");
  out.require(!zero.symmetric && parity.passed && parity.witness.has_value(), "l=0: no parity witness");
  for (const auto& v : zero.verdicts) out.require(v.passed, "l=0: " + v.name);
  if (parity.witness) {
    out.detail << (out.passed ? "" : "; ") << "l=0 parity witness m=" << parity.witness->m << " ("
               << parity.witness->inputs[0].to_string() << ", " << parity.witness->inputs[1].to_string() << ")";
  }
}

// 10. Classification and resonance spot checks.
void classification_check(Outcome& out) {
  const Signature sig(3, 0);
  const Rational n = 3;
  struct Slot {
    std::string name;
    int kp;
    Rational delta;
    Rational delta_p;
    Rational shift;
  };
  const std::vector<Slot> slots = {
      {"D", 1, 1 + 2 / n, 1 + 2 / n, 0},
      {"G0", 3, 0, 2 / n, 2 / n},
      {"L1", 2, rational(1, 2) + 1 / n, rational(1, 2) + 3 / n, 2 / n},
  };
  for (const auto& s : slots) {
    const Classification c = classify(2, 0, s.kp, 0, s.delta, s.delta_p, sig);
    out.require(c.dimension == 1 && c.stable, s.name + ": dimension " + std::to_string(c.dimension));
    for (const Rational& d : {rational(1, 7), rational(-3, 5), rational(11, 4)}) {
      const Classification g = classify(2, 0, s.kp, 0, d, d + s.shift, sig);
      out.require(g.dimension == 0, s.name + " at generic " + q(d) + ": dimension " + std::to_string(g.dimension));
    }
  }
  for (const Rational& d : {rational(1, 7), rational(-3, 5), rational(11, 4)}) {
    out.require(classify(2, 0, 0, 0, d, d, sig).dimension == 0, "trace slot at " + q(d));
  }
  // Excluded weights: 1 + (2k - 1 - m)/n.
  for (int k : {1, 2}) {
    std::vector<Rational> excluded;
    for (int m = 1; m <= k; ++m) excluded.push_back(1 + Rational(2 * k - 1 - m) / n);
    for (const auto& d : excluded) {
      const QuantMap qm = solve_quantization(k, d, sig, 0, Domain{k, 0});
      out.require(qm.status != QuantStatus::Unique, "k=" + std::to_string(k) + " unique at excluded " + q(d));
    }
    for (const Rational& d : {Rational(0), rational(1, 5), rational(-2, 3), rational(3, 2), rational(9, 4)}) {
      const QuantMap qm = solve_quantization(k, d, sig, 0, Domain{k, 0});
      out.require(qm.status == QuantStatus::Unique, "k=" + std::to_string(k) + " not unique at " + q(d));
    }
  }
  out.detail << (out.passed ? "" : "; ") << "3 slots, 12 generic probes, 3 excluded weights, 10 controls";
}

// 11. The degree-2 image of mu^* is spanned by the two Killing cells.
void generation_check(Outcome& out) {
  const Signature sig(3, 0);
  std::vector<PhasePoly> mu;
  for (const auto& g : generators(sig)) mu.push_back(moment(g));
  std::vector<PhasePoly> products;
  for (std::size_t a = 0; a < mu.size(); ++a) {
    for (std::size_t b = a; b < mu.size(); ++b) products.push_back(mu[a] * mu[b]);
  }
  const KillingBasis k20 = solve_ckt(2, 0, sig);
  const KillingBasis k21 = solve_ckt(2, 1, sig);
  std::vector<PhasePoly> cells = k20.basis;
  cells.insert(cells.end(), k21.basis.begin(), k21.basis.end());
  for (const auto& c : k21.basis) {
    out.require(exact_divide(c, laplacian_symbol(sig)).has_value(), "R does not divide a (2,1) tensor");
  }
  PolySpan span;
  const std::size_t image = span.rank(products);
  const std::size_t cell_rank = span.rank(cells);
  std::vector<PhasePoly> all = products;
  all.insert(all.end(), cells.begin(), cells.end());
  const std::size_t joint = span.rank(all);
  out.require(image == cell_rank && joint == image, "ranks image " + std::to_string(image) + ", cells " +
                                                        std::to_string(cell_rank) + ", joint " +
                                                        std::to_string(joint));
  out.detail << (out.passed ? "" : "; ") << "image rank " << image << " = " << k20.basis.size() << " + "
             << k21.basis.size();
}

struct CriterionDef {
  const char* title;
  double budget;
  void (*run)(Outcome&);
};

const CriterionDef kCriteria[kCriterionCount] = {
    {"Casimir eigenvalue n^2 l(1-l)", 10, casimir_eigenvalue_check},
    {"closed-form quantization agreement", 60, closed_form_check},
    {"first-order symmetries", 5, first_order_check},
    {"Killing tensors give symmetries", 600, killing_symmetry_check},
    {"non-Killing symbols rejected", 60, bijectivity_check},
    {"degree-2 kernel dimensions", 60, kernel_check},
    {"ambient Casimir identity", 5, ambient_casimir_check},
    {"Joseph generators divisible by the Laplacian", 300, joseph_check},
    {"star-product axioms", 600, star_check},
    {"classification and resonance spot checks", 300, classification_check},
    {"generation by conformal Killing vectors", 60, generation_check},
};

}  // namespace

CriterionResult run_criterion(int id) {
  if (id < 1 || id > kCriterionCount) throw InvalidArgument("criterion must be in 1..11");
  const CriterionDef& def = kCriteria[id - 1];
  CriterionResult r;
  r.id = id;
  r.title = def.title;
  r.budget_seconds = def.budget;
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    def.run(out);
  } catch (const std::exception& e) {
    out.require(false, std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.require(r.seconds < r.budget_seconds, "over time budget");
  r.passed = out.passed;
  r.detail = out.detail.str();
  return r;
}

std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids) {
  std::vector<CriterionResult> out;
  if (ids.empty()) {
    for (int i = 1; i <= kCriterionCount; ++i) out.push_back(run_criterion(i));
  } else {
    for (int i : ids) out.push_back(run_criterion(i));
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream s;
  s << "criterion " << r.id << ": " << (r.passed ? "PASS" : "FAIL") << "  " << r.title << "  (" << std::fixed
    << std::setprecision(2) << r.seconds << " s / " << std::setprecision(0) << r.budget_seconds << " s)  "
    << r.detail;
  return s.str();
}

}  // namespace confsym
