#include "confsym/quantization.hpp"

#include "confsym/conformal.hpp"
#include "confsym/errors.hpp"
#include "equations.hpp"

namespace confsym {


std::string to_string(QuantStatus s) {
  switch (s) {
    case QuantStatus::Unique:
      return "unique";
    case QuantStatus::NonUnique:
      return "non_unique";
    case QuantStatus::NonExistent:
      return "non_existent";
  }
  return "unknown";
}

PhaseOp QuantMap::correction_operator() const {
  PhaseOp r = PhaseOp::identity(sig.n());
  for (const auto& [m, c] : corrections) r.add_scaled(contraction_op(sig, m), c);
  return r;
}

std::vector<Rational> closed_form_coeffs(int k, int n, const Rational& lambda, const Rational& delta) {
  if (k < 0) throw InvalidArgument("degree must be non-negative");
  std::vector<Rational> c{Rational(1)};
  for (int m = 1; m <= k; ++m) {
    const Rational den = m * (2 * k - m - 1 + n * (1 - delta));
    if (den == 0) {
      throw ResonanceError("resonant shift delta=" + format_rational(delta) + " for k=" + std::to_string(k) +
                           ": denominator vanishes at m=" + std::to_string(m));
    }
    c.push_back(Rational((k - m + n * lambda) / den * c.back()));
  }
  return c;
}

DiffOp quantize_tracefree(const PhasePoly& p, const Rational& lambda, const Rational& mu, const Signature& sig) {
  check_same_dimension(p.n(), sig.n());
  const PhaseOp t = canonical("T", sig).realization;
  const PhaseOp d = canonical("D", sig).realization;
  PhasePoly out(sig.n());
  for (int k = 0; k <= p.max_degree_p(); ++k) {
    const PhasePoly part = p.degree_p_part(k);
    if (part.is_zero()) continue;
    if (!op_apply(t, part).is_zero()) throw InvalidArgument("symbol is not trace-free");
    const auto c = closed_form_coeffs(k, sig.n(), lambda, mu - lambda);
    PhasePoly dm = part;
    for (int m = 0; m <= k; ++m) {
      if (m > 0) dm = op_apply(d, dm);
      out.add_scaled(dm, c[m]);
    }
  }
  return normal_order_N(out, lambda, mu);
}

QuantMap solve_quantization(int k, const Rational& delta, const Signature& sig, const Rational& lambda,
                            std::optional<Domain> domain) {
  if (k < 0) throw InvalidArgument("degree must be non-negative");
  const Domain dom = domain.value_or(Domain{k, -1});
  if (dom.k != k) throw InvalidArgument("domain degree differs from k");
  QuantMap out;
  out.k = k;
  out.lambda = lambda;
  out.delta = delta;
  out.sig = sig;
  out.domain = dom;
  const Rational mu = lambda + delta;

  std::vector<ContractionMono> monos;
  for (int m = 1; m <= k; ++m) {
    auto level = independent_on_domain(ansatz_monomials_exact(-m, m, dom), sig, dom, Domain{k - m, -1});
    monos.insert(monos.end(), level.begin(), level.end());
  }
  const std::size_t w = monos.size();
  std::vector<PhaseOp> ops;
  for (const auto& m : monos) ops.push_back(contraction_op(sig, m));

  auto alg = conformal_algebra(sig);
  std::vector<const ConformalGenerator*> ks;
  for (const auto& g : alg->generators()) {
    if (g.kind == GeneratorKind::SpecialConformal) ks.push_back(&g);
  }
  // With C = id + sum u_j M_j: C o L^delta_K - L^{lambda,mu}_K o C vanishes on the domain.
  DenseSystem sys(w);
  for (const ConformalGenerator* g : ks) {
    const PhaseOp lk = lie_symbol(*g, delta);
    const PhaseOp act = operator_action_on_symbols(*g, lambda, mu);
    std::vector<PhaseOp> images;
    images.reserve(w);
    for (const auto& op : ops) images.push_back(op_compose(op, lk) - op_compose(act, op));
    const PhaseOp rhs = lk - act;
    detail::add_domain_rows(sys, images, &rhs, sig, dom, std::nullopt);
    if (!sys.consistent()) {
      out.status = QuantStatus::NonExistent;
      out.kernel_dimension = static_cast<int>(w - sys.rank());
      return out;
    }
  }
  const DenseVec c = sys.particular_solution();
  for (std::size_t j = 0; j < w; ++j) {
    if (c[j] != 0) out.corrections.emplace(monos[j], c[j]);
  }
  out.kernel_dimension = static_cast<int>(w - sys.rank());
  out.status = out.kernel_dimension == 0 ? QuantStatus::Unique : QuantStatus::NonUnique;
  return out;
}

Quantizer::Quantizer(const Signature& sig, const Rational& lambda, const Rational& mu)
    : sig_(sig), lambda_(lambda), mu_(mu) {}

const QuantMap& Quantizer::map(int k) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = maps_.find(k);
  if (it == maps_.end()) {
    auto qm = std::make_unique<QuantMap>(solve_quantization(k, mu_ - lambda_, sig_, lambda_));
    if (qm->status == QuantStatus::Unique) ops_.emplace(k, qm->correction_operator());
    it = maps_.emplace(k, std::move(qm)).first;
  }
  if (it->second->status != QuantStatus::Unique) {
    throw ResonanceError("equivariant quantization on degree-" + std::to_string(k) + " symbols is " +
                         to_string(it->second->status) + " at delta=" + format_rational(mu_ - lambda_));
  }
  return *it->second;
}

DiffOp Quantizer::quantize(const PhasePoly& p) const {
  check_same_dimension(p.n(), sig_.n());
  PhasePoly out(sig_.n());
  for (int k = 0; k <= p.max_degree_p(); ++k) {
    const PhasePoly part = p.degree_p_part(k);
    if (part.is_zero()) continue;
    map(k);
    const PhaseOp* op;
    {
      std::lock_guard<std::mutex> lock(mutex_);
      op = &ops_.at(k);
    }
    out += op_apply(*op, part);
  }
  return normal_order_N(out, lambda_, mu_);
}

PhasePoly Quantizer::dequantize(const DiffOp& a) const {
  check_same_dimension(a.n(), sig_.n());
  if (a.lambda() != lambda_ || a.mu() != mu_) throw WeightMismatch("operator weights differ from the quantizer's");
  PhasePoly out(sig_.n());
  DiffOp rest = a;
  while (!rest.is_zero()) {
    const PhasePoly top = rest.principal_symbol();
    out += top;
    rest -= quantize(top);
  }
  return out;
}

std::shared_ptr<const Quantizer> quantizer(const Signature& sig, const Rational& lambda, const Rational& mu) {
  static std::mutex mutex;
  static std::map<std::tuple<Signature, std::string, std::string>, std::shared_ptr<const Quantizer>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{sig, format_rational(lambda), format_rational(mu)}];
  if (!slot) slot = std::make_shared<const Quantizer>(sig, lambda, mu);
  return slot;
}

DiffOp quantize(const PhasePoly& p, const Rational& lambda, const Rational& mu, const Signature& sig) {
  return quantizer(sig, lambda, mu)->quantize(p);
}

PhasePoly dequantize(const DiffOp& a, const Rational& lambda, const Rational& mu, const Signature& sig) {
  return quantizer(sig, lambda, mu)->dequantize(a);
}

}  // namespace confsym
