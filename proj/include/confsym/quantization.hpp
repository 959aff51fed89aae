#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "confsym/invariants.hpp"
#include "confsym/opalg.hpp"
#include "confsym/signature.hpp"

namespace confsym {

enum class QuantStatus { Unique, NonUnique, NonExistent };
std::string to_string(QuantStatus s);

// Equivariant quantization on degree-k symbols: Q(P) = N(sum_j c_j M_j P) over
// contraction monomials M_j, the identity carrying coefficient 1.
struct QuantMap {
  int k = 0;
  Rational lambda;
  Rational delta;
  Signature sig;
  Domain domain;
  QuantStatus status = QuantStatus::Unique;
  // Level-m corrections (m >= 1); the level-0 identity is implicit. For a
  // non-unique map this is one particular solution.
  std::map<ContractionMono, Rational> corrections;
  // Dimension of the solution space of the homogeneous system.
  int kernel_dimension = 0;

  // sum_j c_j M_j including the identity.
  PhaseOp correction_operator() const;
};

// c^k_0..c^k_k. Throws ResonanceError naming m when the denominator vanishes.
std::vector<Rational> closed_form_coeffs(int k, int n, const Rational& lambda, const Rational& delta);

// N(sum_m c^k_m D^m P) for trace-free P (each p-degree part trace-free).
DiffOp quantize_tracefree(const PhasePoly& p, const Rational& lambda, const Rational& mu, const Signature& sig);

// Solves the special-conformal equivariance equations on the given domain of
// degree-k symbols (the full S_k by default).
QuantMap solve_quantization(int k, const Rational& delta, const Signature& sig, const Rational& lambda = 0,
                            std::optional<Domain> domain = {});

// Degree-by-degree quantization Q^{lambda,mu} on full symbol spaces.
class Quantizer {
 public:
  Quantizer(const Signature& sig, const Rational& lambda, const Rational& mu);

  const Signature& signature() const { return sig_; }
  const Rational& lambda() const { return lambda_; }
  const Rational& mu() const { return mu_; }

  // Throws ResonanceError when the map of some needed degree is not unique.
  const QuantMap& map(int k) const;
  DiffOp quantize(const PhasePoly& p) const;
  PhasePoly dequantize(const DiffOp& a) const;

 private:
  Signature sig_;
  Rational lambda_;
  Rational mu_;
  mutable std::mutex mutex_;
  mutable std::map<int, std::unique_ptr<QuantMap>> maps_;
  mutable std::map<int, PhaseOp> ops_;
};

// Shared quantizer per (signature, lambda, mu).
std::shared_ptr<const Quantizer> quantizer(const Signature& sig, const Rational& lambda, const Rational& mu);

DiffOp quantize(const PhasePoly& p, const Rational& lambda, const Rational& mu, const Signature& sig);
PhasePoly dequantize(const DiffOp& a, const Rational& lambda, const Rational& mu, const Signature& sig);

}  // namespace confsym
