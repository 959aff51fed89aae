#pragma once

#include <map>
#include <vector>

#include <optional>
#include <tuple>
#include <utility>

#include "confsym/invariants.hpp"
#include "confsym/linalg.hpp"
#include "confsym/opalg.hpp"
#include "confsym/phase_poly.hpp"

namespace confsym::detail {

inline PhasePoly times_x(const PhasePoly& p, ExpVec xm) {
  return p * PhasePoly::monomial(p.n(), PhaseMono{{}, xm});
}

// Adds the equations "sum_j u_j images[j] + rhs = 0", one per monomial.
inline void add_rows(DenseSystem& sys, const std::vector<PhasePoly>& images, const PhasePoly* rhs) {
  std::map<PhaseMono, DenseVec> rows;
  const std::size_t w = images.size();
  for (std::size_t j = 0; j < w; ++j) {
    for (const auto& [m, c] : images[j].terms()) {
      auto& row = rows.try_emplace(m, DenseVec(w, Rational(0))).first->second;
      row[j] += c;
    }
  }
  if (rhs != nullptr) {
    for (const auto& [m, c] : rhs->terms()) rows.try_emplace(m, DenseVec(w, Rational(0)));
  }
  for (const auto& [m, row] : rows) {
    sys.add_equation(row, rhs == nullptr ? Rational(0) : Rational(-rhs->coefficient(m)));
  }
}

// op = sum x^a d_x^c Q_{a,c}(p, d_p). The Weyl algebra acts faithfully on
// C[x], so op vanishes on C[x] (x) V exactly when each Q_{a,c} vanishes on V.
using XKey = std::pair<ExpVec, ExpVec>;
std::map<XKey, PhaseOp> split_x(const PhaseOp& op);

// Nonzero images Q_{a,c}(b) over the p-basis b of the domain, projected to
// the target when given; keyed by (a, c, basis index).
using ImageKey = std::tuple<ExpVec, ExpVec, std::size_t>;
std::map<ImageKey, PhasePoly> domain_images(const PhaseOp& op, const Signature& sig, const Domain& src,
                                            const std::optional<Domain>& target);

// Equations "sum_j u_j ops[j] + rhs = 0 on the domain".
void add_domain_rows(DenseSystem& sys, const std::vector<PhaseOp>& ops, const PhaseOp* rhs,
                     const Signature& sig, const Domain& src, const std::optional<Domain>& target);

}  // namespace confsym::detail
