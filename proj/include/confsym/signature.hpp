#pragma once

#include <vector>

#include "confsym/errors.hpp"

namespace confsym {

// Metric signature of the flat model R^{p,q}: eta = diag(+1 x p, -1 x q).
struct Signature {
  int p = 0;
  int q = 0;

  Signature() = default;
  Signature(int p_, int q_);

  int n() const { return p + q; }
  // eta_{ii} (= eta^{ii}), 0-based.
  int eta(int i) const { return i < p ? 1 : -1; }

  friend bool operator==(const Signature&, const Signature&) = default;
  friend auto operator<=>(const Signature&, const Signature&) = default;
};

}  // namespace confsym
