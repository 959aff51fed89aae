#include "confsym/signature.hpp"

#include <string>

namespace confsym {

Signature::Signature(int p_, int q_) : p(p_), q(q_) {
  if (p < 0 || q < 0) throw InvalidArgument("signature entries must be non-negative");
  if (p + q < 3) {
    throw InvalidArgument("dimension n = p + q must be at least 3 (got " + std::to_string(p + q) + ")");
  }
  // The ambient space has n + 2 variables.
  if (p + q + 2 > 8) throw DegreeOverflow("dimension n = p + q is limited to 6");
}

}  // namespace confsym
