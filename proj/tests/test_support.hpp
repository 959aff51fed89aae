#pragma once

#include <random>

#include "confsym/opalg.hpp"
#include "confsym/phase_poly.hpp"

namespace testsupport {

using namespace confsym;

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20240917);
  return engine;
}

inline int uniform(int lo, int hi) {
  return lo + static_cast<int>(rng()() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline Rational small_rational() {
  int num = uniform(-5, 5);
  if (num == 0) num = 1;
  return rational(num, uniform(1, 3));
}

// Random polynomial with at most `terms` terms, x-degree <= dx, p-degree <= dp.
inline PhasePoly random_poly(int n, int terms, int dx, int dp) {
  PhasePoly r(n);
  for (int t = 0; t < terms; ++t) {
    PhaseMono m;
    int bx = uniform(0, dx);
    int bp = uniform(0, dp);
    for (int k = 0; k < bx; ++k) {
      int i = uniform(0, n - 1);
      m.x.set(i, m.x[i] + 1);
    }
    for (int k = 0; k < bp; ++k) {
      int i = uniform(0, n - 1);
      m.p.set(i, m.p[i] + 1);
    }
    r.add_term(m, small_rational());
  }
  return r;
}

// Random p-homogeneous polynomial of degree k.
inline PhasePoly random_homogeneous(int n, int terms, int dx, int k) {
  PhasePoly r(n);
  for (int t = 0; t < terms; ++t) {
    PhaseMono m;
    int bx = uniform(0, dx);
    for (int j = 0; j < bx; ++j) {
      int i = uniform(0, n - 1);
      m.x.set(i, m.x[i] + 1);
    }
    for (int j = 0; j < k; ++j) {
      int i = uniform(0, n - 1);
      m.p.set(i, m.p[i] + 1);
    }
    r.add_term(m, small_rational());
  }
  return r;
}

inline PhaseOp random_op(int n, int terms, int deg) {
  PhaseOp r(n);
  for (int t = 0; t < terms; ++t) {
    OpMono m;
    ExpVec* parts[4] = {&m.x, &m.p, &m.dx, &m.dp};
    for (ExpVec* e : parts) {
      int b = uniform(0, deg);
      for (int j = 0; j < b; ++j) {
        int i = uniform(0, n - 1);
        e->set(i, (*e)[i] + 1);
      }
    }
    r.add_term(m, small_rational());
  }
  return r;
}

inline std::vector<int> eta_of(const Signature& sig) {
  std::vector<int> eta(sig.n());
  for (int i = 0; i < sig.n(); ++i) eta[i] = sig.eta(i);
  return eta;
}

}  // namespace testsupport
