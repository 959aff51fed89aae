#include "confsym.h"

#include <cstdlib>
#include <cstring>
#include <functional>
#include <string>

#include "confsym/acceptance.hpp"
#include "confsym/json_io.hpp"

using namespace confsym;

struct confsym_session {
  Signature sig;
  int max_degree = 0;
  std::string last_error;
};

namespace {

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs f, which fills the document and returns the status for a completed
// computation; maps engine errors to status codes.
confsym_status guarded(confsym_session* s, char** out_json, const std::function<confsym_status(Json&)>& f) {
  if (s == nullptr || out_json == nullptr) return CONFSYM_E_USAGE;
  *out_json = nullptr;
  s->last_error.clear();
  auto fail = [&](confsym_status st, const char* what) {
    s->last_error = what;
    return st;
  };
  try {
    Json doc;
    const confsym_status st = f(doc);
    *out_json = copy_string(dump_json(doc));
    if (*out_json == nullptr) return fail(CONFSYM_E_INTERNAL, "out of memory");
    return st;
  } catch (const ParseError& e) {
    return fail(CONFSYM_E_PARSE, e.what());
  } catch (const DimensionMismatch& e) {
    return fail(CONFSYM_E_DIMENSION, e.what());
  } catch (const IndexOutOfRange& e) {
    return fail(CONFSYM_E_INDEX, e.what());
  } catch (const ResonanceError& e) {
    return fail(CONFSYM_E_RESONANCE, e.what());
  } catch (const WeightMismatch& e) {
    return fail(CONFSYM_E_WEIGHT, e.what());
  } catch (const DegreeOverflow& e) {
    return fail(CONFSYM_E_DEGREE, e.what());
  } catch (const NoSolution& e) {
    return fail(CONFSYM_E_NO_SOLUTION, e.what());
  } catch (const InvalidArgument& e) {
    return fail(CONFSYM_E_USAGE, e.what());
  } catch (const std::exception& e) {
    return fail(CONFSYM_E_INTERNAL, e.what());
  }
}

Rational weight(const char* text, const char* name) {
  if (text == nullptr) throw InvalidArgument(std::string("missing weight ") + name);
  return parse_rational(text);
}

void check_degree(const confsym_session* s, int degree, const char* what) {
  if (s->max_degree > 0 && degree > s->max_degree) {
    throw DegreeOverflow(std::string(what) + " " + std::to_string(degree) + " exceeds the cap " +
                         std::to_string(s->max_degree) + " (CONFSYM_MAX_DEGREE)");
  }
}

PhasePoly read_symbol(const confsym_session* s, const char* text) {
  if (text == nullptr) throw InvalidArgument("missing symbol document");
  PhasePoly f = poly_from_json(parse_json(text));
  if (f.n() != s->sig.n()) {
    throw DimensionMismatch("symbol has n=" + std::to_string(f.n()) + ", signature has n=" +
                            std::to_string(s->sig.n()));
  }
  check_degree(s, f.max_degree_p(), "symbol degree");
  return f;
}

Json signature_fields(const confsym_session* s) { return signature_to_json(s->sig); }

}  // namespace

extern "C" {

const char* confsym_version(void) { return "1.0.0"; }

const char* confsym_status_name(confsym_status status) {
  switch (status) {
    case CONFSYM_OK:
      return "ok";
    case CONFSYM_VERIFICATION_FAILED:
      return "verification_failed";
    case CONFSYM_E_USAGE:
      return "usage";
    case CONFSYM_E_PARSE:
      return "parse";
    case CONFSYM_E_DIMENSION:
      return "dimension_mismatch";
    case CONFSYM_E_INDEX:
      return "index_out_of_range";
    case CONFSYM_E_RESONANCE:
      return "resonance";
    case CONFSYM_E_WEIGHT:
      return "weight_mismatch";
    case CONFSYM_E_DEGREE:
      return "degree_overflow";
    case CONFSYM_E_NO_SOLUTION:
      return "no_solution";
    case CONFSYM_E_INTERNAL:
      return "internal";
  }
  return "unknown";
}

confsym_session* confsym_session_new(int p, int q, confsym_status* status) {
  try {
    auto* s = new confsym_session{Signature(p, q), 0, {}};
    if (status != nullptr) *status = CONFSYM_OK;
    return s;
  } catch (const InvalidArgument&) {
    if (status != nullptr) *status = CONFSYM_E_USAGE;
  } catch (...) {
    if (status != nullptr) *status = CONFSYM_E_INTERNAL;
  }
  return nullptr;
}

void confsym_session_free(confsym_session* session) { delete session; }

const char* confsym_last_error(const confsym_session* session) {
  return session == nullptr ? "" : session->last_error.c_str();
}

void confsym_set_max_degree(confsym_session* session, int max_degree) {
  if (session != nullptr) session->max_degree = max_degree;
}

void confsym_free_string(char* text) { std::free(text); }

confsym_status confsym_algebra_check(confsym_session* s, char** out_json) {
  return guarded(s, out_json, [&](Json& doc) {
    auto alg = conformal_algebra(s->sig);
    Json labels = Json::array();
    for (const auto& g : alg->generators()) labels.push_back(g.label);
    const bool closed = alg->brackets_agree();
    const Rational det = alg->killing_determinant();
    doc = document("AlgebraReport", {{"signature", signature_fields(s)},
                                     {"generator_count", alg->dim()},
                                     {"generators", labels},
                                     {"brackets_closed", closed},
                                     {"killing_determinant", rational_to_json(det)}});
    return closed && det != 0 ? CONFSYM_OK : CONFSYM_VERIFICATION_FAILED;
  });
}

confsym_status confsym_classify(confsym_session* s, int k, int sub, int kp, int subp, const char* delta,
                                const char* delta_p, int bound, char** out_json) {
  return guarded(s, out_json, [&](Json& doc) {
    check_degree(s, std::max(k, kp), "degree");
    const Classification c =
        classify(k, sub, kp, subp, weight(delta, "delta"), weight(delta_p, "delta'"), s->sig, bound > 0 ? bound : 4);
    Json body = classification_to_json(c);
    body["signature"] = signature_fields(s);
    doc = document("Classification", body);
    return CONFSYM_OK;
  });
}

confsym_status confsym_quantize(confsym_session* s, const char* lambda, const char* mu, const char* symbol_json,
                                char** out_json) {
  return guarded(s, out_json, [&](Json& doc) {
    const PhasePoly f = read_symbol(s, symbol_json);
    doc = document("DiffOp", diff_op_to_json(quantize(f, weight(lambda, "lambda"), weight(mu, "mu"), s->sig)));
    return CONFSYM_OK;
  });
}

confsym_status confsym_dequantize(confsym_session* s, const char* op_json, char** out_json) {
  return guarded(s, out_json, [&](Json& doc) {
    if (op_json == nullptr) throw InvalidArgument("missing operator document");
    const DiffOp a = diff_op_from_json(parse_json(op_json));
    if (a.n() != s->sig.n()) throw DimensionMismatch("operator dimension differs from the signature");
    check_degree(s, a.order(), "operator order");
    doc = document("PhasePoly", poly_to_json(dequantize(a, a.lambda(), a.mu(), s->sig)));
    return CONFSYM_OK;
  });
}

confsym_status confsym_quantize_solve(confsym_session* s, int k, const char* delta, const char* lambda, int tracefree,
                                      char** out_json) {
  return guarded(s, out_json, [&](Json& doc) {
    if (k < 0) throw InvalidArgument("k must be >= 0");
    check_degree(s, k, "degree");
    const Rational l = lambda == nullptr ? Rational(0) : parse_rational(lambda);
    std::optional<Domain> dom;
    if (tracefree != 0) dom = Domain{k, 0};
    doc = document("QuantMap", quant_map_to_json(solve_quantization(k, weight(delta, "delta"), s->sig, l, dom)));
    return CONFSYM_OK;
  });
}

confsym_status confsym_ckt(confsym_session* s, int k, int sub, int bound, char** out_json) {
  return guarded(s, out_json, [&](Json& doc) {
    check_degree(s, k, "degree");
    std::optional<int> b;
    if (bound >= 0) b = bound;
    doc = document("KillingBasis", killing_basis_to_json(solve_ckt(k, sub, s->sig, b)));
    return CONFSYM_OK;
  });
}

confsym_status confsym_symmetry_verify(confsym_session* s, int ell, const char* symbol_json, char** out_json) {
  return guarded(s, out_json, [&](Json& doc) {
    if (ell < 1) throw InvalidArgument("ell must be >= 1");
    if (symbol_json == nullptr) throw InvalidArgument("missing symbol document");
    const Json in = parse_json(symbol_json);
    std::vector<PhasePoly> symbols;
    const bool many = in.is_object() && in.value("type", "") == "KillingBasis";
    if (many) {
      expect_document(in, "KillingBasis");
      if (!in.contains("basis") || !in.at("basis").is_array()) throw ParseError("missing field 'basis'");
      for (const auto& b : in.at("basis")) symbols.push_back(read_symbol(s, b.dump().c_str()));
    } else {
      symbols.push_back(read_symbol(s, symbol_json));
    }
    bool all_valid = true;
    Json results = Json::array();
    for (const auto& f : symbols) {
      const SymmetryCheck c = verify_symmetry(f, ell, s->sig);
      all_valid = all_valid && c.valid;
      results.push_back(c.valid ? symmetry_pair_to_json(*c.pair) : symmetry_check_to_json(c));
    }
    if (!many && all_valid) {
      doc = document("SymmetryPair", results[0]);
    } else if (!many) {
      doc = document("SymmetryDefect", results[0]);
    } else {
      doc = document("SymmetryList", {{"ell", ell}, {"all_valid", all_valid}, {"results", results}});
    }
    return all_valid ? CONFSYM_OK : CONFSYM_VERIFICATION_FAILED;
  });
}

confsym_status confsym_star(confsym_session* s, const char* lambda, int m, const char* a_json, const char* b_json,
                            char** out_json) {
  return guarded(s, out_json, [&](Json& doc) {
    const PhasePoly a = read_symbol(s, a_json);
    const PhasePoly b = read_symbol(s, b_json);
    check_degree(s, a.max_degree_p() + b.max_degree_p(), "total degree");
    const StarComponent c = star_component(a, b, m, weight(lambda, "lambda"), s->sig);
    doc = document("StarComponent",
                   {{"m", c.m}, {"lambda", rational_to_json(c.lambda)}, {"value", poly_to_json(c.value)}});
    return CONFSYM_OK;
  });
}

confsym_status confsym_star_check(confsym_session* s, const char* lambda, int max_degree, char** out_json) {
  return guarded(s, out_json, [&](Json& doc) {
    check_degree(s, 3 * max_degree, "triple-product degree");
    const StarReport r = check_star(weight(lambda, "lambda"), max_degree, s->sig);
    doc = document("StarReport", star_report_to_json(r));
    return r.passed() ? CONFSYM_OK : CONFSYM_VERIFICATION_FAILED;
  });
}

confsym_status confsym_ideal(confsym_session* s, const char* which, const char* lambda, char** out_json) {
  return guarded(s, out_json, [&](Json& doc) {
    if (which == nullptr) throw InvalidArgument("missing ideal name");
    const std::string name = which;
    const Signature& sig = s->sig;
    const int n = sig.n();
    const int dim = conformal_algebra(sig)->dim();
    const int box = (n + 2) * (n + 1) * n * (n - 1) / 24;
    Json body = {{"which", name}, {"signature", signature_fields(s)}};
    bool ok = true;
    if (name == "I2") {
      const Kernel2 model = kernel_deg2(KernelMap::ModelMoment, sig);
      const Kernel2 amb = kernel_deg2(KernelMap::AmbientMoment, sig);
      const bool casimir_in = moment_pullback(casimir(sig), PullbackTarget::Model).is_zero();
      ok = model.dimension == box + 1 && amb.dimension == box && casimir_in;
      body["dimension"] = model.dimension;
      body["basis"] = kernel2_to_json(model)["basis"];
      body["ambient_dimension"] = amb.dimension;
      body["verdicts"] = {{"dimension_is_box_plus_one", model.dimension == box + 1},
                          {"ambient_dimension_is_box", amb.dimension == box},
                          {"casimir_in_kernel", casimir_in}};
    } else if (name == "Jlambda2") {
      const Rational l = weight(lambda, "lambda");
      const Kernel2 k = kernel_deg2(KernelMap::Ell, sig, l);
      const Rational c = casimir_eigenvalue(l, sig);
      const EnvElement shifted = casimir_operator(sig) - EnvElement::scalar(EnvKind::Enveloping, sig, c);
      const bool casimir_in = ell_morphism(shifted, l).is_zero();
      const int model = kernel_deg2(KernelMap::ModelMoment, sig).dimension;
      ok = casimir_in && k.dimension == model;
      body["lambda"] = rational_to_json(l);
      body["dimension"] = k.dimension;
      body["basis"] = kernel2_to_json(k)["basis"];
      body["rho"] = rational_to_json(rho(l, sig));
      body["casimir_eigenvalue"] = rational_to_json(c);
      body["verdicts"] = {{"casimir_minus_eigenvalue_in_kernel", casimir_in},
                          {"dimension_matches_moment_kernel", k.dimension == model}};
    } else if (name == "joseph") {
      const Rational l = lambda == nullptr ? joseph_weight(sig) : parse_rational(lambda);
      auto alg = conformal_algebra(sig);
      Json failing = Json::array();
      int divisible = 0;
      for (int a = 0; a < dim; ++a) {
        for (int b = a; b < dim; ++b) {
          if (right_divide(ell_morphism(joseph_generator(a, b, l, sig), l), 1, sig)) {
            ++divisible;
          } else {
            failing.push_back({alg->generator(a).label, alg->generator(b).label});
          }
        }
      }
      ok = failing.empty();
      body["lambda"] = rational_to_json(l);
      body["pairs"] = dim * (dim + 1) / 2;
      body["divisible"] = divisible;
      body["not_divisible"] = failing;
      body["verdicts"] = {{"all_divisible_by_laplacian", ok}};
    } else {
      throw InvalidArgument("unknown ideal '" + name + "' (expected I2, Jlambda2 or joseph)");
    }
    body["passed"] = ok;
    doc = document("IdealReport", body);
    return ok ? CONFSYM_OK : CONFSYM_VERIFICATION_FAILED;
  });
}

confsym_status confsym_report(confsym_session* s, const int* ids, size_t count, char** out_json) {
  return guarded(s, out_json, [&](Json& doc) {
    std::vector<int> list;
    if (count > 0 && ids == nullptr) throw InvalidArgument("missing criterion list");
    for (size_t i = 0; i < count; ++i) list.push_back(ids[i]);
    const auto results = run_acceptance(list);
    Json criteria = Json::array();
    bool all = true;
    for (const auto& r : results) {
      all = all && r.passed;
      criteria.push_back({{"id", r.id},
                          {"title", r.title},
                          {"passed", r.passed},
                          {"seconds", r.seconds},
                          {"budget_seconds", r.budget_seconds},
                          {"detail", r.detail}});
    }
    doc = document("AcceptanceReport", {{"criteria", criteria}, {"passed", all}});
    return all ? CONFSYM_OK : CONFSYM_VERIFICATION_FAILED;
  });
}

}  // extern "C"
