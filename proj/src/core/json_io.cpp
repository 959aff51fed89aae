#include "confsym/json_io.hpp"

namespace confsym {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw ParseError(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

Json exponents(ExpVec e, int n) {
  Json out = Json::array();
  for (int i = 0; i < n; ++i) out.push_back(e[i]);
  return out;
}

ExpVec exponents_from(const Json& j, int n) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) {
    throw ParseError("exponent list must have " + std::to_string(n) + " entries");
  }
  ExpVec e;
  for (int i = 0; i < n; ++i) {
    if (!j[i].is_number_integer()) throw ParseError("exponents must be integers");
    const int v = j[i].get<int>();
    if (v < 0 || v > kMaxExponent) throw DegreeOverflow("exponent out of range (0..15)");
    e.set(i, v);
  }
  return e;
}

int dimension_field(const Json& j) {
  const int n = int_field(j, "n");
  if (n < 1 || n > kMaxVars) throw ParseError("n must be in 1.." + std::to_string(kMaxVars));
  return n;
}

Json domain_to_json(const Domain& d) {
  Json j = {{"k", d.k}};
  j["s"] = d.full() ? Json(nullptr) : Json(d.s);
  return j;
}

Json witness_to_json(const StarWitness& w) {
  Json inputs = Json::array();
  for (const auto& f : w.inputs) inputs.push_back(poly_to_json(f));
  return {{"inputs", inputs}, {"m", w.m}, {"note", w.note}};
}

}  // namespace

Json document(const std::string& type, Json body) {
  body["schema_version"] = kSchemaVersion;
  body["type"] = type;
  return body;
}

const Json& expect_document(const Json& doc, const std::string& type) {
  if (!doc.is_object()) throw ParseError("expected a JSON object");
  if (doc.contains("schema_version")) {
    const Json& v = doc.at("schema_version");
    if (!v.is_number_integer() || v.get<int>() != kSchemaVersion) {
      throw ParseError("unsupported schema_version (expected " + std::to_string(kSchemaVersion) + ")");
    }
  }
  if (doc.contains("type") && doc.at("type") != type) {
    throw ParseError("expected a " + type + " document, got " + doc.at("type").dump());
  }
  return doc;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

std::string dump_json(const Json& doc) { return doc.dump(2) + "\n"; }

Json rational_to_json(const Rational& r) { return format_rational(r); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw ParseError("rational must be a string \"a/b\" or an integer");
  return parse_rational(j.get<std::string>());
}

Json signature_to_json(const Signature& sig) { return {{"p", sig.p}, {"q", sig.q}}; }

Signature signature_from_json(const Json& j) {
  try {
    return Signature(int_field(j, "p"), int_field(j, "q"));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

Json poly_to_json(const PhasePoly& f) {
  Json terms = Json::array();
  for (const auto& [m, c] : f.terms()) {
    terms.push_back({{"x", exponents(m.x, f.n())}, {"p", exponents(m.p, f.n())}, {"coeff", rational_to_json(c)}});
  }
  return {{"n", f.n()}, {"terms", terms}};
}

PhasePoly poly_from_json(const Json& j) {
  expect_document(j, "PhasePoly");
  const int n = dimension_field(j);
  PhasePoly f(n);
  const Json& terms = field(j, "terms");
  if (!terms.is_array()) throw ParseError("'terms' must be an array");
  for (const auto& t : terms) {
    f.add_term(PhaseMono{exponents_from(field(t, "p"), n), exponents_from(field(t, "x"), n)},
               rational_from_json(field(t, "coeff")));
  }
  return f;
}

Json phase_op_to_json(const PhaseOp& a) {
  Json terms = Json::array();
  for (const auto& [m, c] : a.terms()) {
    terms.push_back({{"x", exponents(m.x, a.n())},
                     {"p", exponents(m.p, a.n())},
                     {"dx", exponents(m.dx, a.n())},
                     {"dp", exponents(m.dp, a.n())},
                     {"coeff", rational_to_json(c)}});
  }
  return {{"n", a.n()}, {"terms", terms}};
}

PhaseOp phase_op_from_json(const Json& j) {
  expect_document(j, "PhaseOp");
  const int n = dimension_field(j);
  PhaseOp a(n);
  const Json& terms = field(j, "terms");
  if (!terms.is_array()) throw ParseError("'terms' must be an array");
  for (const auto& t : terms) {
    OpMono m{exponents_from(field(t, "x"), n), exponents_from(field(t, "p"), n), exponents_from(field(t, "dx"), n),
             exponents_from(field(t, "dp"), n)};
    a.add_term(m, rational_from_json(field(t, "coeff")));
  }
  return a;
}

Json diff_op_to_json(const DiffOp& a) {
  return {{"lambda", rational_to_json(a.lambda())},
          {"mu", rational_to_json(a.mu())},
          {"symbol", poly_to_json(a.symbol())}};
}

DiffOp diff_op_from_json(const Json& j) {
  expect_document(j, "DiffOp");
  return DiffOp(poly_from_json(field(j, "symbol")), rational_from_json(field(j, "lambda")),
                rational_from_json(field(j, "mu")));
}

Json contraction_to_json(const ContractionMono& m) {
  return {{"R", m.a}, {"G", m.b}, {"Lambda", m.c}, {"D", m.e}, {"T", m.f}, {"label", m.to_string()}};
}

Json quant_map_to_json(const QuantMap& q) {
  Json corr = Json::array();
  for (const auto& [m, c] : q.corrections) {
    corr.push_back({{"monomial", contraction_to_json(m)}, {"coeff", rational_to_json(c)}});
  }
  return {{"k", q.k},
          {"lambda", rational_to_json(q.lambda)},
          {"delta", rational_to_json(q.delta)},
          {"signature", signature_to_json(q.sig)},
          {"domain", domain_to_json(q.domain)},
          {"status", to_string(q.status)},
          {"corrections", corr},
          {"kernel_dimension", q.kernel_dimension}};
}

Json classification_to_json(const Classification& c) {
  Json basis = Json::array();
  for (std::size_t i = 0; i < c.basis.size(); ++i) {
    Json combo = Json::array();
    for (const auto& [m, v] : c.basis[i]) {
      combo.push_back({{"monomial", contraction_to_json(m)}, {"coeff", rational_to_json(v)}});
    }
    Json entry = {{"combination", combo}};
    if (i < c.basis_ops.size()) entry["operator"] = phase_op_to_json(c.basis_ops[i]);
    basis.push_back(entry);
  }
  return {{"source", domain_to_json(c.source)},
          {"target", domain_to_json(c.target)},
          {"delta", rational_to_json(c.delta)},
          {"delta_prime", rational_to_json(c.delta_p)},
          {"bound", c.bound},
          {"dimension", c.dimension},
          {"stable", c.stable},
          {"basis", basis}};
}

Json killing_basis_to_json(const KillingBasis& kb) {
  Json basis = Json::array();
  for (const auto& f : kb.basis) basis.push_back(poly_to_json(f));
  return {{"k", kb.k},
          {"s", kb.s},
          {"signature", signature_to_json(kb.sig)},
          {"degree_bound", kb.degree_bound},
          {"dimension", kb.basis.size()},
          {"stable", kb.stable},
          {"basis", basis}};
}

Json symmetry_pair_to_json(const SymmetryPair& s) {
  return {{"ell", s.ell}, {"d1", diff_op_to_json(s.d1)}, {"d2", diff_op_to_json(s.d2)}};
}

SymmetryPair symmetry_pair_from_json(const Json& j) {
  expect_document(j, "SymmetryPair");
  return {diff_op_from_json(field(j, "d1")), diff_op_from_json(field(j, "d2")), int_field(j, "ell")};
}

Json symmetry_check_to_json(const SymmetryCheck& c) {
  Json j = {{"valid", c.valid}, {"by_division", c.by_division}, {"defect", diff_op_to_json(c.defect)}};
  j["pair"] = c.pair ? symmetry_pair_to_json(*c.pair) : Json(nullptr);
  return j;
}

Json env_to_json(const EnvElement& u) {
  auto alg = conformal_algebra(u.signature());
  Json terms = Json::array();
  for (const auto& [w, c] : u.coeffs()) {
    Json word = Json::array();
    for (int i : w) word.push_back(alg->generator(i).label);
    terms.push_back({{"word", word}, {"coeff", rational_to_json(c)}});
  }
  return {{"kind", u.kind() == EnvKind::Symmetric ? "symmetric" : "enveloping"},
          {"signature", signature_to_json(u.signature())},
          {"max_degree", u.max_degree()},
          {"terms", terms}};
}

EnvElement env_from_json(const Json& j) {
  expect_document(j, "EnvElement");
  const Json& kind = field(j, "kind");
  EnvKind k;
  if (kind == "symmetric") {
    k = EnvKind::Symmetric;
  } else if (kind == "enveloping") {
    k = EnvKind::Enveloping;
  } else {
    throw ParseError("kind must be \"symmetric\" or \"enveloping\"");
  }
  const Signature sig = signature_from_json(field(j, "signature"));
  const int max_degree = int_field(j, "max_degree");
  if (max_degree < 0 || max_degree > kMaxEnvDegree) throw DegreeOverflow("max_degree out of range");
  auto alg = conformal_algebra(sig);
  EnvElement u(k, sig, max_degree);
  for (const auto& t : field(j, "terms")) {
    Word w;
    for (const auto& label : field(t, "word")) {
      if (!label.is_string()) throw ParseError("word entries must be generator labels");
      try {
        w.push_back(alg->index_of(label.get<std::string>()));
      } catch (const InvalidArgument& e) {
        throw ParseError(e.what());
      }
    }
    u.add_word(w, rational_from_json(field(t, "coeff")));
  }
  return u;
}

Json kernel2_to_json(const Kernel2& k) {
  Json basis = Json::array();
  for (const auto& u : k.basis) basis.push_back(env_to_json(u));
  return {{"dimension", k.dimension}, {"basis", basis}};
}

Json star_report_to_json(const StarReport& r) {
  Json verdicts = Json::array();
  for (const auto& v : r.verdicts) {
    Json j = {{"name", v.name}, {"passed", v.passed}, {"checked", v.checked}};
    j["witness"] = v.witness ? witness_to_json(*v.witness) : Json(nullptr);
    verdicts.push_back(j);
  }
  return {{"lambda", rational_to_json(r.lambda)},
          {"max_degree", r.max_degree},
          {"signature", signature_to_json(r.sig)},
          {"descent_lambda", rational_to_json(r.descent_lambda)},
          {"symmetric", r.symmetric},
          {"passed", r.passed()},
          {"verdicts", verdicts}};
}

}  // namespace confsym
