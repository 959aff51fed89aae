// confsym: command-line front end over the C API.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "confsym.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

struct Common {
  int p = -1;
  int q = -1;
  std::string out;
};

struct SessionDeleter {
  void operator()(confsym_session* s) const { confsym_session_free(s); }
};
using Session = std::unique_ptr<confsym_session, SessionDeleter>;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Session open_session(const Common& c) {
  if (c.p < 0 || c.q < 0) throw UsageError("--p and --q are required");
  confsym_status st = CONFSYM_OK;
  Session s(confsym_session_new(c.p, c.q, &st));
  if (!s) {
    throw UsageError("invalid signature (" + std::to_string(c.p) + "," + std::to_string(c.q) +
                     "): need p+q >= 3");
  }
  if (const char* cap = std::getenv("CONFSYM_MAX_DEGREE")) {
    char* end = nullptr;
    const long v = std::strtol(cap, &end, 10);
    if (end == cap || *end != '\0' || v < 0) throw UsageError("CONFSYM_MAX_DEGREE must be a non-negative integer");
    confsym_set_max_degree(s.get(), static_cast<int>(v));
  }
  return s;
}

// Writes the document and converts the status into an exit code.
int finish(confsym_session* s, confsym_status st, char* json, const Common& c) {
  std::unique_ptr<char, void (*)(char*)> doc(json, confsym_free_string);
  if (st != CONFSYM_OK && st != CONFSYM_VERIFICATION_FAILED) {
    std::cerr << "confsym: " << confsym_status_name(st) << ": " << confsym_last_error(s) << "\n";
    return st == CONFSYM_E_INTERNAL ? kExitInternal : kExitUsage;
  }
  if (doc) {
    if (c.out.empty()) {
      std::cout << doc.get();
    } else {
      std::ofstream f(c.out, std::ios::binary);
      if (!f) throw UsageError("cannot write " + c.out);
      f << doc.get();
    }
  }
  return st == CONFSYM_OK ? kExitOk : kExitFailed;
}

void add_signature(CLI::App* app, Common& c) {
  app->add_option("--p", c.p, "number of positive metric directions")->required();
  app->add_option("--q", c.q, "number of negative metric directions")->required();
  app->add_option("--out", c.out, "write the JSON document to this file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact conformally equivariant quantization on flat space"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(confsym_version()));
  Common c;
  std::function<int()> action;

  auto* algebra = app.add_subcommand("algebra", "conformal algebra o(p+1,q+1)");
  add_signature(algebra, c);
  algebra->require_subcommand(1);
  auto* algebra_check =
      algebra->add_subcommand("check", "generator count, bracket closure, Killing determinant")->fallthrough();
  algebra_check->callback([&] {
    action = [&] {
      Session s = open_session(c);
      char* out = nullptr;
      const confsym_status st = confsym_algebra_check(s.get(), &out);
      return finish(s.get(), st, out, c);
    };
  });

  int k = 0, sub = -1, kp = 0, subp = -1, bound = 0;
  std::string delta, delta_p;
  auto* cls = app.add_subcommand("classify", "invariant operators between symbol components");
  add_signature(cls, c);
  cls->add_option("--k", k, "source degree")->required();
  cls->add_option("--s", sub, "source harmonic index (omit for the full space)");
  cls->add_option("--kp", kp, "target degree")->required();
  cls->add_option("--sp", subp, "target harmonic index (omit for the full space)");
  cls->add_option("--delta", delta, "source shift")->required();
  cls->add_option("--deltap", delta_p, "target shift")->required();
  cls->add_option("--bound", bound, "x-order search bound");
  cls->callback([&] {
    action = [&] {
      Session s = open_session(c);
      char* out = nullptr;
      const confsym_status st =
          confsym_classify(s.get(), k, sub, kp, subp, delta.c_str(), delta_p.c_str(), bound, &out);
      return finish(s.get(), st, out, c);
    };
  });

  std::string lambda, mu, in, in2;
  bool tracefree = false;
  auto* quant = app.add_subcommand("quantize", "quantize a symbol, or solve for the quantization map");
  add_signature(quant, c);
  quant->add_option("--lambda", lambda, "source weight");
  quant->add_option("--mu", mu, "target weight");
  quant->add_option("--in", in, "PhasePoly JSON document");
  auto* solve = quant->add_subcommand("solve", "solve the equivariance equations on degree-k symbols")->fallthrough();
  solve->add_option("--k", k, "symbol degree")->required();
  solve->add_option("--delta", delta, "weight shift mu - lambda")->required();
  solve->add_flag("--tracefree", tracefree, "restrict to trace-free symbols");
  auto* deq = quant->add_subcommand("inverse", "dequantize a DiffOp document given by --in")->fallthrough();
  quant->callback([&] {
    if (solve->parsed()) {
      action = [&] {
        Session s = open_session(c);
        char* out = nullptr;
        const char* weight = lambda.empty() ? nullptr : lambda.c_str();
        const confsym_status st = confsym_quantize_solve(s.get(), k, delta.c_str(), weight, tracefree ? 1 : 0, &out);
        return finish(s.get(), st, out, c);
      };
      return;
    }
    if (in.empty()) throw CLI::RequiredError("--in");
    if (deq->parsed()) {
      action = [&] {
        Session s = open_session(c);
        const std::string text = read_file(in);
        char* out = nullptr;
        const confsym_status st = confsym_dequantize(s.get(), text.c_str(), &out);
        return finish(s.get(), st, out, c);
      };
      return;
    }
    if (lambda.empty()) throw CLI::RequiredError("--lambda");
    if (mu.empty()) throw CLI::RequiredError("--mu");
    action = [&] {
      Session s = open_session(c);
      const std::string text = read_file(in);
      char* out = nullptr;
      const confsym_status st = confsym_quantize(s.get(), lambda.c_str(), mu.c_str(), text.c_str(), &out);
      return finish(s.get(), st, out, c);
    };
  });

  int ckt_bound = -1;
  auto* ckt = app.add_subcommand("ckt", "s-generalized conformal Killing k-tensors");
  add_signature(ckt, c);
  ckt->add_option("--k", k, "tensor degree")->required();
  ckt->add_option("--s", sub, "trace power s (0 <= 2s <= k)")->required();
  ckt->add_option("--bound", ckt_bound, "x-degree bound");
  ckt->callback([&] {
    action = [&] {
      Session s = open_session(c);
      char* out = nullptr;
      const confsym_status st = confsym_ckt(s.get(), k, sub, ckt_bound, &out);
      return finish(s.get(), st, out, c);
    };
  });

  int ell = 1;
  auto* sym = app.add_subcommand("symmetry", "symmetries of powers of the Laplacian");
  add_signature(sym, c);
  sym->require_subcommand(1);
  auto* verify = sym->add_subcommand("verify", "quantize a symbol and check the symmetry identity")->fallthrough();
  verify->add_option("--ell", ell, "power of the Laplacian")->required();
  verify->add_option("--in", in, "PhasePoly or KillingBasis JSON document")->required();
  verify->callback([&] {
    action = [&] {
      Session s = open_session(c);
      const std::string text = read_file(in);
      char* out = nullptr;
      const confsym_status st = confsym_symmetry_verify(s.get(), ell, text.c_str(), &out);
      return finish(s.get(), st, out, c);
    };
  });

  int m = 0, maxdeg = 2;
  auto* star = app.add_subcommand("star", "components of the induced star product");
  add_signature(star, c);
  star->add_option("--lambda", lambda, "density weight")->required();
  star->add_option("--m", m, "level");
  star->add_option("--in1", in, "first PhasePoly document");
  star->add_option("--in2", in2, "second PhasePoly document");
  auto* star_check = star->add_subcommand("check", "verify the star-product axioms")->fallthrough();
  star_check->add_option("--maxdeg", maxdeg, "largest symbol degree in the spanning sets");
  star->callback([&] {
    if (star_check->parsed()) {
      action = [&] {
        Session s = open_session(c);
        char* out = nullptr;
        const confsym_status st = confsym_star_check(s.get(), lambda.c_str(), maxdeg, &out);
        return finish(s.get(), st, out, c);
      };
      return;
    }
    if (in.empty()) throw CLI::RequiredError("--in1");
    if (in2.empty()) throw CLI::RequiredError("--in2");
    action = [&] {
      Session s = open_session(c);
      const std::string a = read_file(in);
      const std::string b = read_file(in2);
      char* out = nullptr;
      const confsym_status st = confsym_star(s.get(), lambda.c_str(), m, a.c_str(), b.c_str(), &out);
      return finish(s.get(), st, out, c);
    };
  });

  std::string which;
  auto* ideal = app.add_subcommand("ideal", "degree-2 parts of the ideals I, J^lambda and the Joseph ideal");
  add_signature(ideal, c);
  ideal->add_option("--which", which, "I2, Jlambda2 or joseph")
      ->required()
      ->check(CLI::IsMember({"I2", "Jlambda2", "joseph"}));
  ideal->add_option("--lambda", lambda, "density weight (required for Jlambda2)");
  ideal->callback([&] {
    if (which == "Jlambda2" && lambda.empty()) throw CLI::RequiredError("--lambda");
    action = [&] {
      Session s = open_session(c);
      char* out = nullptr;
      const confsym_status st = confsym_ideal(s.get(), which.c_str(), lambda.empty() ? nullptr : lambda.c_str(), &out);
      return finish(s.get(), st, out, c);
    };
  });

  std::vector<std::string> criteria;
  bool text = false;
  auto* report = app.add_subcommand("report", "run acceptance criteria");
  add_signature(report, c);
  report->add_option("criteria", criteria, "'all' or criterion numbers 1..11")->required();
  report->add_flag("--text", text, "one line per criterion instead of JSON");
  report->callback([&] {
    action = [&] {
      std::vector<int> ids;
      for (const auto& t : criteria) {
        if (t == "all") {
          ids.clear();
          break;
        }
        try {
          std::size_t used = 0;
          const int id = std::stoi(t, &used);
          if (used != t.size()) throw std::invalid_argument(t);
          ids.push_back(id);
        } catch (const std::exception&) {
          throw UsageError("criterion must be 'all' or a number, got '" + t + "'");
        }
      }
      Session s = open_session(c);
      char* out = nullptr;
      const confsym_status st = confsym_report(s.get(), ids.data(), ids.size(), &out);
      if (!text || out == nullptr) return finish(s.get(), st, out, c);
      // Text form: reuse the document, one line per criterion.
      std::unique_ptr<char, void (*)(char*)> doc(out, confsym_free_string);
      const auto j = nlohmann::json::parse(doc.get());
      for (const auto& r : j.at("criteria")) {
        std::cout << "criterion " << r.at("id").get<int>() << ": " << (r.at("passed").get<bool>() ? "PASS" : "FAIL")
                  << "  " << r.at("title").get<std::string>() << "  " << r.at("detail").get<std::string>() << "\n";
      }
      return st == CONFSYM_OK ? kExitOk : kExitFailed;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  try {
    return action ? action() : kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "confsym: usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "confsym: " << e.what() << "\n";
    return kExitInternal;
  }
}
