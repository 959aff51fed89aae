// Exercises the shared library through its C header only.
#include <doctest.h>

#include <memory>
#include <string>

#include <json.hpp>

#include "confsym.h"

namespace {

using nlohmann::json;

struct SessionDeleter {
  void operator()(confsym_session* s) const { confsym_session_free(s); }
};
using Session = std::unique_ptr<confsym_session, SessionDeleter>;

Session open(int p, int q) {
  confsym_status st = CONFSYM_E_INTERNAL;
  Session s(confsym_session_new(p, q, &st));
  REQUIRE(s);
  REQUIRE(st == CONFSYM_OK);
  return s;
}

// Takes ownership of the returned string.
json take(char* text) {
  REQUIRE(text != nullptr);
  const json j = json::parse(text);
  confsym_free_string(text);
  return j;
}

const char* kX1P1 =
    R"({"schema_version":1,"type":"PhasePoly","n":3,"terms":[{"x":[1,0,0],"p":[1,0,0],"coeff":"1"}]})";

}  // namespace

TEST_CASE("sessions validate the signature") {
  confsym_status st = CONFSYM_OK;
  CHECK(confsym_session_new(1, 1, &st) == nullptr);
  CHECK(st == CONFSYM_E_USAGE);
  CHECK(confsym_session_new(-1, 4, nullptr) == nullptr);
  Session s = open(2, 1);
  CHECK(std::string(confsym_last_error(s.get())).empty());
  CHECK(std::string(confsym_status_name(CONFSYM_E_RESONANCE)) == "resonance");
  CHECK(std::string(confsym_version()).size() > 0);
  confsym_session_free(nullptr);
  confsym_free_string(nullptr);
}

TEST_CASE("algebra check reports the generator count") {
  Session s = open(3, 0);
  char* out = nullptr;
  REQUIRE(confsym_algebra_check(s.get(), &out) == CONFSYM_OK);
  const json j = take(out);
  CHECK(j.at("type") == "AlgebraReport");
  CHECK(j.at("schema_version") == 1);
  CHECK(j.at("generators").size() == 10);
  CHECK(j.at("generators")[6] == "E");
}

TEST_CASE("quantize and dequantize are inverse") {
  Session s = open(3, 0);
  char* out = nullptr;
  REQUIRE(confsym_quantize(s.get(), "1/2", "1/2", kX1P1, &out) == CONFSYM_OK);
  const json op = take(out);
  CHECK(op.at("type") == "DiffOp");
  CHECK(op.at("symbol").at("terms").size() == 2);
  REQUIRE(confsym_dequantize(s.get(), op.dump().c_str(), &out) == CONFSYM_OK);
  const json back = take(out);
  REQUIRE(back.at("terms").size() == 1);
  // Output coefficients are always written as "a/b".
  CHECK(back.at("terms")[0].at("coeff") == "1/1");
  CHECK(back.at("terms")[0].at("x") == json::parse(kX1P1).at("terms")[0].at("x"));
}

TEST_CASE("errors map to status codes and leave no document") {
  Session s = open(3, 0);
  char* out = nullptr;
  CHECK(confsym_quantize(s.get(), "1/x", "1", kX1P1, &out) == CONFSYM_E_PARSE);
  CHECK(out == nullptr);
  CHECK(std::string(confsym_last_error(s.get())).find("1/x") != std::string::npos);
  CHECK(confsym_quantize(s.get(), "0", "1", kX1P1, &out) == CONFSYM_E_RESONANCE);
  CHECK(confsym_quantize(s.get(), "0", "0", "{\"type\":\"PhasePoly\"", &out) == CONFSYM_E_PARSE);
  CHECK(confsym_quantize(s.get(), "0", "0", R"({"type":"DiffOp"})", &out) == CONFSYM_E_PARSE);
  CHECK(confsym_star(s.get(), "0", -1, kX1P1, kX1P1, &out) == CONFSYM_E_USAGE);
  CHECK(confsym_ideal(s.get(), "J", nullptr, &out) == CONFSYM_E_USAGE);
  CHECK(confsym_ckt(s.get(), 2, 2, -1, &out) != CONFSYM_OK);
  CHECK(out == nullptr);
  CHECK(confsym_algebra_check(nullptr, &out) == CONFSYM_E_USAGE);
  CHECK(confsym_algebra_check(s.get(), nullptr) == CONFSYM_E_USAGE);
}

TEST_CASE("the degree cap rejects larger inputs") {
  Session s = open(3, 0);
  confsym_set_max_degree(s.get(), 1);
  char* out = nullptr;
  CHECK(confsym_ckt(s.get(), 2, 0, -1, &out) == CONFSYM_E_DEGREE);
  CHECK(confsym_quantize(s.get(), "1/2", "1/2", kX1P1, &out) == CONFSYM_OK);
  confsym_free_string(out);
  confsym_set_max_degree(s.get(), 0);
  REQUIRE(confsym_ckt(s.get(), 2, 0, -1, &out) == CONFSYM_OK);
  CHECK(take(out).at("dimension") == 35);
}

TEST_CASE("symmetry verification of a Killing basis") {
  Session s = open(3, 0);
  char* out = nullptr;
  REQUIRE(confsym_ckt(s.get(), 1, 0, -1, &out) == CONFSYM_OK);
  const json basis = take(out);
  CHECK(basis.at("dimension") == 10);
  REQUIRE(confsym_symmetry_verify(s.get(), 1, basis.dump().c_str(), &out) == CONFSYM_OK);
  const json list = take(out);
  CHECK(list.at("type") == "SymmetryList");
  CHECK(list.at("all_valid") == true);
  CHECK(list.at("results").size() == 10);
}

TEST_CASE("star components and the Joseph ideal") {
  Session s = open(3, 0);
  const char* p1 =
      R"({"schema_version":1,"type":"PhasePoly","n":3,"terms":[{"x":[0,0,0],"p":[1,0,0],"coeff":"1"}]})";
  const char* x1 =
      R"({"schema_version":1,"type":"PhasePoly","n":3,"terms":[{"x":[1,0,0],"p":[0,0,0],"coeff":"1"}]})";
  char* out = nullptr;
  REQUIRE(confsym_star(s.get(), "0", 1, p1, x1, &out) == CONFSYM_OK);
  const json c = take(out);
  CHECK(c.at("value").at("terms").size() == 1);
  CHECK(c.at("value").at("terms")[0].at("coeff") == "1/1");
  REQUIRE(confsym_ideal(s.get(), "joseph", nullptr, &out) == CONFSYM_OK);
  const json j = take(out);
  CHECK(j.at("lambda") == "1/6");
  CHECK(j.at("passed") == true);
  CHECK(confsym_ideal(s.get(), "joseph", "1/3", &out) == CONFSYM_VERIFICATION_FAILED);
  REQUIRE(out != nullptr);
  CHECK(take(out).at("passed") == false);
}
