#include <doctest.h>

#include <nlohmann/json.hpp>

#include "nialg/serialize.hpp"
#include "nialg/variety.hpp"

using namespace nialg;

TEST_CASE("relation spaces round-trip through JSON") {
  for (const char* name : {"ls", "ls_a1", "ls_b1_dual", "perm2"}) {
    CAPTURE(name);
    RelationSpace s = consequences_of(std::string(name))->relation_space(3);
    MonomialTable t(OperationSignature::single(), 3);
    std::string text = to_json(s, t);
    RelationSpace back = relation_space_from_json(text, t);
    CHECK(same_span(back, s));
    auto j = nlohmann::json::parse(text);
    REQUIRE(j.is_array());
    CHECK(j.size() == s.rank());
  }
}

TEST_CASE("JSON rows map monomial strings to rational strings") {
  MonomialTable t(OperationSignature::single(), 3);
  SparseMatrix m;
  m.ncols = static_cast<std::uint32_t>(t.size());
  m.rows = {{{0, Rational(1)}, {5, Rational(-2, 3)}}, {{1, Rational(4)}}};
  RelationSpace s = rref(m);
  s.set_ambient(ambient_tag(t.signature(), 3, t.order()));
  auto j = nlohmann::json::parse(to_json(s, t));
  REQUIRE(j.size() == 2);
  CHECK(j[0].size() == 2);
  CHECK(j[0][to_string(t.monomial(5), t.signature(), default_names(3))] == "-2/3");
  CHECK(j[1][to_string(t.monomial(1), t.signature(), default_names(3))] == "1");
  for (const auto& row : j)
    for (const auto& [k, v] : row.items()) {
      CHECK(k.find("x1") != std::string::npos);
      CHECK(v.is_string());
    }
  CHECK(same_span(relation_space_from_json(to_json(s, t), t), s));
}

TEST_CASE("malformed JSON is rejected") {
  MonomialTable t(OperationSignature::single(), 3);
  CHECK_THROWS(relation_space_from_json("{\"a\": 1}", t));
  CHECK_THROWS(relation_space_from_json("[{\"y1*x2\": \"1\"}]", t));
}
