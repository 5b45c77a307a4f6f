#include <doctest.h>

#include <algorithm>

#include "nialg/dual.hpp"
#include "nialg/expr.hpp"

using namespace nialg;

namespace {

bool has(const std::vector<std::string>& v, const std::string& s) { return std::find(v.begin(), v.end(), s) != v.end(); }

}  // namespace

TEST_CASE("pairing signs on the cubic monomials") {
  auto g = pairing_signs();
  auto monos = enumerate(OperationSignature::single(), 3);
  REQUIRE(g.size() == 12);
  for (std::size_t i = 0; i < monos.size(); ++i) {
    auto labels = monos[i].leaf_labels();
    int inv = 0;
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = a + 1; b < 3; ++b) inv += labels[a] > labels[b];
    int sgn = inv % 2 ? -1 : 1;
    CHECK(g[i] == (monos[i].left().is_leaf() ? -sgn : sgn));
  }
}

TEST_CASE("duals of the left-symmetric family match the library") {
  const VarietyLibrary& lib = VarietyLibrary::global();
  CHECK(has(koszul_dual(lib.get("ls"), lib).matches, "perm"));
  CHECK(has(koszul_dual(lib.get("perm"), lib).matches, "ls"));
  DualResult a1 = koszul_dual(lib.get("ls_a1"), lib);
  CHECK(has(a1.matches, "ls_a1_dual"));
  CHECK(has(a1.matches, "alt_half_zinbiel"));
  CHECK(has(koszul_dual(lib.get("ls_b1"), lib).matches, "ls_b1_dual"));
  CHECK(has(koszul_dual(lib.get("ls_a2"), lib).matches, "ls_a2_dual"));
  CHECK(has(koszul_dual(lib.get("associative"), lib).matches, "associative"));
}

TEST_CASE("dimensions of dual relation spaces are complementary") {
  const VarietyLibrary& lib = VarietyLibrary::global();
  for (const auto& name : lib.names()) {
    QuadraticPresentation q;
    try {
      q = quadratic_presentation(lib.get(name));
    } catch (const NotQuadratic&) {
      continue;
    }
    CAPTURE(name);
    CHECK(koszul_dual(q).relations.rank() + q.relations.rank() == 12);
    CHECK(double_dual_check(q));
  }
}

TEST_CASE("non-quadratic presentations are refused") {
  const VarietyLibrary& lib = VarietyLibrary::global();
  CHECK_THROWS_AS(quadratic_presentation(lib.get("lie")), NotQuadratic);
  CHECK_THROWS_AS(quadratic_presentation(lib.get("jordan_a2")), NotQuadratic);
}

TEST_CASE("Lie-admissibility agrees with the pairing for every left-symmetric subvariety") {
  const VarietyLibrary& lib = VarietyLibrary::global();
  for (const char* name : {"ls_a1", "ls_b1", "ls_c1", "ls_d1", "ls_a2", "ls_b2", "ls_c2", "ls_d2"}) {
    CAPTURE(name);
    VarietyPresentation v = lib.get(name);
    RelationSpace lie = lie_admissibility_relations(v);
    RelationSpace pairing = koszul_dual(quadratic_presentation(v)).relations;
    CHECK(same_span(lie, pairing));
  }
}

TEST_CASE("Lie-admissibility check on known dual pairs") {
  const VarietyLibrary& lib = VarietyLibrary::global();
  const std::pair<const char*, const char*> pairs[] = {{"ls_a1", "ls_a1_dual"}, {"ls_b1", "ls_b1_dual"},
                                                       {"ls_a2", "ls_a2_dual"}, {"ls", "perm"},
                                                       {"perm", "ls"},          {"associative", "associative"}};
  for (auto [c, d] : pairs) {
    CAPTURE(c);
    CHECK(lie_admissibility_check(lib.get(c), lib.get(d)));
  }
  CHECK_FALSE(lie_admissibility_check(lib.get("ls_a1"), lib.get("ls_b1_dual")));
}

TEST_CASE("relation texts are parseable identities") {
  const VarietyLibrary& lib = VarietyLibrary::global();
  DualResult d = koszul_dual(lib.get("ls"), lib);
  auto texts = relation_texts(d.dual.relations, OperationSignature::single(), 3);
  CHECK(texts.size() == 9);
  for (const auto& t : texts) CHECK(is_identity(lib.get("perm"), parse(t, OperationSignature::single())));
}
