#include <doctest.h>

#include <algorithm>

#include "nialg/expr.hpp"
#include "nialg/polar.hpp"

using namespace nialg;

namespace {

const OperationSignature& psig() {
  static const OperationSignature s = OperationSignature::polarized();
  return s;
}

MultilinearPoly poly(const std::string& text, const OperationSignature& sig) { return expand(parse(text, sig), sig); }

// True when `text` equals one displayed identity up to scaling.
bool displayed(const PolarizedPresentation& p, const std::string& text) {
  MultilinearPoly target = poly(text, psig());
  return std::any_of(p.identities.begin(), p.identities.end(), [&](const PolarizedIdentity& id) {
    MultilinearPoly ours(id.leading);
    ours -= id.rhs;
    Rational c = target.coefficient(id.leading);
    return c != 0 && c * ours == target;
  });
}

const char* kJacobi = "[[a,b],c]+[[b,c],a]+[[c,a],b] = 0";
const char* kSecond = "{{a,b},c} = -{[a,b],c}-2*{[a,c],b}+[{a,b},c]-[[a,c],b]+{a,{b,c}}-{a,[b,c]}+[a,{b,c}]";

}  // namespace

TEST_CASE("polarization of a product") {
  const auto sig = OperationSignature::single();
  MultilinearPoly p = polarize_poly(poly("a*b", sig));
  CHECK(p == poly("1/2*[a,b] + 1/2*{a,b}", psig()));
  CHECK(depolarize(p) == poly("a*b", sig));
}

TEST_CASE("depolarization inverts polarization on random cubic polynomials") {
  const auto sig = OperationSignature::single();
  auto monos = enumerate(sig, 4);
  for (std::size_t i = 0; i < monos.size(); i += 7) {
    MultilinearPoly p(monos[i], Rational(3, 2));
    p.add(monos[(i * 5 + 3) % monos.size()], -1);
    CHECK(depolarize(polarize_poly(p)) == p);
  }
}

TEST_CASE("left-symmetric polarization has the two expected identities") {
  PolarizedPresentation p = polarize(VarietyLibrary::global().get("ls"));
  REQUIRE(p.identities.size() == 2);
  CHECK(displayed(p, kJacobi));
  CHECK(displayed(p, kSecond));
  CHECK(p.relations.rank() == 12 - dimension(VarietyLibrary::global().get("ls"), 3));
}

TEST_CASE("subvariety polarizations add one identity each") {
  const VarietyLibrary& lib = VarietyLibrary::global();
  PolarizedPresentation b1 = polarize(lib.get("ls_b1"));
  REQUIRE(b1.identities.size() == 3);
  CHECK(displayed(b1, "{[a,b],c}+{[b,c],a}+{[c,a],b} = 0"));
  PolarizedPresentation a2 = polarize(lib.get("ls_a2"));
  REQUIRE(a2.identities.size() == 3);
  CHECK(displayed(a2, "{a,{b,c}} = {[a,b],c}+{[a,c],b}+[{b,c},a]+2/3*[[a,c],b]+1/3*[a,[b,c]]"));
  for (const auto* p : {&b1, &a2}) {
    CHECK(displayed(*p, kJacobi));
    CHECK(displayed(*p, kSecond));
  }
}

TEST_CASE("the LS_A1 row carries 2/3 where the 3/2 form fails") {
  const VarietyLibrary& lib = VarietyLibrary::global();
  const std::string corrected =
      "{a,{b,c}} = {[a,b],c}+{[a,c],b}-2/3*[{a,b},c]-2/3*[{a,c},b]+2/3*[[a,c],b]-1/3*[a,{b,c}]+1/3*[a,[b,c]]";
  const std::string as_printed =
      "{a,{b,c}} = {[a,b],c}+{[a,c],b}-3/2*[{a,b},c]-3/2*[{a,c},b]+3/2*[[a,c],b]-1/3*[a,{b,c}]+1/3*[a,[b,c]]";
  PolarizedPresentation a1 = polarize(lib.get("ls_a1"));
  REQUIRE(a1.identities.size() == 3);
  CHECK(displayed(a1, corrected));
  CHECK_FALSE(displayed(a1, as_printed));
  VarietyPresentation v = lib.get("ls_a1");
  CHECK(is_identity(v, depolarize(poly(corrected, psig()))));
  CHECK_FALSE(is_identity(v, depolarize(poly(as_printed, psig()))));
}

TEST_CASE("polarized identities depolarize to identities of the variety") {
  const VarietyLibrary& lib = VarietyLibrary::global();
  for (const char* name : {"ls", "ls_a1", "ls_b1", "ls_a2", "ls_c1", "ls_d1"}) {
    CAPTURE(name);
    VarietyPresentation v = lib.get(name);
    PolarizedPresentation p = polarize(v, lib);
    for (const auto& id : p.identities) {
      MultilinearPoly rel(id.leading);
      rel -= id.rhs;
      CHECK(is_identity(v, depolarize(rel)));
    }
  }
}

TEST_CASE("derived identities of the A1 and B1 families") {
  const VarietyLibrary& lib = VarietyLibrary::global();
  const auto& comm = derived_signature(DerivedOp::commutator);
  const auto& anti = derived_signature(DerivedOp::anticommutator);
  std::vector<Expression> jacobi{parse(kJacobi, comm)};
  for (const char* name : {"ls_a1", "ls_b1", "ls_a2"})
    for (int n : {3, 4}) {
      CAPTURE(name);
      CAPTURE(n);
      RelationSpace c = derived_identities(lib.get(name), DerivedOp::commutator, n);
      CHECK(c.rank() == (n == 3 ? 1u : 9u));
      CHECK(follows_from(c, jacobi, comm, n));
      RelationSpace a = derived_identities(lib.get(name), DerivedOp::anticommutator, n);
      bool extra = std::string(name) == "ls_a2" && n == 4;
      CHECK(a.rank() == (extra ? 1u : 0u));
      CHECK(follows_from(a, std::vector<Expression>{}, anti, n) == !extra);
    }
}

TEST_CASE("the degree-4 anticommutator identity of LS_A2") {
  const auto& anti = derived_signature(DerivedOp::anticommutator);
  const std::string fifteen =
      "{a,{b,{c,d}}}+{a,{c,{b,d}}}+{a,{d,{b,c}}}+{b,{a,{c,d}}}+{c,{a,{b,d}}}+{d,{a,{b,c}}}+{b,{c,{a,d}}}"
      "+{b,{d,{a,c}}}+{c,{b,{a,d}}}+{d,{b,{a,c}}}+{c,{d,{a,b}}}+{d,{c,{a,b}}}-{{a,d},{b,c}}-{{a,c},{b,d}}"
      "-{{a,b},{c,d}} = 0";
  MultilinearPoly listed = poly(fifteen, anti);
  CHECK(listed.size() == 15);
  // Summation form: innermost pair increasing over all orderings, minus the
  // pairings with i1 < i2, i3 < i4, i2 < i4.
  MultilinearPoly summed;
  std::vector<int> idx{0, 1, 2, 3};
  auto L = [](int i) { return Monomial::leaf(i); };
  auto P = [](const Monomial& a, const Monomial& b) { return Monomial::product(0, a, b); };
  do {
    if (idx[2] < idx[3]) summed.add_canonical(P(L(idx[0]), P(L(idx[1]), P(L(idx[2]), L(idx[3])))), 1, anti);
    if (idx[0] < idx[1] && idx[2] < idx[3] && idx[1] < idx[3])
      summed.add_canonical(P(P(L(idx[0]), L(idx[1])), P(L(idx[2]), L(idx[3]))), -1, anti);
  } while (std::next_permutation(idx.begin(), idx.end()));
  CHECK(summed == listed);
  RelationSpace a = derived_identities(VarietyLibrary::global().get("ls_a2"), DerivedOp::anticommutator, 4);
  MonomialTable t(anti, 4);
  CHECK(a.contains(t.to_vector(listed)));
  CHECK(is_identity(VarietyLibrary::global().get("jordan_a2"), listed));
}

TEST_CASE("derived identities outside the validated range") {
  const VarietyLibrary& lib = VarietyLibrary::global();
  CHECK_THROWS_AS(derived_identities(lib.get("ls"), DerivedOp::commutator, 2), std::out_of_range);
  CHECK_THROWS_AS(derived_identities(lib.get("ls"), DerivedOp::commutator, 5), std::out_of_range);
  CHECK_THROWS_AS(derived_identities(lib.get("lie"), DerivedOp::commutator, 3), SignatureMismatch);
  CHECK(parse_derived_op("+") == DerivedOp::anticommutator);
  CHECK(parse_derived_op("minus") == DerivedOp::commutator);
  CHECK_THROWS(parse_derived_op("times"));
}
