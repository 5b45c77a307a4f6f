#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "../oracle/oracle.hpp"
#include "nialg/nf.hpp"

using namespace nialg;

namespace {

constexpr Family kFamilies[] = {Family::a1, Family::b1, Family::a2};

oracle::Word word_of(const Monomial& m) {
  if (m.is_leaf()) return oracle::Word(1, static_cast<char>('a' + m.label()));
  return oracle::mul(word_of(m.left()), word_of(m.right()));
}

oracle::Poly to_oracle(const MultilinearPoly& p) {
  oracle::Poly out;
  for (const auto& [m, c] : p.terms()) oracle::add_to(out, word_of(m), c);
  return out;
}

oracle::Consequences& reference(Family f) {
  static std::map<Family, oracle::Consequences> cache;
  auto it = cache.find(f);
  if (it == cache.end()) {
    static const auto lib = oracle::library();
    it = cache.emplace(f, oracle::Consequences(lib.at(dual_variety_name(f)))).first;
  }
  return it->second;
}

bool on_basis(Family f, int n, const MultilinearPoly& p) {
  BasisSet b = enumerate_basis(f, n);
  std::set<Monomial> allowed(b.monomials.begin(), b.monomials.end());
  for (const auto& [m, c] : p.terms())
    if (!allowed.count(m)) return false;
  return true;
}

}  // namespace

TEST_CASE("basis sizes") {
  const std::map<Family, std::vector<std::size_t>> table = {
      {Family::a1, {1, 2, 4, 5, 5, 6, 7, 8}},
      {Family::b1, {1, 2, 4, 5, 6, 7, 8, 9}},
      {Family::a2, {1, 2, 4, 4, 5, 6, 7, 8}},
  };
  for (const auto& [f, sizes] : table)
    for (int n = 1; n <= 8; ++n) {
      CAPTURE(n);
      CHECK(basis_size(f, n) == sizes[static_cast<std::size_t>(n - 1)]);
      CHECK(enumerate_basis(f, n).monomials.size() == basis_size(f, n));
    }
  for (int n = 5; n <= 12; ++n) {
    CHECK(basis_size(Family::a1, n) == static_cast<std::size_t>(n));
    CHECK(basis_size(Family::b1, n) == static_cast<std::size_t>(n + 1));
    CHECK(basis_size(Family::a2, n) == static_cast<std::size_t>(n));
  }
}

TEST_CASE("basis monomials are multilinear and distinct") {
  for (Family f : kFamilies)
    for (int n = 1; n <= 9; ++n) {
      BasisSet b = enumerate_basis(f, n);
      std::set<Monomial> seen;
      for (const auto& m : b.monomials) {
        CHECK(m.degree() == n);
        CHECK(m.is_multilinear());
        CHECK(m.label_mask() == (1u << n) - 1);
        CHECK(seen.insert(m).second);
      }
    }
}

TEST_CASE("basis monomials are fixed points of the rewriting") {
  for (Family f : kFamilies)
    for (int n = 1; n <= 8; ++n)
      for (const auto& m : enumerate_basis(f, n).monomials) {
        CAPTURE(to_string(m, OperationSignature::single()));
        CHECK(normal_form(f, m) == MultilinearPoly(m));
        CHECK_FALSE(RewriteSystem::get(f).first_redex(m).has_value());
      }
}

TEST_CASE("every rule is an identity of the dual variety") {
  for (Family f : kFamilies) {
    oracle::Consequences& ref = reference(f);
    for (const auto& [name, p] : RewriteSystem::get(f).rule_identities(3, 5)) {
      CAPTURE(name);
      CHECK(ref.contains(to_oracle(p), p.degree()));
    }
  }
}

TEST_CASE("normal forms agree with an independent membership test") {
  std::mt19937_64 rng(7);
  for (Family f : kFamilies) {
    oracle::Consequences& ref = reference(f);
    for (int n = 2; n <= 5; ++n)
      for (int trial = 0; trial < 25; ++trial) {
        Monomial m = random_monomial(n, rng);
        MultilinearPoly r = normal_form(f, m);
        CAPTURE(to_string(m, OperationSignature::single()));
        CHECK(on_basis(f, n, r));
        MultilinearPoly diff(m);
        diff -= r;
        CHECK(ref.contains(to_oracle(diff), n));
      }
  }
}

TEST_CASE("a right comb in the A1 dual") {
  const auto sig = OperationSignature::single();
  auto L = [](int i) { return Monomial::leaf(i); };
  auto P = [](const Monomial& a, const Monomial& b) { return Monomial::product(0, a, b); };
  Monomial m = P(L(0), P(L(1), L(2)));
  MultilinearPoly r = normal_form(Family::a1, m);
  CHECK(on_basis(Family::a1, 3, r));
  MultilinearPoly diff(m);
  diff -= r;
  CHECK(reference(Family::a1).contains(to_oracle(diff), 3));
  CHECK(to_string(r, sig).size() > 0);
}

TEST_CASE("normal forms are linear") {
  std::mt19937_64 rng(11);
  for (Family f : kFamilies) {
    Monomial a = random_monomial(5, rng), b = random_monomial(5, rng);
    MultilinearPoly p(a, Rational(2, 3));
    p.add(b, -5);
    MultilinearPoly expected = Rational(2, 3) * normal_form(f, a);
    expected -= 5 * normal_form(f, b);
    CHECK(normal_form(f, p) == expected);
  }
}

TEST_CASE("random reduction orders reach the same normal form") {
  for (Family f : kFamilies) {
    UniqueNfReport r = unique_nf_check(f, 5, 60, 3);
    CHECK(r.passed);
    CHECK(r.trials == 60);
    CHECK(r.failures.empty());
  }
}

TEST_CASE("basis theorems at small degrees") {
  for (Family f : kFamilies)
    for (int n = 1; n <= 5; ++n) {
      BasisReport full = verify_basis(f, n, VerifyMode::full);
      CAPTURE(n);
      CHECK(full.passed);
      REQUIRE(full.dimension.has_value());
      CHECK(*full.dimension == basis_size(f, n));
      CHECK(reference(f).dimension(n) == basis_size(f, n));
      CHECK(verify_basis(f, n, VerifyMode::spanning_only).passed);
    }
}

TEST_CASE("step limit") {
  std::mt19937_64 rng(5);
  Monomial m = Monomial::product(0, Monomial::leaf(0),
                                 Monomial::product(0, Monomial::leaf(1),
                                                   Monomial::product(0, Monomial::leaf(2), Monomial::leaf(3))));
  RewriteOptions opts;
  opts.max_steps = 1;
  CHECK_THROWS_AS(normal_form(Family::b1, m, opts), RewriteLimit);
}

TEST_CASE("family names") {
  CHECK(parse_family("A1") == Family::a1);
  CHECK(parse_family("b1") == Family::b1);
  CHECK(to_string(Family::a2) == "a2");
  CHECK(dual_variety_name(Family::b1) == "ls_b1_dual");
  CHECK_THROWS(parse_family("c3"));
}
