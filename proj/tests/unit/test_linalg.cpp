#include <doctest.h>

#include <random>

#include "nialg/linalg.hpp"

using namespace nialg;

namespace {

SparseMatrix random_matrix(std::mt19937& rng, std::uint32_t rows, std::uint32_t cols, int density_pct, int rank_cap) {
  // Rows are combinations of rank_cap random generators, so the rank is known to be at most rank_cap.
  std::vector<RatVec> gens;
  for (int g = 0; g < rank_cap; ++g) {
    RatVec v;
    for (std::uint32_t c = 0; c < cols; ++c)
      if (static_cast<int>(rng() % 100) < density_pct) {
        Rational x(static_cast<long>(rng() % 11) - 5, 1 + rng() % 4);
        x.canonicalize();
        if (x != 0) v.emplace_back(c, x);
      }
    gens.push_back(v);
  }
  SparseMatrix m;
  m.ncols = cols;
  for (std::uint32_t r = 0; r < rows; ++r) {
    std::vector<Rational> dense(cols);
    for (const auto& g : gens) {
      Rational f(static_cast<long>(rng() % 5) - 2);
      for (const auto& [c, x] : g) dense[c] += f * x;
    }
    RatVec v;
    for (std::uint32_t c = 0; c < cols; ++c)
      if (dense[c] != 0) v.emplace_back(c, dense[c]);
    m.rows.push_back(v);
  }
  return m;
}

}  // namespace

TEST_CASE("rref output is reduced row-echelon") {
  std::mt19937 rng(11);
  for (int t = 0; t < 20; ++t) {
    SparseMatrix m = random_matrix(rng, 12, 15, 40, 6);
    RelationSpace s = rref(m);
    for (std::size_t i = 0; i < s.rank(); ++i) {
      const auto& row = s.rows()[i];
      REQUIRE_FALSE(row.empty());
      CHECK(row.front().first == s.pivots()[i]);
      CHECK(row.front().second == 1);
      if (i) CHECK(s.pivots()[i] > s.pivots()[i - 1]);
      for (std::size_t j = 0; j < s.rank(); ++j)
        if (j != i)
          for (const auto& [c, x] : s.rows()[j]) CHECK(c != s.pivots()[i]);
    }
    for (const auto& r : m.rows) CHECK(s.contains(r));
  }
}

TEST_CASE("modular, certified and exact ranks agree") {
  std::mt19937 rng(5);
  for (int t = 0; t < 30; ++t) {
    SparseMatrix m = random_matrix(rng, 10 + rng() % 10, 8 + rng() % 12, 30 + static_cast<int>(rng() % 50), 1 + static_cast<int>(rng() % 8));
    std::size_t exact = rank(m, RrefMode::exact);
    CHECK(rank(m, RrefMode::modular_certified) == exact);
    CHECK(modular_rank(m, kPrimes[0]) == exact);
    CHECK(modular_rank(m, kPrimes[1]) == exact);
  }
}

TEST_CASE("nullspace is orthogonal and complementary") {
  std::mt19937 rng(3);
  for (int t = 0; t < 20; ++t) {
    SparseMatrix m = random_matrix(rng, 7, 12, 50, 5);
    RelationSpace n = nullspace(m);
    CHECK(n.rank() + rank(m) == m.ncols);
    for (const auto& v : n.rows())
      for (const auto& r : m.rows) {
        Rational dot = 0;
        for (const auto& [c, x] : r)
          for (const auto& [d, y] : v)
            if (c == d) dot += x * y;
        CHECK(dot == 0);
      }
    // The annihilator of the annihilator is the row space.
    CHECK(same_span(nullspace(n), rref(m)));
  }
}

TEST_CASE("same_span guards the ambient") {
  SparseMatrix m;
  m.ncols = 3;
  m.rows = {{{0, Rational(1)}, {2, Rational(1)}}};
  RelationSpace a = rref(m), b = rref(m);
  a.set_ambient("x/3");
  b.set_ambient("y/3");
  CHECK_THROWS_AS(same_span(a, b), std::invalid_argument);
  b.set_ambient("x/3");
  CHECK(same_span(a, b));
  SparseMatrix other;
  other.ncols = 3;
  other.rows = {{{1, Rational(1)}}};
  RelationSpace c = rref(other);
  c.set_ambient("x/3");
  CHECK_FALSE(same_span(a, c));
}

TEST_CASE("a fixed example: rank 2 with a dependent row") {
  SparseMatrix m;
  m.ncols = 12;
  m.rows = {{{0, Rational(1)}, {3, Rational(-1)}, {7, Rational(2)}},
            {{1, Rational(1)}, {3, Rational(1)}},
            {{0, Rational(2)}, {1, Rational(1)}, {3, Rational(-1)}, {7, Rational(4)}}};
  RelationSpace s = rref(m);
  CHECK(s.rank() == 2);
  CHECK(s.pivots() == std::vector<std::uint32_t>{0, 1});
  CHECK(s.codimension() == 10);
}

TEST_CASE("certification primes are prime") {
  for (std::uint32_t p : kPrimes) {
    CAPTURE(p);
    mpz_class z(p);
    CHECK(mpz_probab_prime_p(z.get_mpz_t(), 50) > 0);
    CHECK(p < (1u << 31));
  }
}

TEST_CASE("primitive clears denominators and content") {
  RatVec v{{0, Rational(2, 3)}, {4, Rational(-4, 9)}};
  RatVec p = primitive(v);
  CHECK(p[0].second == 3);
  CHECK(p[1].second == -2);
}

TEST_CASE("prime field arithmetic") {
  PrimeField f(kPrimes[2]);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 1000; ++t) {
    std::uint32_t a = static_cast<std::uint32_t>(rng() % f.p), b = static_cast<std::uint32_t>(rng() % f.p);
    CHECK(f.mul(a, b) == static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % f.p));
    if (a) CHECK(f.mul(a, f.inv(a)) == 1);
    CHECK(f.add(f.sub(a, b), b) == a);
  }
  CHECK(f.from(Rational(1, 2)) == f.inv(2));
}
