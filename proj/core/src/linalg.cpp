#include "nialg/linalg.hpp"

#include <map>
#include <numeric>
#include <stdexcept>

namespace nialg {

RelationSpace::RelationSpace(std::uint32_t ncols, std::vector<RatVec> rref_rows, std::string ambient)
    : ncols_(ncols), rows_(std::move(rref_rows)), pivot_row_(ncols, kNoPivot), ambient_(std::move(ambient)) {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const RatVec& r = rows_[i];
    if (r.empty() || r.front().second != 1) throw std::invalid_argument("row is not normalized");
    std::uint32_t p = r.front().first;
    if (p >= ncols_) throw std::invalid_argument("column out of range");
    if (!pivots_.empty() && p <= pivots_.back()) throw std::invalid_argument("pivots not increasing");
    pivots_.push_back(p);
    pivot_row_[p] = static_cast<std::int32_t>(i);
  }
}

RatVec RelationSpace::remainder(const RatVec& v) const {
  std::map<std::uint32_t, Rational> acc;
  for (const auto& [c, x] : v) {
    if (c >= ncols_) throw std::invalid_argument("column out of range");
    acc[c] += x;
  }
  RatVec out;
  while (!acc.empty()) {
    auto it = acc.begin();
    auto [c, x] = *it;
    acc.erase(it);
    if (sgn(x) == 0) continue;
    std::int32_t r = pivot_row_[c];
    if (r == kNoPivot) {
      out.emplace_back(c, x);
      continue;
    }
    const RatVec& row = rows_[static_cast<std::size_t>(r)];
    for (std::size_t k = 1; k < row.size(); ++k) {
      Rational& slot = acc[row[k].first];
      slot -= x * row[k].second;
    }
  }
  return out;
}

bool RelationSpace::contains(const RelationSpace& other) const {
  if (other.ncols_ != ncols_) throw std::invalid_argument("ambient mismatch");
  for (const auto& r : other.rows_)
    if (!contains(r)) return false;
  return true;
}

RatVec primitive(const RatVec& v) {
  mpz_class l = 1, g = 0;
  for (const auto& [c, x] : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  RatVec out;
  out.reserve(v.size());
  for (const auto& [c, x] : v) {
    if (sgn(x) == 0) continue;
    Rational y = x * l;
    out.emplace_back(c, y);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), y.get_num_mpz_t());
  }
  if (g > 1)
    for (auto& e : out) e.second /= g;
  return out;
}

namespace {

RatVec sorted_clean(const RatVec& v, std::uint32_t ncols) {
  std::map<std::uint32_t, Rational> acc;
  for (const auto& [c, x] : v) {
    if (c >= ncols) throw std::invalid_argument("column out of range");
    acc[c] += x;
  }
  RatVec out;
  for (auto& [c, x] : acc)
    if (sgn(x) != 0) out.emplace_back(c, x);
  return out;
}

// Leftmost column first, then fewest nonzeros.
std::vector<std::size_t> insertion_order(const std::vector<RatVec>& rows) {
  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const RatVec& x = rows[a];
    const RatVec& y = rows[b];
    if (x.empty() != y.empty()) return y.empty();
    if (x.empty()) return false;
    if (x.front().first != y.front().first) return x.front().first < y.front().first;
    return x.size() < y.size();
  });
  return order;
}

RelationSpace exact_rref(std::uint32_t ncols, const std::vector<RatVec>& rows) {
  Echelon<RationalField> ech(RationalField{}, ncols);
  for (std::size_t i : insertion_order(rows))
    if (!rows[i].empty()) ech.insert(rows[i]);
  ech.reduce_fully();
  return RelationSpace(ncols, ech.sorted_rows());
}

std::size_t rank_mod(const std::vector<RatVec>& prim, std::uint32_t ncols, std::uint32_t p,
                     std::vector<std::size_t>* pivot_rows) {
  PrimeField f{p};
  Echelon<PrimeField> ech(f, ncols);
  for (std::size_t i : insertion_order(prim)) {
    SparseVec<std::uint32_t> row;
    for (const auto& [c, x] : prim[i]) {
      std::uint32_t v = f.from(x);
      if (v != 0) row.emplace_back(c, v);
    }
    if (ech.insert(row) && pivot_rows) pivot_rows->push_back(i);
  }
  return ech.rank();
}

}  // namespace

std::size_t modular_rank(const SparseMatrix& m, std::uint32_t p, std::vector<std::size_t>* pivot_rows) {
  std::vector<RatVec> prim;
  prim.reserve(m.rows.size());
  for (const auto& r : m.rows) prim.push_back(primitive(sorted_clean(r, m.ncols)));
  return rank_mod(prim, m.ncols, p, pivot_rows);
}

RelationSpace rref(const SparseMatrix& m, RrefMode mode, RrefStats* stats) {
  std::vector<RatVec> rows;
  rows.reserve(m.rows.size());
  for (const auto& r : m.rows) rows.push_back(sorted_clean(r, m.ncols));
  if (mode == RrefMode::exact) return exact_rref(m.ncols, rows);

  std::vector<RatVec> prim;
  prim.reserve(rows.size());
  for (const auto& r : rows) prim.push_back(primitive(r));
  constexpr int kMaxAttempts = 3;
  std::size_t next = 0;
  for (int attempt = 0; attempt < kMaxAttempts && next + 1 < kPrimes.size(); ++attempt) {
    std::vector<std::size_t> piv_a, piv_b;
    std::size_t ra = 0, rb = 0;
    try {
      ra = rank_mod(prim, m.ncols, kPrimes[next], &piv_a);
      if (stats) stats->primes_used.push_back(kPrimes[next]);
      rb = rank_mod(prim, m.ncols, kPrimes[next + 1], &piv_b);
      if (stats) stats->primes_used.push_back(kPrimes[next + 1]);
    } catch (const DenominatorDivisible&) {
      next += 1;
      continue;
    }
    next += 2;
    if (ra != rb) continue;
    std::vector<RatVec> sub;
    sub.reserve(piv_a.size());
    for (std::size_t i : piv_a) sub.push_back(rows[i]);
    return exact_rref(m.ncols, sub);
  }
  if (stats) stats->fell_back_to_exact = true;
  return exact_rref(m.ncols, rows);
}

std::size_t rank(const SparseMatrix& m, RrefMode mode) {
  if (mode == RrefMode::exact) return rref(m, mode).rank();
  std::size_t a = modular_rank(m, kPrimes[0]);
  std::size_t b = modular_rank(m, kPrimes[1]);
  if (a == b) return a;
  return rref(m, RrefMode::exact).rank();
}

RelationSpace nullspace(const RelationSpace& space) {
  const std::uint32_t n = space.ncols();
  std::vector<bool> is_pivot(n, false);
  for (std::uint32_t p : space.pivots()) is_pivot[p] = true;
  // Column f of the kernel: e_f minus the pivot-row entries at f.
  std::vector<RatVec> kernel;
  std::vector<std::vector<std::pair<std::uint32_t, Rational>>> by_col(n);
  for (std::size_t i = 0; i < space.rows().size(); ++i) {
    const RatVec& r = space.rows()[i];
    for (std::size_t k = 1; k < r.size(); ++k) by_col[r[k].first].emplace_back(r.front().first, -r[k].second);
  }
  for (std::uint32_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    RatVec v = by_col[f];
    v.emplace_back(f, Rational(1));
    kernel.push_back(sorted_clean(v, n));
  }
  RelationSpace out = exact_rref(n, kernel);
  out.set_ambient(space.ambient());
  return out;
}

RelationSpace nullspace(const SparseMatrix& m) { return nullspace(rref(m, RrefMode::exact)); }

bool same_span(const RelationSpace& a, const RelationSpace& b) {
  if (a.ncols() != b.ncols() || a.ambient() != b.ambient())
    throw std::invalid_argument("same_span: ambient mismatch ('" + a.ambient() + "' vs '" + b.ambient() + "')");
  return a.rows() == b.rows();
}

}  // namespace nialg
