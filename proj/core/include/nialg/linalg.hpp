#pragma once

// Sparse linear algebra over the rationals and over prime fields.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "nialg/field.hpp"
#include "nialg/rational.hpp"

namespace nialg {

template <class V>
using SparseVec = std::vector<std::pair<std::uint32_t, V>>;
using RatVec = SparseVec<Rational>;

struct SparseMatrix {
  std::vector<RatVec> rows;
  std::uint32_t ncols = 0;
};

inline constexpr std::int32_t kNoPivot = -1;

// Incremental row echelon form. Rows are stored with leading coefficient 1
// and each stored row is reduced against the pivots present when it arrived.
template <class F>
class Echelon {
 public:
  using V = typename F::value_type;
  using Row = SparseVec<V>;

  Echelon(F field, std::uint32_t ncols)
      : field_(std::move(field)), ncols_(ncols), pivot_row_(ncols, kNoPivot), acc_(ncols, field_.zero()) {}

  const F& field() const { return field_; }
  std::uint32_t ncols() const { return ncols_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<Row>& rows() const { return rows_; }
  const std::vector<std::uint32_t>& pivots() const { return pivots_; }
  std::int32_t pivot_row(std::uint32_t col) const { return pivot_row_[col]; }
  bool is_pivot(std::uint32_t col) const { return pivot_row_[col] != kNoPivot; }

  // Returns true when the row was independent of the stored rows.
  bool insert(const Row& row) {
    Row rem = remainder(row);
    if (rem.empty()) return false;
    V inv = field_.inv(rem.front().second);
    for (auto& e : rem) e.second = field_.mul(e.second, inv);
    pivot_row_[rem.front().first] = static_cast<std::int32_t>(rows_.size());
    pivots_.push_back(rem.front().first);
    rows_.push_back(std::move(rem));
    reduced_ = false;
    return true;
  }

  // Reduction of `row` against every stored pivot.
  Row remainder(const Row& row) const {
    if (row.empty()) return {};
    std::uint32_t lo = ncols_;
    for (const auto& [c, v] : row) {
      acc_[c] = field_.add(acc_[c], v);
      lo = std::min(lo, c);
    }
    Row out;
    for (std::uint32_t c = lo; c < ncols_; ++c) {
      if (field_.is_zero(acc_[c])) continue;
      std::int32_t r = pivot_row_[c];
      if (r == kNoPivot) {
        out.emplace_back(c, acc_[c]);
        acc_[c] = field_.zero();
        continue;
      }
      V f = acc_[c];
      for (const auto& [col, val] : rows_[static_cast<std::size_t>(r)])
        field_.sub_mul(acc_[col], f, val);
    }
    return out;
  }

  bool contains(const Row& row) const { return remainder(row).empty(); }

  // Clears every pivot column outside its own row.
  void reduce_fully() {
    if (reduced_) return;
    std::vector<std::size_t> order(rows_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pivots_[a] > pivots_[b]; });
    for (std::size_t idx : order) {
      Row& row = rows_[idx];
      std::uint32_t own = pivots_[idx];
      bool touches = false;
      for (const auto& [c, v] : row)
        if (c != own && pivot_row_[c] != kNoPivot) touches = true;
      if (!touches) continue;
      for (const auto& [c, v] : row) acc_[c] = v;
      Row out;
      for (std::uint32_t c = own; c < ncols_; ++c) {
        if (field_.is_zero(acc_[c])) continue;
        std::int32_t r = pivot_row_[c];
        if (c == own || r == kNoPivot) {
          out.emplace_back(c, acc_[c]);
          acc_[c] = field_.zero();
          continue;
        }
        V f = acc_[c];
        for (const auto& [col, val] : rows_[static_cast<std::size_t>(r)])
          field_.sub_mul(acc_[col], f, val);
      }
      row = std::move(out);
    }
    reduced_ = true;
  }

  // Rows ordered by pivot column; call reduce_fully() first for RREF.
  std::vector<Row> sorted_rows() const {
    std::vector<std::size_t> order(rows_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pivots_[a] < pivots_[b]; });
    std::vector<Row> out;
    out.reserve(order.size());
    for (std::size_t i : order) out.push_back(rows_[i]);
    return out;
  }

 private:
  F field_;
  std::uint32_t ncols_;
  std::vector<Row> rows_;
  std::vector<std::uint32_t> pivots_;
  std::vector<std::int32_t> pivot_row_;
  mutable std::vector<V> acc_;
  bool reduced_ = true;
};

// Reduced row-echelon basis of a subspace of Q^ncols. Pivot columns are
// strictly increasing, each pivot is 1 and the only nonzero of its column.
class RelationSpace {
 public:
  RelationSpace() = default;
  RelationSpace(std::uint32_t ncols, std::vector<RatVec> rref_rows, std::string ambient = {});

  std::uint32_t ncols() const { return ncols_; }
  std::size_t rank() const { return rows_.size(); }
  std::size_t codimension() const { return ncols_ - rows_.size(); }
  const std::vector<RatVec>& rows() const { return rows_; }
  const std::vector<std::uint32_t>& pivots() const { return pivots_; }
  const std::string& ambient() const { return ambient_; }
  void set_ambient(std::string ambient) { ambient_ = std::move(ambient); }

  RatVec remainder(const RatVec& v) const;
  bool contains(const RatVec& v) const { return remainder(v).empty(); }
  bool contains(const RelationSpace& other) const;

 private:
  std::uint32_t ncols_ = 0;
  std::vector<RatVec> rows_;
  std::vector<std::uint32_t> pivots_;
  std::vector<std::int32_t> pivot_row_;
  std::string ambient_;
};

enum class RrefMode { exact, modular_certified };

struct RrefStats {
  std::vector<std::uint32_t> primes_used;
  bool fell_back_to_exact = false;
};

// Pivot rule: leftmost column, ties between rows broken by fewest nonzeros.
RelationSpace rref(const SparseMatrix& m, RrefMode mode = RrefMode::exact, RrefStats* stats = nullptr);
std::size_t rank(const SparseMatrix& m, RrefMode mode = RrefMode::exact);

// Basis of { v : M v^T = 0 } as row vectors.
RelationSpace nullspace(const SparseMatrix& m);
RelationSpace nullspace(const RelationSpace& space);

// Throws std::invalid_argument on an ambient mismatch.
bool same_span(const RelationSpace& a, const RelationSpace& b);

// Rank of the matrix modulo `p` after clearing row denominators.
std::size_t modular_rank(const SparseMatrix& m, std::uint32_t p, std::vector<std::size_t>* pivot_rows = nullptr);

// Multiplies by the lcm of denominators and divides by the content.
RatVec primitive(const RatVec& v);

}  // namespace nialg
