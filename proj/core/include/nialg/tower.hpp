#pragma once

// Degree-by-degree quotient of the free magma by a T-ideal.
//
// Level k holds the product space P_k, spanned by symbols (op, S, i, j)
// where S is the label set of the left factor (containing the smallest label
// when op has a symmetry) and i, j index bases of the quotients Q_|S| and
// Q_|T|. Q_k is P_k modulo the substitution instances g(u_1, ..., u_m) of the
// generators, with the u_t running over quotient bases of complementary
// label blocks. Working in P_k instead of the full monomial space removes
// every consequence that is a product of lower-degree ones.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "nialg/linalg.hpp"
#include "nialg/magma.hpp"

namespace nialg {

// Positions of the bits of `sub` inside `frame`, packed to the low end.
inline std::uint32_t pack_bits(std::uint32_t sub, std::uint32_t frame) {
  std::uint32_t out = 0;
  int pos = 0;
  while (frame) {
    std::uint32_t low = frame & (~frame + 1);
    if (sub & low) out |= 1u << pos;
    ++pos;
    frame &= frame - 1;
  }
  return out;
}

// Inverse of pack_bits: spreads the low bits of `packed` over `frame`.
inline std::uint32_t spread_bits(std::uint32_t packed, std::uint32_t frame) {
  std::uint32_t out = 0;
  while (frame && packed) {
    std::uint32_t low = frame & (~frame + 1);
    if (packed & 1u) out |= low;
    packed >>= 1;
    frame &= frame - 1;
  }
  return out;
}

template <class V>
void combine_terms(SparseVec<V>& v, const auto& field) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t w = 0;
  for (std::size_t r = 0; r < v.size();) {
    std::uint32_t c = v[r].first;
    V acc = v[r].second;
    for (++r; r < v.size() && v[r].first == c; ++r) acc = field.add(acc, v[r].second);
    if (!field.is_zero(acc)) v[w++] = {c, acc};
  }
  v.resize(w);
}

template <class F>
class QuotientTower {
 public:
  using V = typename F::value_type;
  using Vec = SparseVec<V>;

  struct ColumnInfo {
    std::uint8_t op;
    std::uint32_t left_mask;  // packed within the level's labels
    std::uint32_t i, j;
  };

  QuotientTower(OperationSignature sig, std::vector<MultilinearPoly> generators, F field = F{})
      : sig_(std::move(sig)), field_(std::move(field)) {
    for (auto& g : generators) {
      if (g.is_zero()) continue;
      int d = g.degree();
      if (d < 2) throw std::invalid_argument("generators must have degree at least 2");
      if (!g.is_multilinear()) throw std::invalid_argument("generators must be multilinear");
      Generator gen;
      gen.degree = d;
      for (const auto& [m, c] : g.terms()) {
        if (m.label_mask() != (1u << d) - 1) throw std::invalid_argument("generator labels must be 0..d-1");
        for (std::uint8_t t : m.tokens())
          if ((t & Monomial::kOpTag) && (t & 0x7f) >= sig_.size())
            throw std::invalid_argument("generator uses an operation outside the signature");
        gen.terms.emplace_back(m, field_.from(c));
      }
      max_gen_degree_ = std::max(max_gen_degree_, d);
      gens_.push_back(std::move(gen));
    }
    levels_.push_back(nullptr);  // degree 0 unused
    auto one = std::make_unique<Level>(field_, 1);
    one->ncols = 1;
    one->basis_cols = {0};
    one->basis_index = {0};
    one->img = {Vec{{0, field_.one()}}};
    one->columns = {ColumnInfo{0, 1, 0, 0}};
    one->eliminated = true;
    one->finalized = true;
    levels_.push_back(std::move(one));
  }

  const OperationSignature& signature() const { return sig_; }
  const F& field() const { return field_; }
  int max_generator_degree() const { return max_gen_degree_; }
  int built() const { return static_cast<int>(levels_.size()) - 1; }

  // Builds levels up to n; every level below n is fully reduced.
  void build(int n) {
    if (n > kMaxDegree) throw std::invalid_argument("degree exceeds the supported maximum");
    for (int k = 2; k <= n; ++k) {
      prepare(k);
      Level& L = level(k);
      if (!L.eliminated) eliminate(k);
      if (k < n) finalize(k);
    }
  }

  // Lays out the columns of P_k; all lower levels get fully reduced.
  void prepare(int k) {
    if (k > kMaxDegree) throw std::invalid_argument("degree exceeds the supported maximum");
    while (built() < k) {
      int next = built() + 1;
      for (int j = 2; j < next; ++j) {
        if (!level(j).eliminated) eliminate(j);
        finalize(j);
      }
      layout(next);
    }
    for (int j = 2; j < k; ++j) {
      if (!level(j).eliminated) eliminate(j);
      finalize(j);
    }
  }

  // The substitution rows of level k in P_k coordinates (level prepared).
  std::vector<Vec> level_rows(int k) const {
    std::vector<Vec> rows;
    for (const Generator& g : gens_)
      if (g.degree <= k) generate_rows(g, k, rows);
    return rows;
  }

  // Eliminates level k using the given rows in place of level_rows(k).
  void eliminate_rows(int k, const std::vector<Vec>& rows) {
    prepare(k);
    Level& cur = level(k);
    if (cur.eliminated) throw std::logic_error("level already eliminated");
    for (std::size_t i : row_order(rows)) {
      cur.ech.insert(rows[i]);
      if (cur.ech.rank() == cur.ncols) break;
    }
    cur.eliminated = true;
  }

  bool eliminated(int k) const { return k <= built() && level(k).eliminated; }

  // Full reduction of level k; required for normal forms in degree k.
  void finalize(int k) {
    if (k > built() || !level(k).eliminated) build(k);
    Level& L = level(k);
    if (L.finalized) return;
    L.ech.reduce_fully();
    L.basis_index.assign(L.ncols, kNoIndex);
    L.basis_cols.clear();
    for (std::uint32_t c = 0; c < L.ncols; ++c)
      if (!L.ech.is_pivot(c)) {
        L.basis_index[c] = static_cast<std::uint32_t>(L.basis_cols.size());
        L.basis_cols.push_back(c);
      }
    L.img.assign(L.ncols, {});
    for (std::uint32_t c : L.basis_cols) L.img[c] = {{L.basis_index[c], field_.one()}};
    for (const auto& row : L.ech.rows()) {
      Vec& out = L.img[row.front().first];
      for (std::size_t t = 1; t < row.size(); ++t)
        out.emplace_back(L.basis_index[row[t].first], field_.neg(row[t].second));
    }
    L.finalized = true;
  }

  std::size_t columns(int k) const { return level(k).ncols; }
  std::size_t rank(int k) const { return level(k).ech.rank(); }
  std::size_t dimension(int k) const { return level(k).ncols - level(k).ech.rank(); }
  bool finalized(int k) const { return k <= built() && level(k).finalized; }
  const std::vector<ColumnInfo>& column_info(int k) const { return level(k).columns; }
  const Echelon<F>& echelon(int k) const { return level(k).ech; }

  // Coordinates in P_k of a homogeneous multilinear polynomial of degree k.
  Vec lift(const MultilinearPoly& p) const {
    Vec out;
    for (const auto& [m, c] : p.terms()) {
      Vec v = lift_monomial(m);
      V fc = field_.from(c);
      for (auto& [col, x] : v) out.emplace_back(col, field_.mul(fc, x));
    }
    combine_terms(out, field_);
    return out;
  }

  Vec lift_monomial(const Monomial& m) const {
    if (m.is_leaf()) return {{0, field_.one()}};
    auto [mask, v] = eval(m.tokens(), 0, false);
    (void)mask;
    return v;
  }

  // True when p lies in the ideal; levels up to deg(p) must be built.
  bool contains(const MultilinearPoly& p) const {
    if (p.is_zero()) return true;
    const Level& L = level(p.degree());
    if (!L.eliminated) throw std::logic_error("level not eliminated");
    return L.ech.contains(lift(p));
  }

  // Coordinates in Q_k over the basis; level k must be finalized.
  Vec normal_form(const MultilinearPoly& p) const {
    if (p.is_zero()) return {};
    const Level& L = level(p.degree());
    if (!L.finalized) throw std::logic_error("level not finalized");
    Vec out;
    for (const auto& [c, x] : lift(p))
      for (const auto& [b, y] : L.img[c]) out.emplace_back(b, field_.mul(x, y));
    combine_terms(out, field_);
    return out;
  }

  Vec normal_form(const Monomial& m) const {
    if (m.is_leaf()) return {{0, field_.one()}};
    const Level& L = level(m.degree());
    if (!L.finalized) throw std::logic_error("level not finalized");
    auto [mask, v] = eval(m.tokens(), 0, true);
    (void)mask;
    return v;
  }

  // A monomial (with sign) representing basis element b of Q_k.
  MultilinearPoly basis_element(int k, std::uint32_t b) const {
    const Level& L = level(k);
    if (!L.finalized) throw std::logic_error("level not finalized");
    auto [m, sign] = represent(k, L.basis_cols.at(b), (1u << k) - 1);
    MultilinearPoly out;
    out.add_canonical(m, Rational(sign), sig_);
    return out;
  }

  // Monomial whose class in P_k is column c (up to the returned sign).
  std::pair<Monomial, int> column_monomial(int k, std::uint32_t c) const {
    return represent(k, c, (1u << k) - 1);
  }

 private:
  static constexpr std::uint32_t kNoBlock = 0xffffffffu;
  static constexpr std::uint32_t kNoIndex = 0xffffffffu;

  struct Generator {
    int degree = 0;
    std::vector<std::pair<Monomial, V>> terms;
  };

  struct Level {
    Level(const F& f, std::uint32_t nc) : ech(f, nc) {}
    std::uint32_t ncols = 0;
    std::vector<std::uint32_t> block_offset;  // [op << k | mask]
    std::vector<ColumnInfo> columns;
    Echelon<F> ech;
    std::vector<std::uint32_t> basis_cols;
    std::vector<std::uint32_t> basis_index;
    std::vector<Vec> img;
    bool eliminated = false;
    bool finalized = false;
  };

  Level& level(int k) {
    if (k < 1 || k > built()) throw std::out_of_range("degree " + std::to_string(k) + " not built");
    return *levels_[static_cast<std::size_t>(k)];
  }
  const Level& level(int k) const {
    if (k < 1 || k > built()) throw std::out_of_range("degree " + std::to_string(k) + " not built");
    return *levels_[static_cast<std::size_t>(k)];
  }

  std::size_t qdim(int k) const { return level(k).basis_cols.size(); }

  // Product of classes a (labels A) and b (labels B). With `project` the
  // result is in Q_{|A|+|B|} coordinates, otherwise in P coordinates.
  Vec multiply(int op, std::uint32_t A, const Vec& a, std::uint32_t B, const Vec& b, bool project) const {
    if (a.empty() || b.empty()) return {};
    Symmetry s = sig_.op(static_cast<std::size_t>(op)).symmetry;
    const Vec* pa = &a;
    const Vec* pb = &b;
    bool negate = false;
    std::uint32_t U = A | B;
    if (s != Symmetry::none && !(A & U & (~U + 1))) {
      std::swap(A, B);
      std::swap(pa, pb);
      negate = s == Symmetry::antisymmetric;
    }
    int k = std::popcount(U);
    const Level& L = level(k);
    std::uint32_t packed = pack_bits(A, U);
    std::uint32_t base = L.block_offset[(static_cast<std::uint32_t>(op) << k) | packed];
    std::uint32_t dT = static_cast<std::uint32_t>(qdim(std::popcount(B)));
    Vec out;
    out.reserve(pa->size() * pb->size());
    for (const auto& [i, x] : *pa)
      for (const auto& [j, y] : *pb) {
        V v = field_.mul(x, y);
        out.emplace_back(base + i * dT + j, negate ? field_.neg(v) : v);
      }
    if (!project) return out;  // already sorted and distinct
    Vec q;
    for (const auto& [c, x] : out)
      for (const auto& [idx, y] : L.img[c]) q.emplace_back(idx, field_.mul(x, y));
    combine_terms(q, field_);
    return q;
  }

  // Evaluates the subtree at `pos` of a monomial's tokens with actual labels.
  std::pair<std::uint32_t, Vec> eval(std::span<const std::uint8_t> tok, std::size_t pos, bool project) const {
    std::uint8_t t = tok[pos];
    if (!(t & Monomial::kOpTag)) return {1u << t, Vec{{0, field_.one()}}};
    std::size_t lpos = pos + 1;
    std::size_t rpos = lpos + subtree_length(tok, lpos);
    auto [A, a] = eval(tok, lpos, true);
    auto [B, b] = eval(tok, rpos, true);
    return {A | B, multiply(t & 0x7f, A, a, B, b, project)};
  }

  // Evaluates a generator term with leaf t replaced by block (masks[t], unit[t]).
  std::pair<std::uint32_t, Vec> eval_sub(std::span<const std::uint8_t> tok, std::size_t pos,
                                         const std::uint32_t* masks, const std::uint32_t* units,
                                         bool project) const {
    std::uint8_t t = tok[pos];
    if (!(t & Monomial::kOpTag)) return {masks[t], Vec{{units[t], field_.one()}}};
    std::size_t lpos = pos + 1;
    std::size_t rpos = lpos + subtree_length(tok, lpos);
    auto [A, a] = eval_sub(tok, lpos, masks, units, true);
    auto [B, b] = eval_sub(tok, rpos, masks, units, true);
    return {A | B, multiply(t & 0x7f, A, a, B, b, project)};
  }

  std::pair<Monomial, int> represent(int k, std::uint32_t c, std::uint32_t frame) const {
    if (k == 1) return {Monomial::leaf(std::countr_zero(frame)), 1};
    const Level& L = level(k);
    const ColumnInfo& ci = L.columns[c];
    std::uint32_t S = spread_bits(ci.left_mask, frame);
    std::uint32_t T = frame & ~S;
    int ks = std::popcount(S), kt = std::popcount(T);
    auto [lm, ls] = represent(ks, level(ks).basis_cols[ci.i], S);
    auto [rm, rs] = represent(kt, level(kt).basis_cols[ci.j], T);
    return {Monomial::product(ci.op, lm, rm), ls * rs};
  }

  void layout(int k) {
    const std::size_t nops = sig_.size();
    auto L = std::make_unique<Level>(field_, 0);
    L->block_offset.assign(nops << k, kNoBlock);
    std::uint32_t full = (1u << k) - 1;
    std::uint32_t nc = 0;
    for (std::size_t op = 0; op < nops; ++op) {
      bool sym = sig_.op(op).symmetry != Symmetry::none;
      for (std::uint32_t S = 1; S < full; ++S) {
        if (sym && !(S & 1u)) continue;
        std::uint32_t di = static_cast<std::uint32_t>(qdim(std::popcount(S)));
        std::uint32_t dj = static_cast<std::uint32_t>(qdim(k - std::popcount(S)));
        L->block_offset[(op << k) | S] = nc;
        for (std::uint32_t i = 0; i < di; ++i)
          for (std::uint32_t j = 0; j < dj; ++j) L->columns.push_back({static_cast<std::uint8_t>(op), S, i, j});
        nc += di * dj;
      }
    }
    L->ncols = nc;
    L->ech = Echelon<F>(field_, nc);
    levels_.push_back(std::move(L));
  }

  void eliminate(int k) {
    Level& cur = level(k);
    std::vector<Vec> rows = level_rows(k);
    for (std::size_t i : row_order(rows)) {
      cur.ech.insert(rows[i]);
      Vec().swap(rows[i]);
      if (cur.ech.rank() == cur.ncols) break;
    }
    cur.eliminated = true;
  }

 public:
  // Nonempty rows, leftmost leading column first, then fewest nonzeros.
  template <class Row>
  static std::vector<std::size_t> row_order(const std::vector<Row>& rows) {
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (!rows[i].empty()) order.push_back(i);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (rows[a].front().first != rows[b].front().first) return rows[a].front().first < rows[b].front().first;
      return rows[a].size() < rows[b].size();
    });
    return order;
  }

 private:
  // Rows g(u_1, ..., u_m) over all surjections of the k labels onto m blocks.
  void generate_rows(const Generator& g, int k, std::vector<Vec>& rows) const {
    const int m = g.degree;
    std::vector<int> assign(static_cast<std::size_t>(k), 0);
    std::uint32_t masks[kMaxDegree];
    std::uint32_t units[kMaxDegree];
    std::uint32_t dims[kMaxDegree];
    while (true) {
      std::fill(masks, masks + m, 0u);
      for (int l = 0; l < k; ++l) masks[assign[static_cast<std::size_t>(l)]] |= 1u << l;
      bool surjective = true;
      for (int t = 0; t < m; ++t)
        if (!masks[t]) surjective = false;
      if (surjective) {
        bool any_zero = false;
        for (int t = 0; t < m; ++t) {
          dims[t] = static_cast<std::uint32_t>(qdim(std::popcount(masks[t])));
          if (dims[t] == 0) any_zero = true;
          units[t] = 0;
        }
        if (!any_zero) {
          while (true) {
            Vec row;
            for (const auto& [mono, c] : g.terms) {
              auto [mask, v] = eval_sub(mono.tokens(), 0, masks, units, false);
              for (auto& [col, x] : v) row.emplace_back(col, field_.mul(c, x));
            }
            combine_terms(row, field_);
            if (!row.empty()) rows.push_back(std::move(row));
            int t = 0;
            while (t < m && ++units[t] == dims[t]) units[t++] = 0;
            if (t == m) break;
          }
        }
      }
      int l = 0;
      while (l < k && ++assign[static_cast<std::size_t>(l)] == m) assign[static_cast<std::size_t>(l++)] = 0;
      if (l == k) break;
    }
  }

  OperationSignature sig_;
  F field_;
  std::vector<Generator> gens_;
  int max_gen_degree_ = 0;
  std::vector<std::unique_ptr<Level>> levels_;
};

}  // namespace nialg
