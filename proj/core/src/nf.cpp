#include "nialg/nf.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <numeric>
#include <set>

#include "nialg/expr.hpp"

namespace nialg {

namespace {

constexpr std::uint8_t kNode = Monomial::kOpTag;

Monomial left_normed(const std::vector<int>& labels) {
  Monomial m = Monomial::leaf(labels.at(0));
  for (std::size_t i = 1; i < labels.size(); ++i) m = Monomial::product(0, m, Monomial::leaf(labels[i]));
  return m;
}

// Left-normed prefix order, then the given last leaf.
Monomial sorted_with_last(int n, int last) {
  std::vector<int> labels;
  for (int i = 0; i < n; ++i)
    if (i != last) labels.push_back(i);
  labels.push_back(last);
  return left_normed(labels);
}

bool is_left_normed(std::span<const std::uint8_t> t) {
  std::size_t n = (t.size() + 1) / 2;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (((t[i] & kNode) != 0) != (i + 1 < n)) return false;
  return true;
}

// x(L) with x a variable and L left-normed of degree at least 2.
bool is_outer_left_normed(std::span<const std::uint8_t> t) {
  return t.size() >= 5 && (t[0] & kNode) && !(t[1] & kNode) && is_left_normed(t.subspan(2));
}

struct Binding {
  std::size_t pos = 0;
  std::size_t len = 0;
};

bool match(std::span<const std::uint8_t> pat, std::size_t& pi, std::span<const std::uint8_t> tgt, std::size_t& ti,
           std::array<Binding, kMaxDegree>& binds) {
  std::uint8_t p = pat[pi];
  if (!(p & kNode)) {
    std::size_t len = subtree_length(tgt, ti);
    binds[p] = {ti, len};
    ++pi;
    ti += len;
    return true;
  }
  if (tgt[ti] != p) return false;
  ++pi;
  ++ti;
  return match(pat, pi, tgt, ti, binds) && match(pat, pi, tgt, ti, binds);
}

Monomial splice(std::span<const std::uint8_t> tgt, std::size_t pos, std::size_t len, const Monomial& pattern_term,
                const std::array<Binding, kMaxDegree>& binds) {
  std::vector<std::uint8_t> out(tgt.begin(), tgt.begin() + static_cast<std::ptrdiff_t>(pos));
  for (std::uint8_t t : pattern_term.tokens()) {
    if (t & kNode) {
      out.push_back(t);
    } else {
      const Binding& b = binds[t];
      out.insert(out.end(), tgt.begin() + static_cast<std::ptrdiff_t>(b.pos),
                 tgt.begin() + static_cast<std::ptrdiff_t>(b.pos + b.len));
    }
  }
  out.insert(out.end(), tgt.begin() + static_cast<std::ptrdiff_t>(pos + len), tgt.end());
  return Monomial::from_tokens(out);
}

Monomial swap_tokens(const Monomial& m, std::size_t i, std::size_t j) {
  std::vector<std::uint8_t> t(m.tokens().begin(), m.tokens().end());
  std::swap(t[i], t[j]);
  return Monomial::from_tokens(t);
}

// Token offsets of the leaves that a sorting rule may permute.
std::vector<std::size_t> sortable_leaves(const Monomial& m, const SortRule& rule) {
  auto t = m.tokens();
  std::vector<std::size_t> out;
  if (m.degree() < rule.min_degree) return out;
  if (rule.kind == SortKind::prefix) {
    if (!is_left_normed(t)) return out;
    std::size_t n = static_cast<std::size_t>(m.degree());
    for (std::size_t k = 0; k + 1 < n; ++k) out.push_back(n - 1 + k);
  } else {
    if (!is_outer_left_normed(t)) return out;
    std::size_t inner = static_cast<std::size_t>(m.degree()) - 1;
    std::size_t first = 2 + inner - 1;
    for (std::size_t k = 0; k + 1 < inner; ++k) out.push_back(first + k);
  }
  return out;
}

std::vector<Rational> solve_dense(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw std::logic_error("basis set is linearly dependent in the quotient");
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  for (std::size_t c = 0; c < n; ++c) b[c] /= a[c][c];
  return b;
}

}  // namespace

std::string_view to_string(Family f) {
  switch (f) {
    case Family::a1: return "a1";
    case Family::b1: return "b1";
    case Family::a2: return "a2";
  }
  return "?";
}

Family parse_family(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "a1") return Family::a1;
  if (s == "b1") return Family::b1;
  if (s == "a2") return Family::a2;
  throw std::invalid_argument("unknown family '" + std::string(text) + "' (expected a1, b1 or a2)");
}

std::string dual_variety_name(Family f) { return "ls_" + std::string(to_string(f)) + "_dual"; }

std::size_t basis_size(Family f, int n) {
  if (n < 1) throw std::invalid_argument("degree must be at least 1");
  if (n <= 2) return static_cast<std::size_t>(n);
  switch (f) {
    case Family::a1: return n == 3 ? 4 : n == 4 ? 5 : static_cast<std::size_t>(n);
    case Family::b1: return static_cast<std::size_t>(n) + 1;
    case Family::a2: return n == 3 ? 4 : static_cast<std::size_t>(n);
  }
  return 0;
}

BasisSet enumerate_basis(Family f, int n) {
  if (n < 1 || n > kMaxDegree) throw std::invalid_argument("degree out of range");
  BasisSet out{f, n, {}};
  auto& b = out.monomials;
  auto L = [](std::vector<int> v) { return left_normed(v); };
  auto leaf = [](int i) { return Monomial::leaf(i); };
  auto prod = [](const Monomial& x, const Monomial& y) { return Monomial::product(0, x, y); };
  if (n == 1) {
    b.push_back(leaf(0));
  } else if (n == 2) {
    b.push_back(L({0, 1}));
    b.push_back(L({1, 0}));
  } else if (f == Family::a1 && n == 3) {
    b = {L({0, 1, 2}), L({0, 2, 1}), L({1, 0, 2}), prod(leaf(2), L({1, 0}))};
  } else if (f == Family::a1 && n == 4) {
    b = {L({0, 1, 2, 3}), L({0, 1, 3, 2}), L({0, 2, 3, 1}), L({1, 0, 2, 3}), L({1, 2, 3, 0})};
  } else if (f == Family::a2 && n == 3) {
    b = {L({0, 1, 2}), L({0, 2, 1}), prod(leaf(2), L({0, 1})), prod(leaf(2), L({1, 0}))};
  } else {
    for (int last = n - 1; last >= 0; --last) b.push_back(sorted_with_last(n, last));
    std::reverse(b.begin(), b.end());
    if (f == Family::b1) {
      std::vector<int> inner(static_cast<std::size_t>(n - 1));
      std::iota(inner.begin(), inner.end(), 0);
      b.push_back(prod(leaf(n - 1), L(inner)));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

RewriteSystem::RewriteSystem(Family f) : family_(f) {
  switch (f) {
    case Family::a1:
      add_table(3);
      add_table(4);
      add_pattern("right-nest", "x*(y*z)", "1/2*(y*x)*z + 1/2*(x*y)*z", "", "", {}, false, 5);
      sorts_.push_back({"prefix-sort", SortKind::prefix, 5});
      break;
    case Family::a2:
      add_table(3);
      add_pattern("compound-times-product", "(e*f)*(a*b)", "((e*f)*a)*b", "", "", {}, false, 4);
      add_pattern("shift-left", "d*((a*b)*c)", "((a*b)*d)*c", "d", "", {}, false, 4);
      add_pattern("shift-nested", "d*(c*(a*b))", "((a*c)*d)*b", "d", "", {}, false, 4);
      add_pattern("lead-swap", "(x*u)*z", "(u*x)*z", "x", "u", {}, false, 4);
      sorts_.push_back({"prefix-sort", SortKind::prefix, 4});
      break;
    case Family::b1:
      add_table(3);
      add_pattern("lead-swap", "(x*u)*z", "(u*x)*z", "x", "u", {}, false, 4);
      add_pattern("left-commute", "w*(y*v)", "y*(w*v)", "y", "w", {}, false, 4);
      add_pattern("compound-product", "(e*f)*(a*b)", "((e*f)*a)*b - ((e*b)*f)*a + f*((e*b)*a)", "f", "a", {}, false,
                  4);
      add_pattern("unnest", "d*(c*(a*b))", "2*d*((a*b)*c) + ((a*c)*d)*b - 2*((a*b)*d)*c", "cd", "", {}, false, 4);
      add_pattern("outer-swap", "c*((a*d)*b)", "d*((a*c)*b)", "bcd", "", {{'d', 'c'}}, true, 4);
      add_pattern("outer-swap-last", "d*((a*b)*c)", "c*((a*b)*d) + ((a*d)*b)*c - ((a*c)*b)*d", "bcd", "",
                  {{'c', 'd'}}, true, 4);
      add_pattern("inner-last-sort", "d*((a*c)*b)", "d*((a*b)*c) + ((a*c)*d)*b - ((a*b)*d)*c", "bcd", "",
                  {{'c', 'b'}}, true, 4);
      sorts_.push_back({"prefix-sort", SortKind::prefix, 4});
      sorts_.push_back({"inner-sort", SortKind::inner, 4});
      break;
  }
}

void RewriteSystem::add_pattern(std::string name, std::string_view lhs, std::string_view rhs, std::string_view leaves,
                                std::string_view compounds, std::vector<std::pair<char, char>> descending,
                                bool root_only, int min_degree) {
  const OperationSignature sig = OperationSignature::single();
  Expression l = parse(lhs, sig), r = parse(rhs, sig);
  std::vector<std::string> names = l.variables();
  for (const auto& v : r.variables())
    if (std::find(names.begin(), names.end(), v) == names.end())
      throw std::logic_error("rule " + name + " introduces a variable on its right side");
  auto label = [&](std::string_view v) {
    auto it = std::find(names.begin(), names.end(), v);
    if (it == names.end()) throw std::logic_error("rule " + name + " guards an unknown variable");
    return static_cast<int>(it - names.begin());
  };
  auto labels_of = [&](const Expression& e) {
    std::vector<int> out;
    for (const auto& v : e.variables()) out.push_back(label(v));
    return out;
  };
  PatternRule rule;
  rule.name = std::move(name);
  MultilinearPoly lp = expand(l, sig, labels_of(l));
  if (lp.size() != 1 || lp.terms().begin()->second != 1) throw std::logic_error("rule left side must be a monomial");
  rule.lhs = lp.terms().begin()->first;
  rule.rhs = expand(r, sig, labels_of(r));
  for (char c : leaves) rule.leaves |= 1u << label(std::string(1, c));
  for (char c : compounds) rule.compounds |= 1u << label(std::string(1, c));
  for (auto [x, y] : descending) rule.descending.emplace_back(label(std::string(1, x)), label(std::string(1, y)));
  rule.root_only = root_only;
  rule.min_degree = min_degree;
  rule.text = std::string(lhs) + " -> " + std::string(rhs);
  patterns_.push_back(std::move(rule));
}

void RewriteSystem::add_table(int degree) {
  auto engine = consequences_of(dual_variety_name(family_));
  BasisSet basis = enumerate_basis(family_, degree);
  std::size_t dim = engine->dimension(degree, Arithmetic::exact);
  if (dim != basis.monomials.size()) throw std::logic_error("basis set size differs from the dimension");
  std::vector<std::vector<Rational>> a(dim, std::vector<Rational>(dim));
  for (std::size_t j = 0; j < dim; ++j)
    for (const auto& [b, x] : engine->normal_form(basis.monomials[j])) a[b][j] = x;
  std::set<Monomial> in_basis(basis.monomials.begin(), basis.monomials.end());
  auto& table = tables_[degree];
  for (const Monomial& m : enumerate(OperationSignature::single(), degree)) {
    if (in_basis.count(m)) continue;
    std::vector<Rational> rhs(dim);
    for (const auto& [b, x] : engine->normal_form(m)) rhs[b] = x;
    std::vector<Rational> c = solve_dense(a, rhs);
    MultilinearPoly p;
    for (std::size_t j = 0; j < dim; ++j)
      if (c[j] != 0) p.add(basis.monomials[j], c[j]);
    table.emplace(m, std::move(p));
  }
  table_degrees_.push_back(degree);
}

std::size_t RewriteSystem::table_size(int degree) const {
  auto it = tables_.find(degree);
  return it == tables_.end() ? 0 : it->second.size();
}

const RewriteSystem& RewriteSystem::get(Family f) {
  static const RewriteSystem a1(Family::a1);
  static const RewriteSystem b1(Family::b1);
  static const RewriteSystem a2(Family::a2);
  switch (f) {
    case Family::a1: return a1;
    case Family::b1: return b1;
    case Family::a2: return a2;
  }
  throw std::invalid_argument("family");
}

namespace {

bool pattern_matches(const PatternRule& rule, std::span<const std::uint8_t> t, std::size_t pos,
                     std::array<Binding, kMaxDegree>& binds) {
  std::size_t pi = 0, ti = pos;
  auto pat = rule.lhs.tokens();
  if (!match(pat, pi, t, ti, binds)) return false;
  int k = rule.lhs.degree();
  for (int v = 0; v < k; ++v) {
    if ((rule.leaves >> v & 1) && binds[static_cast<std::size_t>(v)].len != 1) return false;
    if ((rule.compounds >> v & 1) && binds[static_cast<std::size_t>(v)].len == 1) return false;
  }
  for (auto [x, y] : rule.descending)
    if (t[binds[static_cast<std::size_t>(x)].pos] <= t[binds[static_cast<std::size_t>(y)].pos]) return false;
  return true;
}

}  // namespace

std::vector<Redex> RewriteSystem::redexes(const Monomial& m) const {
  std::vector<Redex> out;
  const int n = m.degree();
  if (auto it = tables_.find(n); it != tables_.end()) {
    if (it->second.count(m)) out.push_back({Redex::table, 0, 0});
    return out;
  }
  auto t = m.tokens();
  std::array<Binding, kMaxDegree> binds;
  for (std::size_t r = 0; r < patterns_.size(); ++r) {
    const PatternRule& rule = patterns_[r];
    if (n < rule.min_degree || n > rule.max_degree) continue;
    std::size_t last = rule.root_only ? 1 : t.size();
    for (std::size_t pos = 0; pos < last; ++pos)
      if ((t[pos] & kNode) && pattern_matches(rule, t, pos, binds)) out.push_back({Redex::pattern, r, pos});
  }
  for (std::size_t r = 0; r < sorts_.size(); ++r) {
    auto leaves = sortable_leaves(m, sorts_[r]);
    for (std::size_t k = 0; k + 1 < leaves.size(); ++k)
      if (t[leaves[k]] > t[leaves[k + 1]]) out.push_back({Redex::sort, r, leaves[k]});
  }
  return out;
}

std::optional<Redex> RewriteSystem::first_redex(const Monomial& m) const {
  const int n = m.degree();
  if (auto it = tables_.find(n); it != tables_.end()) {
    if (it->second.count(m)) return Redex{Redex::table, 0, 0};
    return std::nullopt;
  }
  auto t = m.tokens();
  std::array<Binding, kMaxDegree> binds;
  for (std::size_t pos = 0; pos < t.size(); ++pos) {
    if (!(t[pos] & kNode)) continue;
    for (std::size_t r = 0; r < patterns_.size(); ++r) {
      const PatternRule& rule = patterns_[r];
      if (n < rule.min_degree || n > rule.max_degree || (rule.root_only && pos != 0)) continue;
      if (pattern_matches(rule, t, pos, binds)) return Redex{Redex::pattern, r, pos};
    }
  }
  for (std::size_t r = 0; r < sorts_.size(); ++r) {
    auto leaves = sortable_leaves(m, sorts_[r]);
    for (std::size_t k = 0; k + 1 < leaves.size(); ++k)
      if (t[leaves[k]] > t[leaves[k + 1]]) return Redex{Redex::sort, r, leaves[k]};
  }
  return std::nullopt;
}

MultilinearPoly RewriteSystem::apply(const Monomial& m, const Redex& r) const {
  switch (r.kind) {
    case Redex::table: return tables_.at(m.degree()).at(m);
    case Redex::sort: {
      auto t = m.tokens();
      std::size_t next = r.position + 1;
      while (t[next] & kNode) ++next;
      return MultilinearPoly(swap_tokens(m, r.position, next));
    }
    case Redex::pattern: {
      const PatternRule& rule = patterns_.at(r.rule);
      std::array<Binding, kMaxDegree> binds;
      auto t = m.tokens();
      if (!pattern_matches(rule, t, r.position, binds)) throw std::logic_error("stale redex");
      std::size_t len = subtree_length(t, r.position);
      MultilinearPoly out;
      for (const auto& [term, c] : rule.rhs.terms()) out.add(splice(t, r.position, len, term, binds), c);
      return out;
    }
  }
  return {};
}

std::vector<std::pair<std::string, MultilinearPoly>> RewriteSystem::rule_identities(int lo, int hi) const {
  std::vector<std::pair<std::string, MultilinearPoly>> out;
  for (const auto& rule : patterns_) {
    MultilinearPoly p(rule.lhs);
    p -= rule.rhs;
    out.emplace_back(rule.name, p);
  }
  for (const auto& rule : sorts_) {
    for (int n = std::max(lo, rule.min_degree); n <= hi; ++n) {
      std::vector<int> labels(static_cast<std::size_t>(rule.kind == SortKind::prefix ? n : n - 1));
      std::iota(labels.begin(), labels.end(), 0);
      Monomial base = left_normed(labels);
      if (rule.kind == SortKind::inner) base = Monomial::product(0, Monomial::leaf(n - 1), base);
      auto leaves = sortable_leaves(base, rule);
      for (std::size_t k = 0; k + 1 < leaves.size(); ++k) {
        MultilinearPoly p(base);
        p.add(swap_tokens(base, leaves[k], leaves[k + 1]), -1);
        out.emplace_back(rule.name + "@" + std::to_string(n) + ":" + std::to_string(k), p);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

template <class Choose>
MultilinearPoly reduce(const RewriteSystem& rs, MultilinearPoly pending, RewriteOptions opts, Choose choose) {
  MultilinearPoly done;
  std::size_t steps = 0;
  std::map<Monomial, Rational> work(pending.terms().begin(), pending.terms().end());
  while (!work.empty()) {
    auto it = choose(work);
    Monomial m = it->first;
    Rational c = it->second;
    work.erase(it);
    auto red = [&]() -> std::optional<Redex> {
      if constexpr (std::is_invocable_v<Choose, std::map<Monomial, Rational>&, const Monomial&>)
        return choose(work, m);
      else
        return rs.first_redex(m);
    }();
    if (!red) {
      done.add(m, c);
      continue;
    }
    if (++steps > opts.max_steps) throw RewriteLimit("rewriting exceeded " + std::to_string(opts.max_steps) + " steps");
    MultilinearPoly image = rs.apply(m, *red);
    for (const auto& [t, k] : image.terms()) {
      Rational& slot = work[t];
      slot += c * k;
      if (slot == 0) work.erase(t);
    }
  }
  return done;
}

}  // namespace

MultilinearPoly normal_form(Family f, const MultilinearPoly& p, RewriteOptions opts) {
  for (const auto& [m, c] : p.terms())
    if (!m.is_multilinear() || m.label_mask() != (1u << m.degree()) - 1)
      throw std::invalid_argument("normal forms are defined for multilinear monomials on x1..xn");
  const RewriteSystem& rs = RewriteSystem::get(f);
  return reduce(rs, p, opts, [](std::map<Monomial, Rational>& w) { return w.begin(); });
}

MultilinearPoly normal_form(Family f, const Monomial& m, RewriteOptions opts) {
  return normal_form(f, MultilinearPoly(m), opts);
}

namespace {

struct RandomChooser {
  const RewriteSystem* rs;
  std::mt19937_64* rng;
  std::map<Monomial, Rational>::iterator operator()(std::map<Monomial, Rational>& w) const {
    auto it = w.begin();
    std::advance(it, std::uniform_int_distribution<std::size_t>(0, w.size() - 1)(*rng));
    return it;
  }
  std::optional<Redex> operator()(std::map<Monomial, Rational>&, const Monomial& m) const {
    auto all = rs->redexes(m);
    if (all.empty()) return std::nullopt;
    return all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(*rng)];
  }
};

}  // namespace

MultilinearPoly random_normal_form(Family f, const Monomial& m, std::uint64_t seed, RewriteOptions opts) {
  const RewriteSystem& rs = RewriteSystem::get(f);
  std::mt19937_64 rng(seed);
  return reduce(rs, MultilinearPoly(m), opts, RandomChooser{&rs, &rng});
}

Monomial random_monomial(int n, std::mt19937_64& rng) {
  if (n < 1 || n > kMaxDegree) throw std::invalid_argument("degree out of range");
  std::vector<double> catalan(static_cast<std::size_t>(n) + 1, 0.0);
  catalan[1] = 1;
  for (int k = 2; k <= n; ++k)
    for (int i = 1; i < k; ++i) catalan[static_cast<std::size_t>(k)] += catalan[static_cast<std::size_t>(i)] * catalan[static_cast<std::size_t>(k - i)];
  std::vector<int> labels(static_cast<std::size_t>(n));
  std::iota(labels.begin(), labels.end(), 0);
  std::shuffle(labels.begin(), labels.end(), rng);
  std::size_t next = 0;
  auto build = [&](auto&& self, int k) -> Monomial {
    if (k == 1) return Monomial::leaf(labels[next++]);
    double r = std::uniform_real_distribution<double>(0.0, catalan[static_cast<std::size_t>(k)])(rng);
    int split = 1;
    for (; split < k - 1; ++split) {
      r -= catalan[static_cast<std::size_t>(split)] * catalan[static_cast<std::size_t>(k - split)];
      if (r < 0) break;
    }
    Monomial l = self(self, split);
    Monomial rr = self(self, k - split);
    return Monomial::product(0, l, rr);
  };
  return build(build, n);
}

// ---------------------------------------------------------------------------

namespace {

std::string basis_violation(const MultilinearPoly& nf, const std::set<Monomial>& basis) {
  for (const auto& [m, c] : nf.terms())
    if (!basis.count(m)) return "normal form contains " + to_string(m, OperationSignature::single());
  return {};
}

struct Checker {
  Family family;
  std::shared_ptr<Consequences> engine;
  std::map<int, std::set<Monomial>> basis;
  BasisReport* report;

  const std::set<Monomial>& basis_of(int n) {
    auto it = basis.find(n);
    if (it == basis.end()) {
      auto b = enumerate_basis(family, n).monomials;
      it = basis.emplace(n, std::set<Monomial>(b.begin(), b.end())).first;
    }
    return it->second;
  }

  void check(const Monomial& m) {
    ++report->checked;
    std::string label = to_string(m, OperationSignature::single());
    try {
      MultilinearPoly nf = normal_form(family, m);
      std::string bad = basis_violation(nf, basis_of(m.degree()));
      if (bad.empty() && engine->normal_form(m) != engine->normal_form(nf))
        bad = "input and normal form differ in the free algebra";
      if (!bad.empty()) report->failures.push_back({label, bad});
    } catch (const RewriteLimit& e) {
      report->failures.push_back({label, e.what()});
    }
  }
};

std::vector<Monomial> relabel_all(const std::vector<Monomial>& ms, const std::vector<int>& map) {
  std::vector<Monomial> out;
  for (const auto& m : ms) out.push_back(m.relabeled(map));
  return out;
}

}  // namespace

BasisReport verify_basis(Family f, int n, VerifyMode mode) {
  if (n < 1 || n > kMaxDegree) throw std::invalid_argument("degree out of range");
  BasisReport rep;
  rep.family = f;
  rep.degree = n;
  rep.mode = mode;
  rep.basis_size = enumerate_basis(f, n).monomials.size();
  Checker ck{f, consequences_of(dual_variety_name(f)), {}, &rep};
  if (mode == VerifyMode::full) {
    rep.dimension = ck.engine->dimension(n, Arithmetic::exact);
    if (*rep.dimension != rep.basis_size)
      rep.failures.push_back({"", "basis size " + std::to_string(rep.basis_size) + " differs from dimension " +
                                      std::to_string(*rep.dimension)});
    for (const Monomial& m : enumerate(OperationSignature::single(), n)) ck.check(m);
  } else {
    for (int k = 2; k <= n; ++k) {
      for (std::uint32_t mask = 1; mask + 1 < (1u << k); ++mask) {
        std::vector<int> left, right;
        for (int i = 0; i < k; ++i) (mask >> i & 1 ? left : right).push_back(i);
        auto lb = relabel_all(enumerate_basis(f, static_cast<int>(left.size())).monomials, left);
        auto rb = relabel_all(enumerate_basis(f, static_cast<int>(right.size())).monomials, right);
        for (const auto& u : lb)
          for (const auto& v : rb) ck.check(Monomial::product(0, u, v));
      }
    }
  }
  rep.passed = rep.failures.empty();
  return rep;
}

UniqueNfReport unique_nf_check(Family f, int n, std::size_t trials, std::uint64_t seed) {
  UniqueNfReport rep;
  rep.family = f;
  rep.degree = n;
  rep.trials = trials;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < trials; ++i) {
    Monomial m = random_monomial(n, rng);
    std::string label = to_string(m, OperationSignature::single());
    try {
      MultilinearPoly a = normal_form(f, m);
      MultilinearPoly b = random_normal_form(f, m, rng());
      if (!(a == b))
        rep.failures.push_back({label, "paths end at " + to_string(a, OperationSignature::single()) + " and " +
                                           to_string(b, OperationSignature::single())});
    } catch (const RewriteLimit& e) {
      rep.failures.push_back({label, e.what()});
    }
  }
  rep.passed = rep.failures.empty();
  return rep;
}

}  // namespace nialg
