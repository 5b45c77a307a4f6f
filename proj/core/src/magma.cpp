#include "nialg/magma.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace nialg {

std::string_view to_string(Symmetry s) {
  switch (s) {
    case Symmetry::none: return "none";
    case Symmetry::symmetric: return "symmetric";
    case Symmetry::antisymmetric: return "antisymmetric";
  }
  return "none";
}

Symmetry parse_symmetry(std::string_view text) {
  if (text == "none") return Symmetry::none;
  if (text == "symmetric") return Symmetry::symmetric;
  if (text == "antisymmetric") return Symmetry::antisymmetric;
  throw std::invalid_argument("unknown symmetry '" + std::string(text) + "'");
}

OperationSignature::OperationSignature(std::vector<Operation> ops) : ops_(std::move(ops)) {
  if (ops_.empty()) throw std::invalid_argument("signature needs at least one operation");
  if (ops_.size() > 0x7f) throw std::invalid_argument("too many operations");
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    if (ops_[i].name.empty()) throw std::invalid_argument("empty operation name");
    for (std::size_t j = 0; j < i; ++j)
      if (ops_[i].name == ops_[j].name)
        throw std::invalid_argument("duplicate operation '" + ops_[i].name + "'");
  }
}

OperationSignature OperationSignature::single() { return OperationSignature({{"*", Symmetry::none}}); }

OperationSignature OperationSignature::polarized() {
  return OperationSignature({{"[,]", Symmetry::antisymmetric}, {"{,}", Symmetry::symmetric}});
}

OperationSignature OperationSignature::commutator() {
  return OperationSignature({{"[,]", Symmetry::antisymmetric}});
}

OperationSignature OperationSignature::anticommutator() {
  return OperationSignature({{"{,}", Symmetry::symmetric}});
}

std::optional<std::size_t> OperationSignature::find(std::string_view name) const {
  for (std::size_t i = 0; i < ops_.size(); ++i)
    if (ops_[i].name == name) return i;
  return std::nullopt;
}

bool OperationSignature::all_plain() const {
  return std::all_of(ops_.begin(), ops_.end(),
                     [](const Operation& o) { return o.symmetry == Symmetry::none; });
}

std::string OperationSignature::key() const {
  std::string out;
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    if (i) out += '|';
    out += ops_[i].name;
    if (ops_[i].symmetry == Symmetry::symmetric) out += ":s";
    if (ops_[i].symmetry == Symmetry::antisymmetric) out += ":a";
  }
  return out;
}

// ---------------------------------------------------------------------------

std::size_t subtree_length(std::span<const std::uint8_t> tokens, std::size_t pos) {
  int pending = 1;
  std::size_t i = pos;
  while (pending > 0) {
    pending += (tokens[i] & Monomial::kOpTag) ? 1 : -1;
    ++i;
  }
  return i - pos;
}

Monomial Monomial::leaf(int label) {
  if (label < 0 || label >= kMaxDegree) throw std::out_of_range("leaf label out of range");
  Monomial m;
  m.code_[0] = static_cast<std::uint8_t>(label);
  m.size_ = 1;
  return m;
}

Monomial Monomial::product(int op, const Monomial& left, const Monomial& right) {
  if (left.empty() || right.empty()) throw std::invalid_argument("empty factor");
  if (left.degree() + right.degree() > kMaxDegree) throw std::length_error("monomial degree too large");
  Monomial m;
  m.code_[0] = static_cast<std::uint8_t>(kOpTag | op);
  std::copy_n(left.code_.begin(), left.size_, m.code_.begin() + 1);
  std::copy_n(right.code_.begin(), right.size_, m.code_.begin() + 1 + left.size_);
  m.size_ = static_cast<std::uint8_t>(1 + left.size_ + right.size_);
  return m;
}

Monomial Monomial::from_tokens(std::span<const std::uint8_t> tokens) {
  if (tokens.empty() || tokens.size() > 2 * kMaxDegree - 1 || subtree_length(tokens, 0) != tokens.size())
    throw std::invalid_argument("malformed monomial tokens");
  Monomial m;
  std::copy(tokens.begin(), tokens.end(), m.code_.begin());
  m.size_ = static_cast<std::uint8_t>(tokens.size());
  return m;
}

Monomial Monomial::left() const {
  std::size_t len = subtree_length(tokens(), 1);
  return from_tokens(tokens().subspan(1, len));
}

Monomial Monomial::right() const {
  std::size_t len = subtree_length(tokens(), 1);
  return from_tokens(tokens().subspan(1 + len));
}

std::uint32_t Monomial::label_mask() const {
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < size_; ++i)
    if (!(code_[i] & kOpTag)) mask |= 1u << code_[i];
  return mask;
}

int Monomial::min_label() const { return std::countr_zero(label_mask()); }

std::vector<int> Monomial::leaf_labels() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < size_; ++i)
    if (!(code_[i] & kOpTag)) out.push_back(code_[i]);
  return out;
}

bool Monomial::is_multilinear() const {
  std::uint32_t seen = 0;
  for (std::size_t i = 0; i < size_; ++i) {
    if (code_[i] & kOpTag) continue;
    if (seen & (1u << code_[i])) return false;
    seen |= 1u << code_[i];
  }
  return true;
}

Monomial Monomial::relabeled(std::span<const int> map) const {
  Monomial m = *this;
  for (std::size_t i = 0; i < size_; ++i) {
    if (code_[i] & kOpTag) continue;
    if (code_[i] >= map.size()) throw std::out_of_range("relabel map too short");
    int to = map[code_[i]];
    if (to < 0 || to >= kMaxDegree) throw std::out_of_range("relabel target out of range");
    m.code_[i] = static_cast<std::uint8_t>(to);
  }
  return m;
}

Monomial Monomial::mirrored() const {
  if (is_leaf()) return *this;
  return product(op(), right().mirrored(), left().mirrored());
}

std::strong_ordering Monomial::operator<=>(const Monomial& other) const {
  return std::lexicographical_compare_three_way(code_.begin(), code_.begin() + size_,
                                                other.code_.begin(), other.code_.begin() + other.size_);
}

std::size_t Monomial::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < size_; ++i) h = (h ^ code_[i]) * 1099511628211ull;
  return h;
}

// ---------------------------------------------------------------------------

namespace {

int compare_shape(std::span<const std::uint8_t> a, std::size_t pa, std::span<const std::uint8_t> b,
                  std::size_t pb) {
  std::size_t la = subtree_length(a, pa), lb = subtree_length(b, pb);
  if (la != lb) return la > lb ? -1 : 1;
  bool leaf_a = !(a[pa] & Monomial::kOpTag), leaf_b = !(b[pb] & Monomial::kOpTag);
  if (leaf_a && leaf_b) return 0;
  int oa = a[pa] & 0x7f, ob = b[pb] & 0x7f;
  if (oa != ob) return oa < ob ? -1 : 1;
  if (int c = compare_shape(a, pa + 1, b, pb + 1); c != 0) return c;
  std::size_t ra = pa + 1 + subtree_length(a, pa + 1), rb = pb + 1 + subtree_length(b, pb + 1);
  return compare_shape(a, ra, b, rb);
}

int compare_leaf_words(const Monomial& a, const Monomial& b) {
  auto ta = a.tokens(), tb = b.tokens();
  std::size_t i = 0, j = 0;
  while (true) {
    while (i < ta.size() && (ta[i] & Monomial::kOpTag)) ++i;
    while (j < tb.size() && (tb[j] & Monomial::kOpTag)) ++j;
    if (i == ta.size() || j == tb.size()) return (i == ta.size()) == (j == tb.size()) ? 0 : (i == ta.size() ? -1 : 1);
    if (ta[i] != tb[j]) return ta[i] < tb[j] ? -1 : 1;
    ++i;
    ++j;
  }
}

}  // namespace

int compare_subtrees(const Monomial& a, const Monomial& b) {
  if (int c = compare_shape(a.tokens(), 0, b.tokens(), 0); c != 0) return c;
  return compare_leaf_words(a, b);
}

int compare(MonomialOrder order, const OperationSignature& sig, const Monomial& a, const Monomial& b) {
  if (order == MonomialOrder::polarization && a.degree() == 3 && b.degree() == 3 &&
      sig == OperationSignature::polarized()) {
    // Shape classes {{.,.},.} , {[.,.],.} , [{.,.},.] , [[.,.],.] in that order.
    auto cls = [](const Monomial& m) {
      auto t = m.tokens();
      int inner = (t[1] & Monomial::kOpTag) ? t[1] & 0x7f : t[2] & 0x7f;
      return 2 * (t[0] & 0x7f) + inner;
    };
    int ca = cls(a), cb = cls(b);
    if (ca != cb) return ca > cb ? -1 : 1;
    return compare_leaf_words(a, b);
  }
  return compare_subtrees(a, b);
}

// ---------------------------------------------------------------------------

std::optional<Canonical> canonicalize_unchecked(const Monomial& m, const OperationSignature& sig) {
  if (m.is_leaf()) return Canonical{m, 1};
  auto l = canonicalize_unchecked(m.left(), sig);
  if (!l) return std::nullopt;
  auto r = canonicalize_unchecked(m.right(), sig);
  if (!r) return std::nullopt;
  int sign = l->sign * r->sign;
  const Operation& op = sig.op(static_cast<std::size_t>(m.op()));
  if (op.symmetry != Symmetry::none) {
    int c = compare_subtrees(l->monomial, r->monomial);
    if (c == 0 && op.symmetry == Symmetry::antisymmetric) return std::nullopt;
    if (c > 0) {
      std::swap(l, r);
      if (op.symmetry == Symmetry::antisymmetric) sign = -sign;
    }
  }
  return Canonical{Monomial::product(m.op(), l->monomial, r->monomial), sign};
}

std::optional<Canonical> canonicalize(const Monomial& m, const OperationSignature& sig) {
  if (!m.is_multilinear()) throw std::invalid_argument("monomial repeats a variable");
  for (auto t : m.tokens())
    if ((t & Monomial::kOpTag) && static_cast<std::size_t>(t & 0x7f) >= sig.size())
      throw std::invalid_argument("monomial uses an operation outside the signature");
  return canonicalize_unchecked(m, sig);
}

// ---------------------------------------------------------------------------

void MultilinearPoly::add(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void MultilinearPoly::add_canonical(const Monomial& m, const Rational& c, const OperationSignature& sig) {
  auto can = canonicalize_unchecked(m, sig);
  if (!can) return;
  add(can->monomial, can->sign > 0 ? c : Rational(-c));
}

MultilinearPoly& MultilinearPoly::operator+=(const MultilinearPoly& other) {
  for (const auto& [m, c] : other.terms_) add(m, c);
  return *this;
}

MultilinearPoly& MultilinearPoly::operator-=(const MultilinearPoly& other) {
  for (const auto& [m, c] : other.terms_) add(m, -c);
  return *this;
}

MultilinearPoly& MultilinearPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Rational MultilinearPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

int MultilinearPoly::degree() const {
  if (terms_.empty()) return 0;
  int d = terms_.begin()->first.degree();
  for (const auto& [m, c] : terms_)
    if (m.degree() != d) throw std::invalid_argument("inhomogeneous polynomial");
  return d;
}

bool MultilinearPoly::is_multilinear() const {
  if (terms_.empty()) return true;
  std::uint32_t mask = terms_.begin()->first.label_mask();
  for (const auto& [m, c] : terms_)
    if (!m.is_multilinear() || m.label_mask() != mask) return false;
  return true;
}

// ---------------------------------------------------------------------------

std::vector<std::string> default_names(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back("x" + std::to_string(i + 1));
  return out;
}

std::vector<std::string> letter_names(int n) {
  if (n > 26) return default_names(n);
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
  return out;
}

namespace {

void print_monomial(std::ostringstream& os, const Monomial& m, const OperationSignature& sig,
                    std::span<const std::string> names) {
  if (m.is_leaf()) {
    if (static_cast<std::size_t>(m.label()) >= names.size()) throw std::out_of_range("no name for label");
    os << names[m.label()];
    return;
  }
  const std::string& op = sig.op(static_cast<std::size_t>(m.op())).name;
  Monomial l = m.left(), r = m.right();
  if (op == "*") {
    auto operand = [&](const Monomial& x) {
      bool paren = !x.is_leaf() && sig.op(static_cast<std::size_t>(x.op())).name == "*";
      if (paren) os << '(';
      print_monomial(os, x, sig, names);
      if (paren) os << ')';
    };
    operand(l);
    os << '*';
    operand(r);
  } else if (op == "[,]" || op == "{,}") {
    os << op[0];
    print_monomial(os, l, sig, names);
    os << ',';
    print_monomial(os, r, sig, names);
    os << op[2];
  } else {
    os << op << '(';
    print_monomial(os, l, sig, names);
    os << ',';
    print_monomial(os, r, sig, names);
    os << ')';
  }
}

}  // namespace

std::string to_string(const Monomial& m, const OperationSignature& sig, std::span<const std::string> names) {
  std::ostringstream os;
  print_monomial(os, m, sig, names);
  return os.str();
}

std::string to_string(const Monomial& m, const OperationSignature& sig) {
  auto names = default_names(kMaxDegree);
  return to_string(m, sig, names);
}

std::string to_string(const MultilinearPoly& p, const OperationSignature& sig,
                      std::span<const std::string> names, MonomialOrder order) {
  if (p.is_zero()) return "0";
  std::vector<std::pair<Monomial, Rational>> terms(p.terms().begin(), p.terms().end());
  std::stable_sort(terms.begin(), terms.end(), [&](const auto& a, const auto& b) {
    return compare(order, sig, a.first, b.first) < 0;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (mag != 1) os << to_string(mag) << '*';
    os << to_string(m, sig, names);
  }
  return os.str();
}

std::string to_string(const MultilinearPoly& p, const OperationSignature& sig) {
  auto names = default_names(kMaxDegree);
  return to_string(p, sig, names);
}

// ---------------------------------------------------------------------------

std::vector<Monomial> enumerate(const OperationSignature& sig, int n, MonomialOrder order) {
  if (n < 1 || n > kMaxDegree) throw std::invalid_argument("degree out of range");
  std::unordered_map<std::uint32_t, std::vector<Monomial>> memo;
  std::function<const std::vector<Monomial>&(std::uint32_t)> gen = [&](std::uint32_t mask) -> const std::vector<Monomial>& {
    if (auto it = memo.find(mask); it != memo.end()) return it->second;
    std::vector<Monomial> out;
    if (std::popcount(mask) == 1) {
      out.push_back(Monomial::leaf(std::countr_zero(mask)));
    } else {
      for (std::uint32_t left = (mask - 1) & mask; left != 0; left = (left - 1) & mask) {
        const auto& ls = gen(left);
        const auto& rs = gen(mask ^ left);
        for (std::size_t o = 0; o < sig.size(); ++o)
          for (const auto& l : ls)
            for (const auto& r : rs) {
              if (sig.op(o).symmetry != Symmetry::none && compare_subtrees(l, r) > 0) continue;
              out.push_back(Monomial::product(static_cast<int>(o), l, r));
            }
      }
    }
    return memo.emplace(mask, std::move(out)).first->second;
  };
  std::vector<Monomial> all = gen((n == 32 ? 0u : (1u << n)) - 1);
  std::sort(all.begin(), all.end(),
            [&](const Monomial& a, const Monomial& b) { return compare(order, sig, a, b) < 0; });
  return all;
}

MultilinearPoly act(std::span<const int> sigma, const MultilinearPoly& p, const OperationSignature& sig) {
  if (p.is_zero()) return p;
  int n = p.degree();
  if (static_cast<int>(sigma.size()) != n) throw std::invalid_argument("permutation size mismatch");
  std::uint32_t seen = 0;
  for (int v : sigma) {
    if (v < 0 || v >= n || (seen & (1u << v))) throw std::invalid_argument("not a permutation");
    seen |= 1u << v;
  }
  MultilinearPoly out;
  for (const auto& [m, c] : p.terms()) out.add_canonical(m.relabeled(sigma), c, sig);
  return out;
}

// ---------------------------------------------------------------------------

MonomialTable::MonomialTable(OperationSignature sig, int degree, MonomialOrder order)
    : sig_(std::move(sig)), degree_(degree), order_(order), monomials_(enumerate(sig_, degree, order)) {
  index_.reserve(monomials_.size() * 2);
  for (std::uint32_t i = 0; i < monomials_.size(); ++i) index_.emplace(monomials_[i], i);
}

std::optional<std::uint32_t> MonomialTable::find(const Monomial& canonical) const {
  auto it = index_.find(canonical);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::pair<std::uint32_t, Rational>> MonomialTable::to_vector(const MultilinearPoly& p) const {
  std::map<std::uint32_t, Rational> acc;
  for (const auto& [m, c] : p.terms()) {
    auto can = canonicalize(m, sig_);
    if (!can) continue;
    auto id = find(can->monomial);
    if (!id) throw std::invalid_argument("monomial outside the ambient: " + to_string(m, sig_));
    acc[*id] += can->sign > 0 ? c : Rational(-c);
  }
  std::vector<std::pair<std::uint32_t, Rational>> out;
  for (auto& [k, v] : acc)
    if (v != 0) out.emplace_back(k, v);
  return out;
}

MultilinearPoly MonomialTable::to_poly(std::span<const std::pair<std::uint32_t, Rational>> v) const {
  MultilinearPoly p;
  for (const auto& [k, c] : v) p.add(monomial(k), c);
  return p;
}

}  // namespace nialg
