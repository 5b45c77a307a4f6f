#pragma once

// Free-magma machinery: operation signatures, monomials as planar binary
// trees over labelled leaves, canonical forms under operation symmetries,
// and multilinear polynomials over those monomials.

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "nialg/rational.hpp"

namespace nialg {

enum class Symmetry { none, symmetric, antisymmetric };

std::string_view to_string(Symmetry s);
Symmetry parse_symmetry(std::string_view text);

struct Operation {
  std::string name;
  Symmetry symmetry = Symmetry::none;
  bool operator==(const Operation&) const = default;
};

class OperationSignature {
 public:
  explicit OperationSignature(std::vector<Operation> ops);

  // One binary operation "*" without symmetry.
  static OperationSignature single();
  // {"[,]" antisymmetric, "{,}" symmetric}.
  static OperationSignature polarized();
  static OperationSignature commutator();      // {"[,]" antisymmetric}
  static OperationSignature anticommutator();  // {"{,}" symmetric}

  std::size_t size() const { return ops_.size(); }
  const Operation& op(std::size_t i) const { return ops_.at(i); }
  const std::vector<Operation>& ops() const { return ops_; }
  std::optional<std::size_t> find(std::string_view name) const;
  bool all_plain() const;
  // Stable textual key, e.g. "*" or "[,]:a|{,}:s".
  std::string key() const;

  bool operator==(const OperationSignature&) const = default;

 private:
  std::vector<Operation> ops_;
};

inline constexpr int kMaxDegree = 16;

// Preorder token encoding: a leaf is its label (< 0x80), an internal node is
// 0x80 | op-index followed by its left and right subtrees.
class Monomial {
 public:
  static constexpr std::uint8_t kOpTag = 0x80;

  Monomial() = default;
  static Monomial leaf(int label);
  static Monomial product(int op, const Monomial& left, const Monomial& right);
  static Monomial from_tokens(std::span<const std::uint8_t> tokens);

  int degree() const { return (size_ + 1) / 2; }
  bool empty() const { return size_ == 0; }
  bool is_leaf() const { return size_ == 1; }
  int label() const { return code_[0]; }
  int op() const { return code_[0] & 0x7f; }
  Monomial left() const;
  Monomial right() const;

  std::span<const std::uint8_t> tokens() const { return {code_.data(), size_}; }
  std::uint32_t label_mask() const;
  int min_label() const;
  std::vector<int> leaf_labels() const;
  bool is_multilinear() const;

  // Leaf label l becomes map[l].
  Monomial relabeled(std::span<const int> map) const;
  // Swaps the children of every node.
  Monomial mirrored() const;

  bool operator==(const Monomial& other) const {
    return tokens().size() == other.tokens().size() &&
           std::equal(tokens().begin(), tokens().end(), other.tokens().begin());
  }
  // Container order only (token-lexicographic); use MonomialOrder for ranking.
  std::strong_ordering operator<=>(const Monomial& other) const;
  std::size_t hash() const;

 private:
  std::array<std::uint8_t, 2 * kMaxDegree - 1> code_{};
  std::uint8_t size_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

// Length in tokens of the subtree starting at `pos`.
std::size_t subtree_length(std::span<const std::uint8_t> tokens, std::size_t pos);

// Total order on subtrees used for canonical child order: higher degree
// first, then operation rank, then children recursively (shape only), then
// the leaf-label word. Negative when `a` precedes `b`.
int compare_subtrees(const Monomial& a, const Monomial& b);

enum class MonomialOrder {
  generic,       // compare_subtrees
  polarization,  // degree 3 over the polarized signature; generic otherwise
};

int compare(MonomialOrder order, const OperationSignature& sig, const Monomial& a,
            const Monomial& b);

struct Canonical {
  Monomial monomial;
  int sign = 1;
};

// Orders the children of every symmetric/antisymmetric node. Returns nullopt
// for the zero monomial. Throws std::invalid_argument on a repeated variable.
std::optional<Canonical> canonicalize(const Monomial& m, const OperationSignature& sig);
// Same, without the multilinearity check.
std::optional<Canonical> canonicalize_unchecked(const Monomial& m, const OperationSignature& sig);

class MultilinearPoly {
 public:
  using Terms = std::map<Monomial, Rational>;

  MultilinearPoly() = default;
  explicit MultilinearPoly(const Monomial& m, const Rational& c = 1) { add(m, c); }

  void add(const Monomial& m, const Rational& c);
  // Adds c * m after canonicalizing m.
  void add_canonical(const Monomial& m, const Rational& c, const OperationSignature& sig);

  MultilinearPoly& operator+=(const MultilinearPoly& other);
  MultilinearPoly& operator-=(const MultilinearPoly& other);
  MultilinearPoly& operator*=(const Rational& c);
  friend MultilinearPoly operator+(MultilinearPoly a, const MultilinearPoly& b) { return a += b; }
  friend MultilinearPoly operator-(MultilinearPoly a, const MultilinearPoly& b) { return a -= b; }
  friend MultilinearPoly operator*(const Rational& c, MultilinearPoly a) { return a *= c; }
  bool operator==(const MultilinearPoly& other) const { return terms_ == other.terms_; }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Rational coefficient(const Monomial& m) const;
  // Degree of the terms; 0 for the zero polynomial; throws if inhomogeneous.
  int degree() const;
  bool is_multilinear() const;

 private:
  Terms terms_;
};

// Default variable names x1..xn.
std::vector<std::string> default_names(int n);
std::vector<std::string> letter_names(int n);

std::string to_string(const Monomial& m, const OperationSignature& sig,
                      std::span<const std::string> names);
std::string to_string(const Monomial& m, const OperationSignature& sig);
// Terms listed in the given order; "0" for the zero polynomial.
std::string to_string(const MultilinearPoly& p, const OperationSignature& sig,
                      std::span<const std::string> names,
                      MonomialOrder order = MonomialOrder::generic);
std::string to_string(const MultilinearPoly& p, const OperationSignature& sig);

// All canonical multilinear monomials on labels 0..n-1, sorted by `order`.
std::vector<Monomial> enumerate(const OperationSignature& sig, int n,
                                MonomialOrder order = MonomialOrder::generic);

// sigma[l] is the image of label l.
MultilinearPoly act(std::span<const int> sigma, const MultilinearPoly& p,
                    const OperationSignature& sig);

// Dense ids for the canonical monomials of one (signature, degree).
class MonomialTable {
 public:
  MonomialTable(OperationSignature sig, int degree, MonomialOrder order = MonomialOrder::generic);

  const OperationSignature& signature() const { return sig_; }
  int degree() const { return degree_; }
  MonomialOrder order() const { return order_; }
  std::size_t size() const { return monomials_.size(); }
  const Monomial& monomial(std::uint32_t id) const { return monomials_.at(id); }
  const std::vector<Monomial>& monomials() const { return monomials_; }
  std::optional<std::uint32_t> find(const Monomial& canonical) const;

  // Sparse coordinates; terms are canonicalized first.
  std::vector<std::pair<std::uint32_t, Rational>> to_vector(const MultilinearPoly& p) const;
  MultilinearPoly to_poly(std::span<const std::pair<std::uint32_t, Rational>> v) const;

 private:
  OperationSignature sig_;
  int degree_;
  MonomialOrder order_;
  std::vector<Monomial> monomials_;
  std::unordered_map<Monomial, std::uint32_t, MonomialHash> index_;
};

}  // namespace nialg
