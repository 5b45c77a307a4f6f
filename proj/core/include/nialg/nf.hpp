#pragma once

// Rewriting systems for the three dual varieties with explicit monomial
// bases, and machine checks of the basis theorems.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nialg/magma.hpp"
#include "nialg/variety.hpp"

namespace nialg {

enum class Family { a1, b1, a2 };

std::string_view to_string(Family f);
Family parse_family(std::string_view text);
// Library name of the variety whose free algebra the family describes.
std::string dual_variety_name(Family f);

struct BasisSet {
  Family family;
  int degree;
  std::vector<Monomial> monomials;  // on labels 0..degree-1
};

BasisSet enumerate_basis(Family f, int n);
// Closed-form sizes for every n >= 1.
std::size_t basis_size(Family f, int n);

class RewriteLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A rule whose left side is a pattern over metavariables. Metavariables in
// `leaves` must be bound to single variables and `descending` lists pairs
// (x, y) with label(x) > label(y) required.
struct PatternRule {
  std::string name;
  Monomial lhs;
  MultilinearPoly rhs;
  std::uint32_t leaves = 0;
  std::uint32_t compounds = 0;
  std::vector<std::pair<int, int>> descending;
  bool root_only = false;
  int min_degree = 1;  // bounds on the degree of the whole monomial
  int max_degree = kMaxDegree;
  std::string text;
};

enum class SortKind {
  prefix,  // left-normed: order all leaves but the last
  inner,   // x(L) with L left-normed: order all leaves of L but its last
};

struct SortRule {
  std::string name;
  SortKind kind;
  int min_degree;
};

struct Redex {
  enum Kind { pattern, sort, table } kind;
  std::size_t rule = 0;
  std::size_t position = 0;  // token offset, or leaf index for sorting
};

class RewriteSystem {
 public:
  // Builds the rules; table rules for the small degrees are solved exactly
  // against the basis sets.
  static const RewriteSystem& get(Family f);

  Family family() const { return family_; }
  const std::vector<PatternRule>& pattern_rules() const { return patterns_; }
  const std::vector<SortRule>& sort_rules() const { return sorts_; }
  // Degrees handled entirely by table rules.
  const std::vector<int>& table_degrees() const { return table_degrees_; }
  std::size_t table_size(int degree) const;

  std::vector<Redex> redexes(const Monomial& m) const;
  std::optional<Redex> first_redex(const Monomial& m) const;
  MultilinearPoly apply(const Monomial& m, const Redex& r) const;

  // Polynomial identities of the dual variety behind every pattern rule,
  // and instances of each sorting rule for degrees lo..hi.
  std::vector<std::pair<std::string, MultilinearPoly>> rule_identities(int lo, int hi) const;

 private:
  explicit RewriteSystem(Family f);
  void add_pattern(std::string name, std::string_view lhs, std::string_view rhs, std::string_view leaves,
                   std::string_view compounds = "", std::vector<std::pair<char, char>> descending = {},
                   bool root_only = false, int min_degree = 1);
  void add_table(int degree);

  Family family_;
  std::vector<PatternRule> patterns_;
  std::vector<SortRule> sorts_;
  std::vector<int> table_degrees_;
  std::map<int, std::map<Monomial, MultilinearPoly>> tables_;
};

struct RewriteOptions {
  std::size_t max_steps = 50'000'000;
};

// Leftmost-outermost reduction to a polynomial supported on the basis set.
MultilinearPoly normal_form(Family f, const MultilinearPoly& p, RewriteOptions opts = {});
MultilinearPoly normal_form(Family f, const Monomial& m, RewriteOptions opts = {});

// Reduction choosing a uniformly random redex at every step.
MultilinearPoly random_normal_form(Family f, const Monomial& m, std::uint64_t seed, RewriteOptions opts = {});

enum class VerifyMode { full, spanning_only };

struct BasisFailure {
  std::string monomial;
  std::string reason;
};

struct BasisReport {
  Family family;
  int degree = 0;
  VerifyMode mode = VerifyMode::full;
  std::size_t basis_size = 0;
  std::optional<std::size_t> dimension;  // full mode only
  std::size_t checked = 0;               // reductions performed
  bool passed = false;
  std::vector<BasisFailure> failures;
};

// Full mode rewrites every monomial of degree n and compares the basis size
// with the computed dimension. Spanning-only mode rewrites every product of
// two basis elements on complementary variable sets for all degrees up to n,
// which covers every monomial by induction on the outer product.
BasisReport verify_basis(Family f, int n, VerifyMode mode);

struct UniqueNfReport {
  Family family;
  int degree = 0;
  std::size_t trials = 0;
  bool passed = false;
  std::vector<BasisFailure> failures;
};

UniqueNfReport unique_nf_check(Family f, int n, std::size_t trials, std::uint64_t seed = 1);

// Random multilinear monomial of degree n (uniform shape index, uniform labels).
Monomial random_monomial(int n, std::mt19937_64& rng);

}  // namespace nialg
