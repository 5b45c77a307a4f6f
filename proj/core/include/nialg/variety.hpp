#pragma once

// Variety presentations, the built-in library, multilinearization and the
// consequence engine (dimensions, identity membership, inclusion).

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nialg/expr.hpp"
#include "nialg/linalg.hpp"
#include "nialg/magma.hpp"
#include "nialg/tower.hpp"

namespace nialg {

class UnknownVariety : public std::runtime_error {
 public:
  explicit UnknownVariety(const std::string& name) : std::runtime_error("unknown variety '" + name + "'") {}
};

class SignatureMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Full linearization: one multilinear polynomial per multihomogeneous
// component, with each repeated variable split into fresh labels.
std::vector<MultilinearPoly> multilinearize(const MultilinearPoly& p, const OperationSignature& sig);
std::vector<MultilinearPoly> multilinearize(const Expression& e, const OperationSignature& sig);

// Order-preserving relabelling of a homogeneous multilinear polynomial onto 0..n-1.
MultilinearPoly standardize(const MultilinearPoly& p);

// Swaps the children of every node in every term.
MultilinearPoly mirror(const MultilinearPoly& p, const OperationSignature& sig);

struct VarietyPresentation {
  std::string name;
  std::string title;
  OperationSignature signature = OperationSignature::single();
  std::optional<std::string> extends;
  std::optional<std::string> mirrored_from;
  // Every defining identity, inherited ones first, each in "= 0" form.
  std::vector<Expression> identities;
  // Index in `identities` where this variety's own identities begin.
  std::size_t own_begin = 0;

  // Multilinearized defining identities on labels 0..m-1.
  std::vector<MultilinearPoly> generators() const;
  int max_identity_degree() const;
};

struct VarietyDefinition {
  std::string name;
  std::string title;
  std::optional<std::string> extends;
  std::optional<std::string> mirrored_from;
  std::vector<Operation> ops;
  std::vector<std::string> identities;
  std::string source;
};

// Parses one definition file; throws std::invalid_argument on schema errors.
VarietyDefinition parse_variety_json(std::string_view text, const std::string& source);

class VarietyLibrary {
 public:
  VarietyLibrary() = default;

  // Built-in definitions plus every *.json under the NIALG_VARIETY_PATH directories.
  static const VarietyLibrary& global();
  static VarietyLibrary builtin_only();

  void add(VarietyDefinition def);
  void add_json(std::string_view text, const std::string& source);
  void add_directory(const std::filesystem::path& dir);

  bool has(const std::string& name) const { return defs_.count(name) != 0; }
  std::vector<std::string> names() const;
  // Resolves `extends` and `mirrored_from`; throws UnknownVariety.
  VarietyPresentation get(const std::string& name) const;

 private:
  VarietyPresentation resolve(const std::string& name, std::vector<std::string>& stack) const;
  std::map<std::string, VarietyDefinition> defs_;
};

enum class Arithmetic { exact, modular };

struct DimensionReport {
  int degree = 0;
  std::size_t monomials = 0;
  std::size_t dimension = 0;
  std::size_t rank = 0;
  bool certified_exact = false;
  std::vector<std::uint32_t> primes;
};

// Number of canonical multilinear monomials of degree n.
std::size_t ambient_size(const OperationSignature& sig, int n);

class ConsequenceSpace;

// Degree-by-degree consequence engine of one variety; thread-safe.
class Consequences {
 public:
  Consequences(OperationSignature sig, std::vector<MultilinearPoly> generators, std::string name = {});
  explicit Consequences(const VarietyPresentation& v);

  const std::string& name() const { return name_; }
  const OperationSignature& signature() const { return sig_; }
  const std::vector<MultilinearPoly>& generators() const { return gens_; }
  int max_generator_degree() const { return max_deg_; }

  DimensionReport dimension_report(int n, Arithmetic mode = Arithmetic::modular);
  std::size_t dimension(int n, Arithmetic mode = Arithmetic::modular) {
    return dimension_report(n, mode).dimension;
  }

  // Membership of a homogeneous multilinear polynomial (exact arithmetic).
  bool contains(const MultilinearPoly& p);
  // Quotient coordinates over the basis of Q_n (exact).
  RatVec normal_form(const MultilinearPoly& p);
  RatVec normal_form(const Monomial& m);
  MultilinearPoly basis_element(int n, std::uint32_t b);
  std::vector<MultilinearPoly> basis(int n);
  // A representative of the class with the given quotient coordinates.
  MultilinearPoly representative(int n, const RatVec& coords);

  // Explicit reduced echelon basis of the degree-n consequences in the
  // ambient of canonical monomials sorted by `order`.
  RelationSpace relation_space(int n, MonomialOrder order = MonomialOrder::generic);

  ConsequenceSpace space(int n, MonomialOrder order = MonomialOrder::generic);

  // Builds the exact tower through degree n.
  void ensure_exact(int n);

 private:
  std::size_t modular_rank_locked(int n, std::uint32_t p, std::vector<std::size_t>* pivots,
                                  const std::vector<RatVec>& rows);

  std::string name_;
  OperationSignature sig_;
  std::vector<MultilinearPoly> gens_;
  int max_deg_ = 0;
  std::recursive_mutex mu_;
  QuotientTower<RationalField> tower_;
  std::map<int, DimensionReport> dims_;
  std::map<int, std::vector<std::size_t>> pivot_rows_;
  std::map<std::pair<int, int>, RelationSpace> spaces_;
};

class ConsequenceSpace {
 public:
  ConsequenceSpace(std::string variety, int degree, RelationSpace space, MonomialOrder order)
      : variety_(std::move(variety)), degree_(degree), space_(std::move(space)), order_(order) {}
  const std::string& variety() const { return variety_; }
  int degree() const { return degree_; }
  const RelationSpace& space() const { return space_; }
  MonomialOrder order() const { return order_; }

 private:
  std::string variety_;
  int degree_;
  RelationSpace space_;
  MonomialOrder order_;
};

// Shared engines keyed by variety name.
std::shared_ptr<Consequences> consequences_of(const VarietyPresentation& v);
std::shared_ptr<Consequences> consequences_of(const std::string& name);

// Ambient tag "signature-key/degree" used to guard same_span.
std::string ambient_tag(const OperationSignature& sig, int n, MonomialOrder order = MonomialOrder::generic);

ConsequenceSpace consequences(const VarietyPresentation& v, int n);
std::size_t dimension(const VarietyPresentation& v, int n, Arithmetic mode = Arithmetic::modular);
bool is_identity(const VarietyPresentation& v, const Expression& e);
bool is_identity(const VarietyPresentation& v, const MultilinearPoly& p);
// True when V is a subvariety of W through degree max_degree.
bool includes(const VarietyPresentation& V, const VarietyPresentation& W, int max_degree);

}  // namespace nialg
