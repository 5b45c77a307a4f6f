#pragma once

// Commutator/anticommutator presentations of one-operation varieties and the
// identities of their derived algebras.

#include <string>
#include <vector>

#include "nialg/linalg.hpp"
#include "nialg/variety.hpp"

namespace nialg {

// ab -> 1/2([a,b] + {a,b}) at every node.
MultilinearPoly polarize_poly(const MultilinearPoly& p);

// Expands each operation of `sig` into the plain product: antisymmetric ops
// become xy - yx, symmetric ops xy + yx, plain ops stay xy.
MultilinearPoly expand_derived(const MultilinearPoly& p, const OperationSignature& sig);

inline MultilinearPoly depolarize(const MultilinearPoly& p) {
  return expand_derived(p, OperationSignature::polarized());
}

struct PolarizedIdentity {
  Monomial leading;
  MultilinearPoly rhs;  // leading = rhs
  std::string source;   // variety contributing the row
};

struct PolarizedPresentation {
  std::string variety;
  // Degree-3 consequences over the polarized signature, columns in the
  // polarization order.
  RelationSpace relations;
  // One identity per orbit of displayed rows, inherited ones first.
  std::vector<PolarizedIdentity> identities;

  std::vector<std::string> texts() const;
};

// Throws NotQuadratic (see dual.hpp) for presentations outside one plain
// operation in degree 3.
PolarizedPresentation polarize(const VarietyPresentation& v, const VarietyLibrary& lib = VarietyLibrary::global());

std::string to_string(const PolarizedIdentity& id);

enum class DerivedOp { commutator, anticommutator };

const OperationSignature& derived_signature(DerivedOp op);
std::string_view to_string(DerivedOp op);
DerivedOp parse_derived_op(std::string_view text);

struct DerivedOptions {
  bool allow_degree_5 = false;
};

// Multilinear identities of degree d of the algebra with product [a,b] or
// {a,b} built from V; the ambient is the derived signature at degree d.
RelationSpace derived_identities(const VarietyPresentation& v, DerivedOp op, int degree, DerivedOptions opts = {});

// True iff `found` is exactly the degree-d consequence span of `generators`.
bool follows_from(const RelationSpace& found, const std::vector<Expression>& generators,
                  const OperationSignature& sig, int degree);
bool follows_from(const RelationSpace& found, const std::vector<MultilinearPoly>& generators,
                  const OperationSignature& sig, int degree);

}  // namespace nialg
