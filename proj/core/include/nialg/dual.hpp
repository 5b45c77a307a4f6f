#pragma once

// Koszul duals of binary quadratic presentations with one operation.

#include <string>
#include <vector>

#include "nialg/linalg.hpp"
#include "nialg/variety.hpp"

namespace nialg {

class NotQuadratic : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Relation space R inside the 12 degree-3 monomials of one plain operation.
struct QuadraticPresentation {
  RelationSpace relations;
  std::string source;
};

// Throws NotQuadratic unless every defining identity has degree exactly 3
// over a single operation without symmetry.
QuadraticPresentation quadratic_presentation(const VarietyPresentation& v);

// Diagonal of the weight-2 pairing, indexed like enumerate(single(), 3):
// sgn(sigma) on left combs, -sgn(sigma) on right combs.
std::vector<int> pairing_signs();

QuadraticPresentation koszul_dual(const QuadraticPresentation& p);

struct DualResult {
  QuadraticPresentation dual;
  std::vector<std::string> matches;  // library varieties with the same relations
};

DualResult koszul_dual(const VarietyPresentation& v, const VarietyLibrary& lib = VarietyLibrary::global());

// Library varieties whose degree-3 relations span the same space.
std::vector<std::string> matching_varieties(const RelationSpace& relations, const VarietyLibrary& lib);

// Relations forced on U by Lie-admissibility of S (x) U for S in C.
RelationSpace lie_admissibility_relations(const VarietyPresentation& C);
bool lie_admissibility_check(const VarietyPresentation& C, const VarietyPresentation& D);

bool double_dual_check(const QuadraticPresentation& p);

// Echelon rows as "... = 0" identities over letters a, b, c.
std::vector<std::string> relation_texts(const RelationSpace& relations, const OperationSignature& sig, int degree,
                                        MonomialOrder order = MonomialOrder::generic);

}  // namespace nialg
