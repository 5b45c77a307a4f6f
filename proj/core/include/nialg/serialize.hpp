#pragma once

#include <string>
#include <string_view>

#include "nialg/linalg.hpp"
#include "nialg/magma.hpp"

namespace nialg {

// A relation space as a JSON list with one object per echelon row, mapping
// monomial strings over x1..xn to rational strings.
std::string to_json(const RelationSpace& space, const MonomialTable& table, int indent = -1);

// Inverse of to_json; the result is re-echelonized in the table's order.
RelationSpace relation_space_from_json(std::string_view text, const MonomialTable& table);

}  // namespace nialg
