#include "nialg/serialize.hpp"

#include <nlohmann/json.hpp>
#include <stdexcept>

#include "nialg/expr.hpp"
#include "nialg/variety.hpp"

namespace nialg {

namespace {

int default_label(const std::string& name) {
  if (name.size() < 2 || name[0] != 'x') throw std::invalid_argument("expected a variable x1..xn, got '" + name + "'");
  return std::stoi(name.substr(1)) - 1;
}

}  // namespace

std::string to_json(const RelationSpace& space, const MonomialTable& table, int indent) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : space.rows()) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (const auto& [c, x] : row) obj[to_string(table.monomial(c), table.signature())] = to_string(x);
    rows.push_back(std::move(obj));
  }
  return rows.dump(indent);
}

RelationSpace relation_space_from_json(std::string_view text, const MonomialTable& table) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::parse(text);
  if (!rows.is_array()) throw std::invalid_argument("relation space JSON must be a list");
  SparseMatrix m;
  m.ncols = static_cast<std::uint32_t>(table.size());
  for (const auto& obj : rows) {
    MultilinearPoly p;
    for (const auto& [key, value] : obj.items()) {
      Expression e = parse(key, table.signature());
      std::vector<int> labels;
      for (const auto& v : e.variables()) labels.push_back(default_label(v));
      MultilinearPoly term = expand(e, table.signature(), labels);
      p += parse_rational(value.get<std::string>()) * term;
    }
    m.rows.push_back(table.to_vector(p));
  }
  RelationSpace out = rref(m, RrefMode::exact);
  out.set_ambient(ambient_tag(table.signature(), table.degree(), table.order()));
  return out;
}

}  // namespace nialg
