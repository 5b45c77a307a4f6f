#include "nialg/dual.hpp"

#include <algorithm>

namespace nialg {

namespace {

int permutation_sign(const std::vector<int>& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inv;
  return inv % 2 ? -1 : 1;
}

const std::string& cubic_tag() {
  static const std::string tag = ambient_tag(OperationSignature::single(), 3);
  return tag;
}

}  // namespace

std::vector<int> pairing_signs() {
  std::vector<int> out;
  for (const Monomial& m : enumerate(OperationSignature::single(), 3)) {
    int s = permutation_sign(m.leaf_labels());
    out.push_back(m.left().is_leaf() ? -s : s);
  }
  return out;
}

QuadraticPresentation quadratic_presentation(const VarietyPresentation& v) {
  if (!(v.signature == OperationSignature::single()))
    throw NotQuadratic(v.name + ": expected a single operation without symmetry");
  for (const auto& g : v.generators())
    if (g.degree() != 3) throw NotQuadratic(v.name + ": defining identities must have degree 3");
  QuadraticPresentation p;
  p.source = v.name;
  p.relations = consequences_of(v)->relation_space(3);
  return p;
}

QuadraticPresentation koszul_dual(const QuadraticPresentation& p) {
  if (p.relations.ncols() != 12 || (!p.relations.ambient().empty() && p.relations.ambient() != cubic_tag()))
    throw NotQuadratic("relations must live in the 12-dimensional cubic space");
  std::vector<int> g = pairing_signs();
  SparseMatrix m;
  m.ncols = 12;
  for (const auto& row : p.relations.rows()) {
    RatVec r;
    for (const auto& [c, x] : row) r.emplace_back(c, x * g[c]);
    m.rows.push_back(r);
  }
  QuadraticPresentation out;
  out.source = p.source.empty() ? std::string() : p.source + "!";
  out.relations = nullspace(m);
  out.relations.set_ambient(cubic_tag());
  return out;
}

std::vector<std::string> matching_varieties(const RelationSpace& relations, const VarietyLibrary& lib) {
  std::vector<std::string> out;
  for (const auto& name : lib.names()) {
    VarietyPresentation v = lib.get(name);
    QuadraticPresentation q;
    try {
      q = quadratic_presentation(v);
    } catch (const NotQuadratic&) {
      continue;
    }
    if (q.relations.rank() == relations.rank() && same_span(q.relations, relations)) out.push_back(name);
  }
  return out;
}

DualResult koszul_dual(const VarietyPresentation& v, const VarietyLibrary& lib) {
  DualResult r;
  r.dual = koszul_dual(quadratic_presentation(v));
  r.matches = matching_varieties(r.dual.relations, lib);
  return r;
}

RelationSpace lie_admissibility_relations(const VarietyPresentation& C) {
  QuadraticPresentation qc = quadratic_presentation(C);
  auto engine = consequences_of(C);
  const auto monomials = enumerate(OperationSignature::single(), 3);
  std::vector<int> g = pairing_signs();
  // The Jacobi sum of S (x) U equals sum_m g_m m(a,b,c) (x) m(u,v,w); reducing
  // the left factor over the quotient basis leaves one right-hand polynomial
  // per basis element.
  std::size_t dimq = engine->dimension(3, Arithmetic::exact);
  std::vector<RatVec> coeff(dimq);
  for (std::uint32_t i = 0; i < monomials.size(); ++i)
    for (const auto& [b, x] : engine->normal_form(monomials[i])) coeff[b].emplace_back(i, x * g[i]);
  MonomialTable table(OperationSignature::single(), 3);
  SparseMatrix m;
  m.ncols = 12;
  const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (auto& row : coeff) {
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    MultilinearPoly p = table.to_poly(row);
    for (const auto& s : perms) m.rows.push_back(table.to_vector(act(s, p, OperationSignature::single())));
  }
  RelationSpace out = rref(m, RrefMode::exact);
  out.set_ambient(cubic_tag());
  return out;
}

bool lie_admissibility_check(const VarietyPresentation& C, const VarietyPresentation& D) {
  QuadraticPresentation qd = quadratic_presentation(D);
  return same_span(lie_admissibility_relations(C), qd.relations);
}

bool double_dual_check(const QuadraticPresentation& p) {
  QuadraticPresentation twice = koszul_dual(koszul_dual(p));
  RelationSpace original = p.relations;
  if (original.ambient().empty()) original.set_ambient(cubic_tag());
  return same_span(twice.relations, original);
}

std::vector<std::string> relation_texts(const RelationSpace& relations, const OperationSignature& sig, int degree,
                                        MonomialOrder order) {
  MonomialTable table(sig, degree, order);
  auto names = letter_names(degree);
  std::vector<std::string> out;
  for (const auto& row : relations.rows()) out.push_back(to_string(table.to_poly(row), sig, names, order) + " = 0");
  return out;
}

}  // namespace nialg
