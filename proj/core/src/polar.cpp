#include "nialg/polar.hpp"

#include <iostream>

#include "nialg/dual.hpp"

namespace nialg {

namespace {

MultilinearPoly polarize_monomial(const Monomial& m, const OperationSignature& target) {
  if (m.is_leaf()) return MultilinearPoly(m);
  MultilinearPoly l = polarize_monomial(m.left(), target);
  MultilinearPoly r = polarize_monomial(m.right(), target);
  MultilinearPoly out;
  const Rational half(1, 2);
  for (const auto& [a, ca] : l.terms())
    for (const auto& [b, cb] : r.terms()) {
      Rational c = half * ca * cb;
      out.add_canonical(Monomial::product(0, a, b), c, target);
      out.add_canonical(Monomial::product(1, a, b), c, target);
    }
  return out;
}

MultilinearPoly expand_monomial(const Monomial& m, const OperationSignature& sig) {
  if (m.is_leaf()) return MultilinearPoly(m);
  MultilinearPoly l = expand_monomial(m.left(), sig);
  MultilinearPoly r = expand_monomial(m.right(), sig);
  Symmetry s = sig.op(static_cast<std::size_t>(m.op())).symmetry;
  MultilinearPoly out;
  for (const auto& [a, ca] : l.terms())
    for (const auto& [b, cb] : r.terms()) {
      Rational c = ca * cb;
      out.add(Monomial::product(0, a, b), c);
      if (s == Symmetry::antisymmetric) out.add(Monomial::product(0, b, a), -c);
      if (s == Symmetry::symmetric) out.add(Monomial::product(0, b, a), c);
    }
  return out;
}

const int kS3[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};

bool pure_commutator(const RatVec& row, const MonomialTable& table) {
  for (const auto& [c, x] : row)
    for (auto t : table.monomial(c).tokens())
      if ((t & Monomial::kOpTag) && (t & 0x7f) != 0) return false;
  return true;
}

}  // namespace

MultilinearPoly polarize_poly(const MultilinearPoly& p) {
  const OperationSignature target = OperationSignature::polarized();
  MultilinearPoly out;
  for (const auto& [m, c] : p.terms()) out += c * polarize_monomial(m, target);
  return out;
}

MultilinearPoly expand_derived(const MultilinearPoly& p, const OperationSignature& sig) {
  MultilinearPoly out;
  for (const auto& [m, c] : p.terms()) out += c * expand_monomial(m, sig);
  return out;
}

std::string to_string(const PolarizedIdentity& id) {
  const OperationSignature sig = OperationSignature::polarized();
  auto names = letter_names(id.leading.degree());
  return to_string(id.leading, sig, names) + " = " + to_string(id.rhs, sig, names, MonomialOrder::polarization);
}

std::vector<std::string> PolarizedPresentation::texts() const {
  std::vector<std::string> out;
  for (const auto& id : identities) out.push_back(to_string(id));
  return out;
}

PolarizedPresentation polarize(const VarietyPresentation& v, const VarietyLibrary& lib) {
  QuadraticPresentation q = quadratic_presentation(v);
  const OperationSignature psig = OperationSignature::polarized();
  MonomialTable single(OperationSignature::single(), 3);
  MonomialTable table(psig, 3, MonomialOrder::polarization);
  const std::uint32_t ncols = static_cast<std::uint32_t>(table.size());

  PolarizedPresentation out;
  out.variety = v.name;
  RelationSpace inherited(ncols, {}, ambient_tag(psig, 3, MonomialOrder::polarization));
  if (v.extends) {
    PolarizedPresentation parent = polarize(lib.get(*v.extends), lib);
    inherited = parent.relations;
    out.identities = std::move(parent.identities);
  }

  SparseMatrix own;
  own.ncols = ncols;
  for (const auto& row : q.relations.rows()) {
    RatVec pr = inherited.remainder(table.to_vector(polarize_poly(single.to_poly(row))));
    if (!pr.empty()) own.rows.push_back(std::move(pr));
  }
  RelationSpace fresh = rref(own, RrefMode::exact);

  SparseMatrix all;
  all.ncols = ncols;
  all.rows = inherited.rows();
  all.rows.insert(all.rows.end(), fresh.rows().begin(), fresh.rows().end());
  out.relations = rref(all, RrefMode::exact);
  out.relations.set_ambient(ambient_tag(psig, 3, MonomialOrder::polarization));

  std::vector<const RatVec*> candidates;
  for (const auto& r : fresh.rows())
    if (pure_commutator(r, table)) candidates.push_back(&r);
  for (const auto& r : fresh.rows())
    if (!pure_commutator(r, table)) candidates.push_back(&r);

  Echelon<RationalField> closure(RationalField{}, ncols);
  for (const auto& r : inherited.rows()) closure.insert(r);
  for (const RatVec* r : candidates) {
    if (closure.contains(*r)) continue;
    MultilinearPoly p = table.to_poly(*r);
    for (const auto& s : kS3) closure.insert(table.to_vector(act(s, p, psig)));
    PolarizedIdentity id;
    id.leading = table.monomial(r->front().first);
    for (auto it = r->begin() + 1; it != r->end(); ++it) id.rhs.add(table.monomial(it->first), -it->second);
    id.source = v.name;
    out.identities.push_back(std::move(id));
  }
  return out;
}

const OperationSignature& derived_signature(DerivedOp op) {
  static const OperationSignature comm = OperationSignature::commutator();
  static const OperationSignature anti = OperationSignature::anticommutator();
  return op == DerivedOp::commutator ? comm : anti;
}

std::string_view to_string(DerivedOp op) { return op == DerivedOp::commutator ? "commutator" : "anticommutator"; }

DerivedOp parse_derived_op(std::string_view text) {
  if (text == "commutator" || text == "minus" || text == "-") return DerivedOp::commutator;
  if (text == "anticommutator" || text == "plus" || text == "+") return DerivedOp::anticommutator;
  throw std::invalid_argument("unknown derived operation '" + std::string(text) + "'");
}

RelationSpace derived_identities(const VarietyPresentation& v, DerivedOp op, int degree, DerivedOptions opts) {
  if (degree < 3 || degree > 5 || (degree == 5 && !opts.allow_degree_5))
    throw std::out_of_range("derived identities are computed for degrees 3 and 4");
  if (degree == 5) std::clog << "warning: degree-5 derived identities are outside the validated range\n";
  if (v.signature.size() != 1 || v.signature.op(0).symmetry != Symmetry::none)
    throw SignatureMismatch(v.name + ": derived operations need a single plain product");
  const OperationSignature& dsig = derived_signature(op);
  auto engine = consequences_of(v);
  MonomialTable table(dsig, degree);
  std::size_t dimq = engine->dimension(degree, Arithmetic::exact);
  // Row b of the transpose collects coordinate b of every expanded monomial.
  std::vector<RatVec> coords(dimq);
  for (std::uint32_t i = 0; i < table.size(); ++i)
    for (const auto& [b, x] : engine->normal_form(expand_derived(MultilinearPoly(table.monomial(i)), dsig)))
      coords[b].emplace_back(i, x);
  SparseMatrix m;
  m.ncols = static_cast<std::uint32_t>(table.size());
  for (auto& r : coords)
    if (!r.empty()) m.rows.push_back(std::move(r));
  RelationSpace out = nullspace(m);
  out.set_ambient(ambient_tag(dsig, degree));
  return out;
}

bool follows_from(const RelationSpace& found, const std::vector<MultilinearPoly>& generators,
                  const OperationSignature& sig, int degree) {
  std::vector<MultilinearPoly> gens;
  for (const auto& g : generators)
    for (auto& q : multilinearize(g, sig))
      if (!q.is_zero() && q.degree() <= degree) gens.push_back(standardize(q));
  Consequences engine(sig, std::move(gens), "generators");
  return same_span(found, engine.relation_space(degree));
}

bool follows_from(const RelationSpace& found, const std::vector<Expression>& generators,
                  const OperationSignature& sig, int degree) {
  std::vector<MultilinearPoly> gens;
  for (const auto& e : generators)
    for (auto& q : multilinearize(e, sig))
      if (!q.is_zero()) gens.push_back(q);
  return follows_from(found, gens, sig, degree);
}

}  // namespace nialg
