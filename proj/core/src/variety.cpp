#include "nialg/variety.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "builtin_varieties.hpp"

namespace nialg {

// ---------------------------------------------------------------------------
// Multilinearization

namespace {

void linearize_component(const std::vector<std::pair<Monomial, Rational>>& terms, const OperationSignature& sig,
                         MultilinearPoly& out) {
  // Labels present in the component and their multiplicities.
  std::map<int, int> mult;
  for (int l : terms.front().first.leaf_labels()) mult[l] += 1;
  std::map<int, int> base;
  int next = 0;
  for (auto& [l, r] : mult) {
    base[l] = next;
    next += r;
  }
  for (const auto& [m, c] : terms) {
    std::vector<std::uint8_t> tok(m.tokens().begin(), m.tokens().end());
    std::map<int, std::vector<std::size_t>> positions;
    for (std::size_t i = 0; i < tok.size(); ++i)
      if (!(tok[i] & Monomial::kOpTag)) positions[tok[i]].push_back(i);
    std::vector<std::vector<int>> perms;
    std::vector<int> vars;
    for (auto& [l, pos] : positions) {
      std::vector<int> p(pos.size());
      std::iota(p.begin(), p.end(), base[l]);
      perms.push_back(p);
      vars.push_back(l);
    }
    while (true) {
      for (std::size_t v = 0; v < vars.size(); ++v) {
        const auto& pos = positions[vars[v]];
        for (std::size_t k = 0; k < pos.size(); ++k) tok[pos[k]] = static_cast<std::uint8_t>(perms[v][k]);
      }
      out.add_canonical(Monomial::from_tokens(tok), c, sig);
      std::size_t v = 0;
      while (v < perms.size() && !std::next_permutation(perms[v].begin(), perms[v].end())) ++v;
      if (v == perms.size()) break;
    }
  }
}

}  // namespace

std::vector<MultilinearPoly> multilinearize(const MultilinearPoly& p, const OperationSignature& sig) {
  std::map<std::vector<int>, std::vector<std::pair<Monomial, Rational>>> components;
  for (const auto& [m, c] : p.terms()) {
    std::vector<int> labels = m.leaf_labels();
    int top = *std::max_element(labels.begin(), labels.end());
    std::vector<int> deg(static_cast<std::size_t>(top + 1), 0);
    for (int l : labels) deg[static_cast<std::size_t>(l)] += 1;
    while (!deg.empty() && deg.back() == 0) deg.pop_back();
    components[deg].emplace_back(m, c);
  }
  std::vector<MultilinearPoly> out;
  for (const auto& [deg, terms] : components) {
    MultilinearPoly lin;
    linearize_component(terms, sig, lin);
    if (!lin.is_zero()) out.push_back(standardize(lin));
  }
  return out;
}

std::vector<MultilinearPoly> multilinearize(const Expression& e, const OperationSignature& sig) {
  MultilinearPoly p;
  try {
    p = expand(e, sig);
  } catch (const std::invalid_argument& err) {
    throw SignatureMismatch(err.what());
  }
  return multilinearize(p, sig);
}

MultilinearPoly standardize(const MultilinearPoly& p) {
  if (p.is_zero()) return p;
  std::uint32_t mask = p.terms().begin()->first.label_mask();
  std::vector<int> map(32, 0);
  int next = 0;
  for (int l = 0; l < 32; ++l)
    if (mask & (1u << l)) map[static_cast<std::size_t>(l)] = next++;
  MultilinearPoly out;
  for (const auto& [m, c] : p.terms()) {
    if (m.label_mask() != mask) throw std::invalid_argument("polynomial terms use different variables");
    out.add(m.relabeled(map), c);
  }
  return out;
}

MultilinearPoly mirror(const MultilinearPoly& p, const OperationSignature& sig) {
  MultilinearPoly out;
  for (const auto& [m, c] : p.terms()) out.add_canonical(m.mirrored(), c, sig);
  return out;
}

// ---------------------------------------------------------------------------
// Presentations and the library

std::vector<MultilinearPoly> VarietyPresentation::generators() const {
  std::vector<MultilinearPoly> out;
  for (const auto& e : identities)
    for (auto& p : multilinearize(e, signature)) out.push_back(std::move(p));
  return out;
}

int VarietyPresentation::max_identity_degree() const {
  int d = 0;
  for (const auto& g : generators()) d = std::max(d, g.degree());
  return d;
}

VarietyDefinition parse_variety_json(std::string_view text, const std::string& source) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(source + ": " + e.what());
  }
  auto fail = [&](const std::string& msg) { throw std::invalid_argument(source + ": " + msg); };
  if (!j.is_object()) fail("expected a JSON object");
  static const std::set<std::string> known = {"name", "title", "extends", "mirrored_from", "ops", "identities"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) fail("unknown key '" + it.key() + "'");
  VarietyDefinition d;
  d.source = source;
  if (!j.contains("name") || !j["name"].is_string()) fail("missing string 'name'");
  d.name = j["name"].get<std::string>();
  if (j.contains("title")) d.title = j["title"].get<std::string>();
  if (j.contains("extends")) d.extends = j["extends"].get<std::string>();
  if (j.contains("mirrored_from")) d.mirrored_from = j["mirrored_from"].get<std::string>();
  if (!j.contains("ops") || !j["ops"].is_array() || j["ops"].empty()) fail("'ops' must be a non-empty array");
  for (const auto& op : j["ops"]) {
    if (!op.is_object() || !op.contains("name")) fail("each op needs a 'name'");
    Operation o;
    o.name = op["name"].get<std::string>();
    o.symmetry = parse_symmetry(op.value("symmetry", std::string("none")));
    d.ops.push_back(o);
  }
  if (!j.contains("identities") || !j["identities"].is_array()) fail("'identities' must be an array");
  for (const auto& id : j["identities"]) {
    if (!id.is_string()) fail("identities must be strings");
    d.identities.push_back(id.get<std::string>());
  }
  return d;
}

void VarietyLibrary::add(VarietyDefinition def) {
  std::string name = def.name;
  defs_[name] = std::move(def);
}

void VarietyLibrary::add_json(std::string_view text, const std::string& source) {
  add(parse_variety_json(text, source));
}

void VarietyLibrary::add_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) return;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    std::ifstream in(f);
    std::stringstream ss;
    ss << in.rdbuf();
    add_json(ss.str(), f.string());
  }
}

VarietyLibrary VarietyLibrary::builtin_only() {
  VarietyLibrary lib;
  for (const auto& [file, text] : builtin_variety_files()) lib.add_json(text, std::string("builtin:") + file);
  return lib;
}

const VarietyLibrary& VarietyLibrary::global() {
  static const VarietyLibrary lib = [] {
    VarietyLibrary l = builtin_only();
    if (const char* path = std::getenv("NIALG_VARIETY_PATH")) {
      std::string s(path);
      std::size_t start = 0;
      while (start <= s.size()) {
        std::size_t end = s.find(':', start);
        if (end == std::string::npos) end = s.size();
        if (end > start) l.add_directory(s.substr(start, end - start));
        start = end + 1;
      }
    }
    return l;
  }();
  return lib;
}

std::vector<std::string> VarietyLibrary::names() const {
  std::vector<std::string> out;
  for (const auto& [n, d] : defs_) out.push_back(n);
  return out;
}

VarietyPresentation VarietyLibrary::get(const std::string& name) const {
  std::vector<std::string> stack;
  return resolve(name, stack);
}

VarietyPresentation VarietyLibrary::resolve(const std::string& name, std::vector<std::string>& stack) const {
  auto it = defs_.find(name);
  if (it == defs_.end()) throw UnknownVariety(name);
  if (std::find(stack.begin(), stack.end(), name) != stack.end())
    throw std::invalid_argument("cyclic variety definition through '" + name + "'");
  stack.push_back(name);
  const VarietyDefinition& d = it->second;
  VarietyPresentation v;
  v.name = d.name;
  v.title = d.title.empty() ? d.name : d.title;
  v.signature = OperationSignature(d.ops);
  v.extends = d.extends;
  v.mirrored_from = d.mirrored_from;
  if (d.extends) {
    VarietyPresentation parent = resolve(*d.extends, stack);
    if (!(parent.signature == v.signature))
      throw SignatureMismatch(d.source + ": signature differs from parent '" + *d.extends + "'");
    v.identities = parent.identities;
  }
  v.own_begin = v.identities.size();
  if (d.mirrored_from) {
    VarietyPresentation src = resolve(*d.mirrored_from, stack);
    if (!(src.signature == v.signature))
      throw SignatureMismatch(d.source + ": signature differs from '" + *d.mirrored_from + "'");
    for (std::size_t i = src.own_begin; i < src.identities.size(); ++i)
      for (const auto& p : multilinearize(src.identities[i], src.signature)) {
        auto names = letter_names(p.degree());
        v.identities.push_back(to_expression(mirror(p, v.signature), v.signature, names));
      }
  }
  for (const auto& text : d.identities) {
    try {
      v.identities.push_back(parse(text, v.signature));
    } catch (const ParseError& e) {
      throw std::invalid_argument(d.source + ": " + e.what());
    }
  }
  stack.pop_back();
  return v;
}

// ---------------------------------------------------------------------------
// Consequence engine

std::size_t ambient_size(const OperationSignature& sig, int n) {
  if (n < 1 || n > kMaxDegree) throw std::invalid_argument("degree out of range");
  auto binom = [](int a, int b) {
    unsigned __int128 r = 1;
    for (int i = 1; i <= b; ++i) r = r * static_cast<unsigned>(a - b + i) / static_cast<unsigned>(i);
    return r;
  };
  std::vector<unsigned __int128> a(static_cast<std::size_t>(n + 1), 0);
  a[1] = 1;
  for (int k = 2; k <= n; ++k)
    for (std::size_t op = 0; op < sig.size(); ++op)
      for (int s = 1; s < k; ++s) {
        unsigned __int128 ways =
            sig.op(op).symmetry == Symmetry::none ? binom(k, s) : binom(k - 1, s - 1);
        a[static_cast<std::size_t>(k)] += ways * a[static_cast<std::size_t>(s)] * a[static_cast<std::size_t>(k - s)];
      }
  unsigned __int128 r = a[static_cast<std::size_t>(n)];
  if (r > std::numeric_limits<std::size_t>::max()) throw std::overflow_error("ambient size overflow");
  return static_cast<std::size_t>(r);
}

std::string ambient_tag(const OperationSignature& sig, int n, MonomialOrder order) {
  return sig.key() + "/" + std::to_string(n) + (order == MonomialOrder::polarization ? "/pol" : "");
}

Consequences::Consequences(OperationSignature sig, std::vector<MultilinearPoly> generators, std::string name)
    : name_(std::move(name)), sig_(sig), gens_(std::move(generators)), tower_(sig, gens_) {
  max_deg_ = tower_.max_generator_degree();
}

Consequences::Consequences(const VarietyPresentation& v) : Consequences(v.signature, v.generators(), v.name) {}

void Consequences::ensure_exact(int n) {
  std::lock_guard lock(mu_);
  if (!tower_.eliminated(n) || n > tower_.built()) tower_.build(n);
}

std::size_t Consequences::modular_rank_locked(int n, std::uint32_t p, std::vector<std::size_t>* pivots,
                                              const std::vector<RatVec>& rows) {
  PrimeField f(p);
  Echelon<PrimeField> ech(f, static_cast<std::uint32_t>(tower_.columns(n)));
  std::vector<SparseVec<std::uint32_t>> red(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& [c, x] : rows[i]) {
      std::uint32_t v = f.from(x);
      if (v) red[i].emplace_back(c, v);
    }
  for (std::size_t i : QuotientTower<PrimeField>::row_order(red)) {
    if (ech.insert(red[i]) && pivots) pivots->push_back(i);
    SparseVec<std::uint32_t>().swap(red[i]);
    if (ech.rank() == ech.ncols()) break;
  }
  return ech.rank();
}

DimensionReport Consequences::dimension_report(int n, Arithmetic mode) {
  if (n < 1) throw std::invalid_argument("degree must be at least 1");
  std::lock_guard lock(mu_);
  if (auto it = dims_.find(n); it != dims_.end() && (it->second.certified_exact || mode == Arithmetic::modular))
    return it->second;
  DimensionReport rep;
  rep.degree = n;
  rep.monomials = ambient_size(sig_, n);
  if (mode == Arithmetic::exact || tower_.eliminated(n)) {
    tower_.build(n);
    rep.dimension = tower_.dimension(n);
    rep.certified_exact = true;
  } else {
    tower_.prepare(n);
    std::vector<RatVec> rows = tower_.level_rows(n);
    for (auto& r : rows) r = primitive(r);
    std::size_t next = 0;
    bool done = false;
    while (!done && next + 1 < kPrimes.size()) {
      std::vector<std::size_t> piv;
      std::size_t ra = modular_rank_locked(n, kPrimes[next], &piv, rows);
      std::size_t rb = modular_rank_locked(n, kPrimes[next + 1], nullptr, rows);
      rep.primes.push_back(kPrimes[next]);
      rep.primes.push_back(kPrimes[next + 1]);
      next += 2;
      if (ra == rb) {
        rep.dimension = tower_.columns(n) - ra;
        pivot_rows_[n] = std::move(piv);
        done = true;
      }
    }
    if (!done) {
      tower_.build(n);
      rep.dimension = tower_.dimension(n);
      rep.certified_exact = true;
    }
  }
  rep.rank = rep.monomials - rep.dimension;
  dims_[n] = rep;
  return rep;
}

bool Consequences::contains(const MultilinearPoly& p) {
  if (p.is_zero()) return true;
  if (!p.is_multilinear()) throw std::invalid_argument("polynomial is not multilinear");
  MultilinearPoly s = standardize(p);
  ensure_exact(s.degree());
  std::lock_guard lock(mu_);
  return tower_.contains(s);
}

RatVec Consequences::normal_form(const MultilinearPoly& p) {
  if (p.is_zero()) return {};
  MultilinearPoly s = standardize(p);
  std::lock_guard lock(mu_);
  tower_.finalize(s.degree());
  return tower_.normal_form(s);
}

RatVec Consequences::normal_form(const Monomial& m) {
  if (m.label_mask() != (1u << m.degree()) - 1) return normal_form(MultilinearPoly(m));
  std::lock_guard lock(mu_);
  tower_.finalize(m.degree());
  return tower_.normal_form(m);
}

MultilinearPoly Consequences::basis_element(int n, std::uint32_t b) {
  std::lock_guard lock(mu_);
  tower_.finalize(n);
  return tower_.basis_element(n, b);
}

std::vector<MultilinearPoly> Consequences::basis(int n) {
  std::lock_guard lock(mu_);
  tower_.finalize(n);
  std::vector<MultilinearPoly> out;
  for (std::uint32_t b = 0; b < tower_.dimension(n); ++b) out.push_back(tower_.basis_element(n, b));
  return out;
}

MultilinearPoly Consequences::representative(int n, const RatVec& coords) {
  std::lock_guard lock(mu_);
  tower_.finalize(n);
  MultilinearPoly out;
  for (const auto& [b, c] : coords) out += c * tower_.basis_element(n, b);
  return out;
}

RelationSpace Consequences::relation_space(int n, MonomialOrder order) {
  std::lock_guard lock(mu_);
  auto key = std::make_pair(n, static_cast<int>(order));
  if (auto it = spaces_.find(key); it != spaces_.end()) return it->second;
  MonomialTable table(sig_, n, order);
  tower_.finalize(n);
  std::vector<MultilinearPoly> reps;
  for (std::uint32_t b = 0; b < tower_.dimension(n); ++b) reps.push_back(tower_.basis_element(n, b));
  SparseMatrix m;
  m.ncols = static_cast<std::uint32_t>(table.size());
  for (const Monomial& mono : table.monomials()) {
    MultilinearPoly row(mono);
    for (const auto& [b, c] : tower_.normal_form(mono)) row -= c * reps[b];
    if (!row.is_zero()) m.rows.push_back(table.to_vector(row));
  }
  RelationSpace space = rref(m, RrefMode::exact);
  space.set_ambient(ambient_tag(sig_, n, order));
  spaces_.emplace(key, space);
  return space;
}

ConsequenceSpace Consequences::space(int n, MonomialOrder order) {
  return ConsequenceSpace(name_, n, relation_space(n, order), order);
}

namespace {

std::string engine_key(const VarietyPresentation& v, const std::vector<MultilinearPoly>& gens) {
  std::string key = v.name + "|" + v.signature.key();
  for (const auto& g : gens) key += "|" + to_string(g, v.signature);
  return key;
}

}  // namespace

std::shared_ptr<Consequences> consequences_of(const VarietyPresentation& v) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<Consequences>> cache;
  auto gens = v.generators();
  std::string key = engine_key(v, gens);
  std::lock_guard lock(mu);
  auto& slot = cache[key];
  if (!slot) slot = std::make_shared<Consequences>(v.signature, std::move(gens), v.name);
  return slot;
}

std::shared_ptr<Consequences> consequences_of(const std::string& name) {
  return consequences_of(VarietyLibrary::global().get(name));
}

ConsequenceSpace consequences(const VarietyPresentation& v, int n) {
  auto engine = consequences_of(v);
  if (n < engine->max_generator_degree())
    throw std::invalid_argument("degree " + std::to_string(n) + " is below the defining identities of " + v.name);
  return engine->space(n);
}

std::size_t dimension(const VarietyPresentation& v, int n, Arithmetic mode) {
  return consequences_of(v)->dimension(n, mode);
}

bool is_identity(const VarietyPresentation& v, const MultilinearPoly& p) {
  auto engine = consequences_of(v);
  for (const auto& q : multilinearize(p, v.signature))
    if (!engine->contains(q)) return false;
  return true;
}

bool is_identity(const VarietyPresentation& v, const Expression& e) {
  auto engine = consequences_of(v);
  for (const auto& q : multilinearize(e, v.signature))
    if (!engine->contains(q)) return false;
  return true;
}

bool includes(const VarietyPresentation& V, const VarietyPresentation& W, int max_degree) {
  if (!(V.signature == W.signature))
    throw SignatureMismatch("includes: '" + V.name + "' and '" + W.name + "' have different signatures");
  auto ev = consequences_of(V);
  auto ew = consequences_of(W);
  for (int n = 2; n <= max_degree; ++n) {
    // Each m - rep(NF_W(m)) spans the degree-n consequences of W.
    if (ew->dimension(n, Arithmetic::exact) == ambient_size(W.signature, n)) continue;
    std::vector<MultilinearPoly> reps = ew->basis(n);
    for (const Monomial& m : enumerate(W.signature, n)) {
      MultilinearPoly row(m);
      for (const auto& [b, c] : ew->normal_form(m)) row -= c * reps[b];
      if (!ev->contains(row)) return false;
    }
  }
  return true;
}

}  // namespace nialg
