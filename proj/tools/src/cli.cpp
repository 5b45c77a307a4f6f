#include "cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "nialg/dual.hpp"
#include "nialg/nf.hpp"
#include "nialg/polar.hpp"
#include "nialg/serialize.hpp"
#include "parallel.hpp"
#include "reproduce.hpp"

namespace nialg::cli {

using nlohmann::ordered_json;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Global {
  bool json = false;
  bool exact = false;
  std::size_t threads = 1;
};

int parse_int(std::string_view s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw UsageError("not an integer: '" + std::string(s) + "'");
  return v;
}

// "1..6", "4" or "1,3,5".
std::vector<int> parse_degrees(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) {
    auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_int(part));
      continue;
    }
    int lo = parse_int(std::string_view(part).substr(0, dots)), hi = parse_int(std::string_view(part).substr(dots + 2));
    if (lo > hi) throw UsageError("empty degree range '" + part + "'");
    for (int d = lo; d <= hi; ++d) out.push_back(d);
  }
  for (int d : out)
    if (d < 1 || d > kMaxDegree) throw UsageError("degree " + std::to_string(d) + " is out of range");
  return out;
}

ordered_json relations_json(const RelationSpace& space, const MonomialTable& table) {
  return ordered_json::parse(to_json(space, table));
}

void emit(std::ostream& out, const ordered_json& j) { out << j.dump(2) << "\n"; }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// One identity per line; blank lines and lines starting with '#' are skipped.
std::vector<Expression> read_identities(const std::string& path, const OperationSignature& sig) {
  std::vector<Expression> out;
  std::stringstream ss(read_file(path));
  for (std::string line; std::getline(ss, line);) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    out.push_back(parse(line, sig));
  }
  return out;
}

int cmd_dim(const Global& g, const std::string& name, const std::string& degrees, std::ostream& out) {
  VarietyPresentation v = VarietyLibrary::global().get(name);
  std::string spec = degrees.empty() ? (v.signature.size() == 1 && v.signature.all_plain() ? "1..6" : "1..4") : degrees;
  std::vector<int> ds = parse_degrees(spec);
  auto engine = consequences_of(v);
  std::vector<DimensionReport> reps;
  for (int d : ds) reps.push_back(engine->dimension_report(d, g.exact ? Arithmetic::exact : Arithmetic::modular));
  if (g.json) {
    ordered_json j;
    j["variety"] = v.name;
    j["arithmetic"] = g.exact ? "exact" : "modular";
    ordered_json list = ordered_json::array();
    for (const auto& r : reps)
      list.push_back({{"degree", r.degree},
                      {"dimension", r.dimension},
                      {"monomials", r.monomials},
                      {"certified_exact", r.certified_exact},
                      {"primes", r.primes}});
    j["dimensions"] = std::move(list);
    emit(out, j);
  } else {
    for (std::size_t i = 0; i < reps.size(); ++i) out << (i ? " " : "") << reps[i].dimension;
    out << "\n";
  }
  return kSuccess;
}

int cmd_check(const Global& g, const std::string& name, const std::string& identity, std::ostream& out) {
  VarietyPresentation v = VarietyLibrary::global().get(name);
  Expression e = parse(identity, v.signature);
  bool holds = is_identity(v, e);
  if (g.json)
    emit(out, {{"variety", v.name}, {"identity", to_string(e)}, {"holds", holds}});
  else
    out << (holds ? "true" : "false") << "\n";
  return holds ? kSuccess : kMismatch;
}

int cmd_dual(const Global& g, const std::string& name, std::ostream& out) {
  const VarietyLibrary& lib = VarietyLibrary::global();
  DualResult d = koszul_dual(lib.get(name), lib);
  const OperationSignature sig = OperationSignature::single();
  if (g.json) {
    ordered_json j;
    j["variety"] = name;
    j["matches"] = d.matches;
    j["relations"] = relations_json(d.dual.relations, MonomialTable(sig, 3));
    emit(out, j);
  } else {
    out << name << "! = ";
    if (d.matches.empty()) out << "(no library variety)";
    for (std::size_t i = 0; i < d.matches.size(); ++i) out << (i ? ", " : "") << d.matches[i];
    out << "\n";
    for (const auto& line : relation_texts(d.dual.relations, sig, 3)) out << "  " << line << "\n";
  }
  return kSuccess;
}

int cmd_polarize(const Global& g, const std::string& name, std::ostream& out) {
  PolarizedPresentation p = polarize(VarietyLibrary::global().get(name));
  if (g.json) {
    ordered_json j;
    j["variety"] = name;
    ordered_json ids = ordered_json::array();
    for (const auto& id : p.identities) ids.push_back({{"identity", to_string(id)}, {"source", id.source}});
    j["identities"] = std::move(ids);
    j["relations"] = relations_json(p.relations, MonomialTable(OperationSignature::polarized(), 3,
                                                               MonomialOrder::polarization));
    emit(out, j);
  } else {
    for (const auto& line : p.texts()) out << line << "\n";
  }
  return kSuccess;
}

int cmd_derived(const Global& g, const std::string& name, const std::string& op_text, int degree,
                const std::string& against, bool allow5, std::ostream& out) {
  DerivedOp op = parse_derived_op(op_text);
  const OperationSignature& sig = derived_signature(op);
  RelationSpace found = derived_identities(VarietyLibrary::global().get(name), op, degree, {allow5});
  std::optional<bool> follows;
  if (!against.empty()) follows = follows_from(found, read_identities(against, sig), sig, degree);
  MonomialTable table(sig, degree);
  if (g.json) {
    ordered_json j;
    j["variety"] = name;
    j["op"] = to_string(op);
    j["degree"] = degree;
    j["rank"] = found.rank();
    j["relations"] = relations_json(found, table);
    if (follows) j["follows"] = *follows;
    emit(out, j);
  } else {
    out << "rank " << found.rank() << " of " << table.size() << "\n";
    for (const auto& line : relation_texts(found, sig, degree)) out << "  " << line << "\n";
    if (follows) out << "follows: " << (*follows ? "true" : "false") << "\n";
  }
  return follows.value_or(true) ? kSuccess : kMismatch;
}

int cmd_includes(const Global& g, const std::string& sub, const std::string& super, int max_degree,
                 std::ostream& out) {
  const VarietyLibrary& lib = VarietyLibrary::global();
  bool r = includes(lib.get(sub), lib.get(super), max_degree);
  if (g.json)
    emit(out, {{"sub", sub}, {"super", super}, {"max_degree", max_degree}, {"includes", r}});
  else
    out << (r ? "true" : "false") << "\n";
  return r ? kSuccess : kMismatch;
}

int cmd_verify(const Global& g, const std::string& family, int degree, bool spanning, bool list, std::ostream& out) {
  Family f = parse_family(family);
  BasisReport r = verify_basis(f, degree, spanning ? VerifyMode::spanning_only : VerifyMode::full);
  const OperationSignature sig = OperationSignature::single();
  if (g.json) {
    ordered_json j;
    j["family"] = to_string(f);
    j["degree"] = r.degree;
    j["mode"] = spanning ? "spanning-only" : "full";
    j["basis_size"] = r.basis_size;
    j["dimension"] = r.dimension ? ordered_json(*r.dimension) : ordered_json(nullptr);
    j["checked"] = r.checked;
    j["status"] = r.passed ? "pass" : "fail";
    ordered_json fs = ordered_json::array();
    for (const auto& x : r.failures) fs.push_back({{"monomial", x.monomial}, {"reason", x.reason}});
    j["failures"] = std::move(fs);
    if (list) {
      ordered_json b = ordered_json::array();
      for (const auto& m : enumerate_basis(f, degree).monomials) b.push_back(to_string(m, sig));
      j["basis"] = std::move(b);
    }
    emit(out, j);
  } else {
    out << to_string(f) << " degree " << degree << (spanning ? " (spanning-only)" : " (full)") << ": basis "
        << r.basis_size;
    if (r.dimension) out << ", dimension " << *r.dimension;
    out << ", " << r.checked << " reductions, " << (r.passed ? "pass" : "FAIL") << "\n";
    for (const auto& x : r.failures) out << "  " << x.monomial << ": " << x.reason << "\n";
    if (list)
      for (const auto& m : enumerate_basis(f, degree).monomials) out << "  " << to_string(m, sig) << "\n";
  }
  return r.passed ? kSuccess : kMismatch;
}

int cmd_nf(const Global& g, const std::string& family, const std::string& text, std::size_t max_steps,
           std::ostream& out) {
  Family f = parse_family(family);
  const OperationSignature sig = OperationSignature::single();
  Expression e = parse(text, sig);
  MultilinearPoly p = expand(e, sig);
  MultilinearPoly nf = normal_form(f, p, {max_steps});
  const auto& names = e.variables();
  std::string rendered = to_string(nf, sig, names);
  if (g.json)
    emit(out, {{"family", to_string(f)}, {"input", to_string(e)}, {"normal_form", rendered}});
  else
    out << rendered << "\n";
  return kSuccess;
}

int cmd_reproduce(const Global& g, int max_degree, std::size_t trials, bool progress, std::ostream& out,
                  std::ostream& err) {
  ReproduceOptions opts;
  opts.max_degree = max_degree;
  opts.threads = g.threads;
  opts.unique_trials = trials;
  ordered_json report = reproduce(nlohmann::json::parse(expected_tables()), opts, progress ? &err : nullptr);
  if (g.json) {
    emit(out, report);
  } else {
    for (const auto& c : report["checks"])
      out << (c["pass"].get<bool>() ? "pass " : "FAIL ") << c["id"].get<std::string>() << "\n";
    for (const auto& [k, v] : report["criteria"].items())
      out << "criterion " << k << ": " << (v.get<bool>() ? "pass" : "FAIL") << "\n";
    out << report["passed"] << " passed, " << report["failed"] << " failed\n";
  }
  return report["failed"].get<std::size_t>() == 0 ? kSuccess : kMismatch;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Identities, dimensions, duals and normal forms of nonassociative varieties", "nialg"};
  app.require_subcommand(1);
  Global g;
  app.add_flag("--json", g.json, "Emit JSON");
  app.add_flag("--exact", g.exact, "Exact rational ranks instead of two-prime modular ranks");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);

  std::string variety, identity, degrees, op = "commutator", against, family, expr, sub, super;
  int degree = 0, max_degree = 4, rep_max = 8;
  bool spanning = false, list = false, allow5 = false, progress = false;
  std::size_t max_steps = RewriteOptions{}.max_steps, trials = 0;

  auto* dim = app.add_subcommand("dim", "Dimensions of the free algebra");
  dim->add_option("--variety", variety)->required();
  dim->add_option("--degrees", degrees, "e.g. 1..6 or 3,5 (default 1..6; 1..4 for multi-op signatures)");

  auto* check = app.add_subcommand("check-identity", "Decide whether an identity holds");
  check->add_option("--variety", variety)->required();
  check->add_option("--identity", identity)->required();

  auto* dual = app.add_subcommand("dual", "Koszul dual of a quadratic variety");
  dual->add_option("--variety", variety)->required();

  auto* pol = app.add_subcommand("polarize", "Commutator/anticommutator presentation");
  pol->add_option("--variety", variety)->required();

  auto* der = app.add_subcommand("derived", "Identities of the commutator or anticommutator algebra");
  der->add_option("--variety", variety)->required();
  der->add_option("--op", op)->check(CLI::IsMember({"commutator", "anticommutator", "minus", "plus", "-", "+"}));
  der->add_option("--degree", degree)->required()->check(CLI::Range(3, 5));
  der->add_option("--against", against, "File of generating identities to compare with");
  der->add_flag("--allow-degree-5", allow5);

  auto* inc = app.add_subcommand("includes", "Whether SUB is a subvariety of SUPER");
  inc->add_option("--sub", sub)->required();
  inc->add_option("--super", super)->required();
  inc->add_option("--max-degree", max_degree)->check(CLI::Range(1, kMaxDegree));

  auto* ver = app.add_subcommand("verify-basis", "Check a basis theorem at one degree");
  ver->add_option("--family", family)->required()->check(CLI::IsMember({"a1", "b1", "a2"}, CLI::ignore_case));
  ver->add_option("--degree", degree)->required()->check(CLI::Range(1, kMaxDegree));
  ver->add_flag("--spanning-only", spanning);
  ver->add_flag("--list", list, "Also print the basis monomials");

  auto* nf = app.add_subcommand("nf", "Normal form in a dual variety");
  nf->add_option("--family", family)->required()->check(CLI::IsMember({"a1", "b1", "a2"}, CLI::ignore_case));
  nf->add_option("--expr", expr)->required();
  nf->add_option("--max-steps", max_steps)->check(CLI::PositiveNumber);

  auto* rep = app.add_subcommand("reproduce", "Recompute every expected-value table and compare");
  rep->add_option("--max-degree", rep_max, "Skip table entries above this degree")->check(CLI::Range(1, kMaxDegree));
  rep->add_option("--trials", trials, "Override the random trial count of the uniqueness audit");
  rep->add_flag("--progress", progress, "Report each check on stderr as it finishes");

  for (auto* s : app.get_subcommands({})) s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (*dim) return cmd_dim(g, variety, degrees, out);
    if (*check) return cmd_check(g, variety, identity, out);
    if (*dual) return cmd_dual(g, variety, out);
    if (*pol) return cmd_polarize(g, variety, out);
    if (*der) return cmd_derived(g, variety, op, degree, against, allow5, out);
    if (*inc) return cmd_includes(g, sub, super, max_degree, out);
    if (*ver) return cmd_verify(g, family, degree, spanning, list, out);
    if (*nf) return cmd_nf(g, family, expr, max_steps, out);
    if (*rep) return cmd_reproduce(g, rep_max, trials, progress, out, err);
  } catch (const RewriteLimit& e) {
    err << "error: " << e.what() << "\n";
    return kMismatch;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace nialg::cli
