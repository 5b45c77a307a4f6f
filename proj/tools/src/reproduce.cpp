#include "reproduce.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>

#include "nialg/dual.hpp"
#include "nialg/nf.hpp"
#include "nialg/polar.hpp"
#include "parallel.hpp"

namespace nialg::cli {

using nlohmann::ordered_json;

namespace {

struct Check {
  std::string id;
  int criterion = 0;
  bool pass = false;
  ordered_json expected;
  ordered_json actual;
};

class Report {
 public:
  explicit Report(std::ostream* progress) : progress_(progress) {}

  void add(Check c) {
    if (progress_) *progress_ << (c.pass ? "pass " : "FAIL ") << c.id << std::endl;
    checks_.push_back(std::move(c));
  }

  ordered_json json() const {
    ordered_json out;
    ordered_json list = ordered_json::array();
    std::map<int, bool> by_criterion;
    std::size_t passed = 0;
    for (const auto& c : checks_) {
      ordered_json j;
      j["id"] = c.id;
      j["criterion"] = c.criterion;
      j["pass"] = c.pass;
      j["expected"] = c.expected;
      j["actual"] = c.actual;
      list.push_back(std::move(j));
      auto [it, fresh] = by_criterion.emplace(c.criterion, true);
      it->second = it->second && c.pass;
      passed += c.pass;
    }
    ordered_json crit = ordered_json::object();
    for (auto [k, v] : by_criterion) crit[std::to_string(k)] = v;
    out["checks"] = std::move(list);
    out["criteria"] = std::move(crit);
    out["passed"] = passed;
    out["failed"] = checks_.size() - passed;
    return out;
  }

 private:
  std::ostream* progress_;
  std::vector<Check> checks_;
};

MultilinearPoly parse_poly(const std::string& text, const OperationSignature& sig) {
  return expand(parse(text, sig), sig);
}

// Sum over orderings with the innermost pair increasing, minus the three
// pairings of products of pairs.
MultilinearPoly jordan_sum() {
  const OperationSignature sig = OperationSignature::anticommutator();
  auto leaf = [](int i) { return Monomial::leaf(i); };
  auto op = [](const Monomial& a, const Monomial& b) { return Monomial::product(0, a, b); };
  MultilinearPoly p;
  std::vector<int> idx{0, 1, 2, 3};
  do {
    if (idx[2] < idx[3]) p.add_canonical(op(leaf(idx[0]), op(leaf(idx[1]), op(leaf(idx[2]), leaf(idx[3])))), 1, sig);
    if (idx[0] < idx[1] && idx[2] < idx[3] && idx[1] < idx[3])
      p.add_canonical(op(op(leaf(idx[0]), leaf(idx[1])), op(leaf(idx[2]), leaf(idx[3]))), -1, sig);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return p;
}

ordered_json vec_json(const std::vector<std::size_t>& v) { return ordered_json(v); }

void dimensions(const nlohmann::json& table, const ReproduceOptions& opts, Report& rep) {
  const auto& entries = table.at("dimensions");
  std::vector<Check> out(entries.size());
  parallel_for(entries.size(), opts.threads, [&](std::size_t i) {
    const auto& e = entries[i];
    std::string name = e.at("variety");
    auto engine = consequences_of(name);
    std::vector<std::size_t> want = e.at("values").get<std::vector<std::size_t>>(), got;
    std::size_t top = std::min<std::size_t>(want.size(), static_cast<std::size_t>(std::max(opts.max_degree, 0)));
    want.resize(top);
    for (std::size_t n = 1; n <= top; ++n) got.push_back(engine->dimension(static_cast<int>(n)));
    out[i] = {"dimension/" + name, 1, got == want, vec_json(want), vec_json(got)};
  });
  for (auto& c : out) rep.add(std::move(c));
}

void duals(const nlohmann::json& table, Report& rep) {
  const VarietyLibrary& lib = VarietyLibrary::global();
  for (const auto& e : table.at("duals")) {
    std::string name = e.at("variety"), want = e.at("dual");
    DualResult d = koszul_dual(lib.get(name), lib);
    bool found = std::find(d.matches.begin(), d.matches.end(), want) != d.matches.end();
    rep.add({"dual/" + name, 2, found, want, d.matches});
    bool lie = lie_admissibility_check(lib.get(name), lib.get(want));
    rep.add({"lie-admissible/" + name, 2, lie, true, lie});
  }
  std::vector<std::string> failing;
  for (const auto& name : lib.names()) {
    QuadraticPresentation q;
    try {
      q = quadratic_presentation(lib.get(name));
    } catch (const NotQuadratic&) {
      continue;
    }
    if (!double_dual_check(q)) failing.push_back(name);
  }
  rep.add({"double-dual/library", 2, failing.empty(), ordered_json::array(), failing});
}

void polarizations(const nlohmann::json& table, Report& rep) {
  const OperationSignature psig = OperationSignature::polarized();
  const VarietyLibrary& lib = VarietyLibrary::global();
  for (const auto& e : table.at("polarizations")) {
    std::string name = e.at("variety");
    PolarizedPresentation pres = polarize(lib.get(name), lib);
    std::vector<std::string> want = e.at("identities").get<std::vector<std::string>>();
    std::vector<std::string> mismatched;
    for (const auto& text : want) {
      MultilinearPoly target = parse_poly(text, psig);
      bool ok = std::any_of(pres.identities.begin(), pres.identities.end(), [&](const PolarizedIdentity& id) {
        Rational lead = target.coefficient(id.leading);
        MultilinearPoly ours(id.leading);
        ours -= id.rhs;
        return lead != 0 && (lead * ours) == target;
      });
      if (!ok) mismatched.push_back(text);
    }
    bool pass = mismatched.empty() && pres.identities.size() == want.size();
    ordered_json actual;
    actual["identities"] = pres.texts();
    actual["unmatched"] = mismatched;
    rep.add({"polarize/" + name, 3, pass, want, actual});
  }
}

void derived(const nlohmann::json& table, const ReproduceOptions& opts, Report& rep) {
  const VarietyLibrary& lib = VarietyLibrary::global();
  for (const auto& e : table.at("derived")) {
    std::string name = e.at("variety");
    DerivedOp op = parse_derived_op(e.at("op").get<std::string>());
    const OperationSignature& sig = derived_signature(op);
    std::vector<Expression> gens;
    for (const auto& g : e.at("generators")) gens.push_back(parse(g.get<std::string>(), sig));
    std::size_t excess = e.at("excess");
    for (int degree : e.at("degrees").get<std::vector<int>>()) {
      if (degree > opts.max_degree) continue;
      RelationSpace found = derived_identities(lib.get(name), op, degree);
      std::vector<MultilinearPoly> polys;
      for (const auto& g : gens)
        for (auto& q : multilinearize(g, sig)) polys.push_back(q);
      Consequences engine(sig, polys, "generators");
      RelationSpace generated = engine.relation_space(degree);
      ordered_json actual;
      actual["rank"] = found.rank();
      actual["generated_rank"] = generated.rank();
      bool pass = found.contains(generated) && found.rank() == generated.rank() + excess;
      if (e.contains("members")) {
        MonomialTable t(sig, degree);
        ordered_json members = ordered_json::array();
        for (const auto& m : e.at("members")) {
          std::string text = m;
          MultilinearPoly p = text == "jordan-sum" ? jordan_sum() : parse_poly(text, sig);
          bool in = found.contains(t.to_vector(p));
          members.push_back(in);
          pass = pass && in;
        }
        actual["members"] = members;
      }
      ordered_json want;
      want["excess"] = excess;
      rep.add({"derived/" + name + "/" + std::string(to_string(op)) + "/" + std::to_string(degree), 4, pass, want,
               actual});
    }
  }
}

void identities(const nlohmann::json& table, Report& rep) {
  const VarietyLibrary& lib = VarietyLibrary::global();
  std::vector<std::string> failing;
  std::size_t n = 0;
  for (const auto& e : table.at("identities")) {
    VarietyPresentation v = lib.get(e.at("variety"));
    std::string text = e.at("identity");
    ++n;
    if (!is_identity(v, parse(text, v.signature))) failing.push_back(v.name + ": " + text);
  }
  ordered_json actual;
  actual["checked"] = n;
  actual["rejected"] = failing;
  rep.add({"identities/members", 5, failing.empty(), ordered_json::array(), actual});
}

void inclusions(const nlohmann::json& table, Report& rep) {
  const VarietyLibrary& lib = VarietyLibrary::global();
  for (const auto& e : table.at("inclusions")) {
    std::string sub = e.at("sub"), super = e.at("super");
    bool want = e.at("expected");
    bool got = includes(lib.get(sub), lib.get(super), e.at("max_degree").get<int>());
    rep.add({"includes/" + sub + "/" + super, 6, got == want, want, got});
  }
}

ordered_json failures_json(const std::vector<BasisFailure>& fs) {
  ordered_json out = ordered_json::array();
  for (std::size_t i = 0; i < std::min<std::size_t>(fs.size(), 10); ++i)
    out.push_back({{"monomial", fs[i].monomial}, {"reason", fs[i].reason}});
  return out;
}

void bases(const nlohmann::json& table, const ReproduceOptions& opts, Report& rep) {
  const auto& b = table.at("bases");
  const int full_top = std::min(b.at("full_max_degree").get<int>(), opts.max_degree);
  const int unique_top = std::min(b.at("unique_max_degree").get<int>(), opts.max_degree);
  const std::size_t trials = opts.unique_trials ? opts.unique_trials : b.at("unique_trials").get<std::size_t>();
  for (Family f : {Family::a1, Family::b1, Family::a2}) {
    std::string fam(to_string(f));
    std::vector<std::size_t> want = b.at("sizes").at(fam).get<std::vector<std::size_t>>(), got;
    for (std::size_t n = 1; n <= want.size(); ++n) got.push_back(enumerate_basis(f, static_cast<int>(n)).monomials.size());
    rep.add({"basis-size/" + fam, 7, got == want, vec_json(want), vec_json(got)});

    struct Job {
      int degree;
      VerifyMode mode;
    };
    std::vector<Job> jobs;
    for (int n = 1; n <= full_top; ++n) jobs.push_back({n, VerifyMode::full});
    for (int n : b.at("spanning_degrees").get<std::vector<int>>())
      if (n <= opts.max_degree) jobs.push_back({n, VerifyMode::spanning_only});
    std::vector<BasisReport> reports(jobs.size());
    parallel_for(jobs.size(), opts.threads, [&](std::size_t i) { reports[i] = verify_basis(f, jobs[i].degree, jobs[i].mode); });
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      const BasisReport& r = reports[i];
      ordered_json actual;
      actual["basis_size"] = r.basis_size;
      actual["dimension"] = r.dimension ? ordered_json(*r.dimension) : ordered_json(nullptr);
      actual["checked"] = r.checked;
      actual["failures"] = failures_json(r.failures);
      std::string mode = r.mode == VerifyMode::full ? "full" : "spanning";
      rep.add({"verify-basis/" + fam + "/" + mode + "/" + std::to_string(r.degree), 7, r.passed, "pass", actual});
    }

    std::vector<UniqueNfReport> uniq(static_cast<std::size_t>(std::max(unique_top, 0)));
    parallel_for(uniq.size(), opts.threads,
                 [&](std::size_t i) { uniq[i] = unique_nf_check(f, static_cast<int>(i) + 1, trials); });
    for (const auto& u : uniq) {
      ordered_json actual;
      actual["trials"] = u.trials;
      actual["failures"] = failures_json(u.failures);
      rep.add({"unique-nf/" + fam + "/" + std::to_string(u.degree), 7, u.passed, "pass", actual});
    }
  }
}

void distinct(const nlohmann::json& table, const ReproduceOptions& opts, Report& rep) {
  for (const auto& e : table.at("distinct")) {
    int degree = e.at("degree");
    if (degree > opts.max_degree) continue;
    std::string a = e.at("first"), b = e.at("second");
    std::size_t da = consequences_of(a)->dimension(degree), db = consequences_of(b)->dimension(degree);
    ordered_json actual;
    actual[a] = da;
    actual[b] = db;
    rep.add({"distinct/" + a + "/" + b + "/" + std::to_string(degree), 8, da != db, "different", actual});
  }
}

}  // namespace

ordered_json reproduce(const nlohmann::json& expected, const ReproduceOptions& opts, std::ostream* progress) {
  Report rep(progress);
  dimensions(expected, opts, rep);
  duals(expected, rep);
  polarizations(expected, rep);
  derived(expected, opts, rep);
  identities(expected, rep);
  inclusions(expected, rep);
  bases(expected, opts, rep);
  distinct(expected, opts, rep);
  ordered_json out;
  out["max_degree"] = opts.max_degree;
  ordered_json body = rep.json();
  for (auto& [k, v] : body.items()) out[k] = v;
  return out;
}

}  // namespace nialg::cli
