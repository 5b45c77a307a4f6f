#include "nialg/expr.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace nialg {

Expr Expr::variable(std::string name) {
  Expr e;
  e.kind = Kind::variable;
  e.name = std::move(name);
  return e;
}

Expr Expr::apply(std::string op, Expr left, Expr right) {
  Expr e;
  e.kind = Kind::apply;
  e.name = std::move(op);
  e.children.push_back(std::move(left));
  e.children.push_back(std::move(right));
  return e;
}

Expr Expr::scale(Rational c, Expr inner) {
  Expr e;
  e.kind = Kind::scale;
  e.coeff = std::move(c);
  e.children.push_back(std::move(inner));
  return e;
}

Expr Expr::sum(std::vector<Expr> terms) {
  Expr e;
  e.kind = Kind::sum;
  e.children = std::move(terms);
  return e;
}

bool natural_less(std::string_view a, std::string_view b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    bool da = std::isdigit(static_cast<unsigned char>(a[i])), db = std::isdigit(static_cast<unsigned char>(b[j]));
    if (da && db) {
      std::size_t ie = i, je = j;
      while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
      while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
      std::string_view na = a.substr(i, ie - i), nb = b.substr(j, je - j);
      while (na.size() > 1 && na[0] == '0') na.remove_prefix(1);
      while (nb.size() > 1 && nb[0] == '0') nb.remove_prefix(1);
      if (na.size() != nb.size()) return na.size() < nb.size();
      if (na != nb) return na < nb;
      i = ie;
      j = je;
      continue;
    }
    if (a[i] != b[j]) return a[i] < b[j];
    ++i;
    ++j;
  }
  if ((a.size() - i) != (b.size() - j)) return a.size() - i < b.size() - j;
  return a < b;
}

namespace {

void collect_variables(const Expr& e, std::set<std::string>& out) {
  if (e.kind == Expr::Kind::variable) out.insert(e.name);
  for (const auto& c : e.children) collect_variables(c, out);
}

}  // namespace

Expression::Expression(Expr ast) : ast_(std::move(ast)) {
  std::set<std::string> vars;
  collect_variables(ast_, vars);
  variables_.assign(vars.begin(), vars.end());
  std::sort(variables_.begin(), variables_.end(), [](const std::string& a, const std::string& b) {
    return natural_less(a, b);
  });
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const OperationSignature& sig) : text_(text), sig_(sig) {}

  Expr equation() {
    Expr lhs = expr();
    skip();
    if (peek() == '=') {
      ++pos_;
      Expr rhs = expr();
      skip();
      if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
      return subtract(std::move(lhs), std::move(rhs));
    }
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return lhs;
  }

 private:
  static bool is_zero_expr(const Expr& e) { return e.kind == Expr::Kind::sum && e.children.empty(); }

  static Expr negate(Expr t) {
    if (t.kind == Expr::Kind::scale) {
      if (t.coeff == -1) return std::move(t.children[0]);
      t.coeff = -t.coeff;
      return t;
    }
    return Expr::scale(Rational(-1), std::move(t));
  }

  static Expr subtract(Expr lhs, Expr rhs) {
    if (is_zero_expr(rhs)) return lhs;
    std::vector<Expr> terms;
    if (lhs.kind == Expr::Kind::sum) {
      terms = std::move(lhs.children);
    } else {
      terms.push_back(std::move(lhs));
    }
    if (rhs.kind == Expr::Kind::sum) {
      for (auto& t : rhs.children) terms.push_back(negate(std::move(t)));
    } else {
      terms.push_back(negate(std::move(rhs)));
    }
    if (terms.size() == 1) return std::move(terms[0]);
    return Expr::sum(std::move(terms));
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  Expr expr() {
    std::vector<Expr> terms;
    bool first = true;
    while (true) {
      char c = peek();
      int sign = 1;
      if (c == '+' || c == '-') {
        sign = c == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        break;
      }
      Expr t = term(sign);
      terms.push_back(std::move(t));
      first = false;
      c = peek();
      if (c != '+' && c != '-') break;
    }
    if (terms.size() == 1) return std::move(terms[0]);
    return Expr::sum(std::move(terms));
  }

  Expr term(int sign) {
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      Rational q = number();
      if (peek() == '*') {
        ++pos_;
        Expr p = product();
        return Expr::scale(sign * q, std::move(p));
      }
      if (sgn(q) != 0) {
        pos_ = start;
        fail("a constant term must be zero");
      }
      return Expr::zero();
    }
    Expr p = product();
    if (sign < 0) return Expr::scale(Rational(-1), std::move(p));
    return p;
  }

  Rational number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      std::size_t den = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (den == pos_) fail("missing denominator");
    }
    if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
      fail("non-rational coefficient");
    }
    try {
      return parse_rational(text_.substr(start, pos_ - start));
    } catch (const std::invalid_argument& e) {
      pos_ = start;
      fail(e.what());
    }
  }

  void require_op(const std::string& name, std::size_t at) {
    if (!sig_.find(name)) throw ParseError("unknown operation '" + name + "'", at);
  }

  Expr product() {
    Expr a = atom();
    if (peek() == '*') {
      std::size_t at = pos_;
      ++pos_;
      require_op("*", at);
      Expr b = atom();
      if (peek() == '*') fail("ambiguous product chain; add parentheses");
      return Expr::apply("*", std::move(a), std::move(b));
    }
    return a;
  }

  Expr pair_args(char close, std::string op, std::size_t at) {
    Expr l = expr();
    expect(',');
    Expr r = expr();
    expect(close);
    require_op(op, at);
    return Expr::apply(std::move(op), std::move(l), std::move(r));
  }

  Expr atom() {
    char c = peek();
    std::size_t at = pos_;
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      expect(')');
      return e;
    }
    if (c == '[') {
      ++pos_;
      return pair_args(']', "[,]", at);
    }
    if (c == '{') {
      ++pos_;
      return pair_args('}', "{,}", at);
    }
    if (std::islower(static_cast<unsigned char>(c)) || c == '_' || std::isupper(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string id(text_.substr(start, pos_ - start));
      if (peek() == '(') {
        ++pos_;
        return pair_args(')', id, at);
      }
      bool ok = std::islower(static_cast<unsigned char>(id[0]));
      for (char ch : id)
        if (!(std::islower(static_cast<unsigned char>(ch)) || std::isdigit(static_cast<unsigned char>(ch)))) ok = false;
      if (!ok) throw ParseError("invalid variable name '" + id + "'", start);
      return Expr::variable(std::move(id));
    }
    if (c == '\0') fail("unexpected end of input");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const OperationSignature& sig_;
  std::size_t pos_ = 0;
};

void print(std::ostringstream& os, const Expr& e);

bool is_star(const Expr& e) { return e.kind == Expr::Kind::apply && e.name == "*"; }

void print_operand(std::ostringstream& os, const Expr& e) {
  bool paren = e.kind == Expr::Kind::sum ? !e.children.empty() : (e.kind == Expr::Kind::scale || is_star(e));
  if (paren) os << '(';
  print(os, e);
  if (paren) os << ')';
}

// Prints a term with magnitude |c| and the given child.
void print_scaled(std::ostringstream& os, const Rational& mag, const Expr& child, bool force_coeff) {
  if (mag != 1 || force_coeff) {
    os << to_string(mag) << '*';
    bool paren = child.kind == Expr::Kind::scale || (child.kind == Expr::Kind::sum && !child.children.empty());
    if (paren) os << '(';
    print(os, child);
    if (paren) os << ')';
    return;
  }
  bool paren = child.kind == Expr::Kind::scale || (child.kind == Expr::Kind::sum && !child.children.empty());
  if (paren) os << '(';
  print(os, child);
  if (paren) os << ')';
}

void print_term(std::ostringstream& os, const Expr& t, bool first) {
  bool negative = t.kind == Expr::Kind::scale && t.coeff < 0;
  if (first) {
    if (negative) os << '-';
  } else {
    os << (negative ? " - " : " + ");
  }
  if (t.kind == Expr::Kind::scale) {
    print_scaled(os, abs(t.coeff), t.children[0], t.coeff == 1);
    return;
  }
  if (t.kind == Expr::Kind::sum && !t.children.empty()) {
    os << '(';
    print(os, t);
    os << ')';
    return;
  }
  print(os, t);
}

void print(std::ostringstream& os, const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::variable:
      os << e.name;
      return;
    case Expr::Kind::apply:
      if (e.name == "*") {
        print_operand(os, e.children[0]);
        os << '*';
        print_operand(os, e.children[1]);
      } else if (e.name == "[,]" || e.name == "{,}") {
        os << e.name[0];
        print(os, e.children[0]);
        os << ',';
        print(os, e.children[1]);
        os << e.name[2];
      } else {
        os << e.name << '(';
        print(os, e.children[0]);
        os << ',';
        print(os, e.children[1]);
        os << ')';
      }
      return;
    case Expr::Kind::scale:
      print_term(os, e, true);
      return;
    case Expr::Kind::sum:
      if (e.children.empty()) {
        os << '0';
        return;
      }
      for (std::size_t i = 0; i < e.children.size(); ++i) print_term(os, e.children[i], i == 0);
      return;
  }
}

MultilinearPoly expand_rec(const Expr& e, const OperationSignature& sig,
                           const std::vector<std::string>& vars, std::span<const int> label_of) {
  switch (e.kind) {
    case Expr::Kind::variable: {
      auto it = std::find(vars.begin(), vars.end(), e.name);
      auto idx = static_cast<std::size_t>(it - vars.begin());
      int label = label_of.empty() ? static_cast<int>(idx) : label_of[idx];
      return MultilinearPoly(Monomial::leaf(label));
    }
    case Expr::Kind::apply: {
      auto op = sig.find(e.name);
      if (!op) throw std::invalid_argument("unknown operation '" + e.name + "'");
      MultilinearPoly l = expand_rec(e.children[0], sig, vars, label_of);
      MultilinearPoly r = expand_rec(e.children[1], sig, vars, label_of);
      MultilinearPoly out;
      for (const auto& [ml, cl] : l.terms())
        for (const auto& [mr, cr] : r.terms()) {
          if (ml.degree() + mr.degree() > kMaxDegree) throw std::invalid_argument("expression degree too large");
          Monomial m = Monomial::product(static_cast<int>(*op), ml, mr);
          auto canon = canonicalize_unchecked(m, sig);
          if (canon) out.add(canon->monomial, cl * cr * canon->sign);
        }
      return out;
    }
    case Expr::Kind::scale: {
      MultilinearPoly p = expand_rec(e.children[0], sig, vars, label_of);
      p *= e.coeff;
      return p;
    }
    case Expr::Kind::sum: {
      MultilinearPoly out;
      for (const auto& t : e.children) out += expand_rec(t, sig, vars, label_of);
      return out;
    }
  }
  return {};
}

Expr monomial_expr(const Monomial& m, const OperationSignature& sig, std::span<const std::string> names) {
  if (m.is_leaf()) return Expr::variable(names[static_cast<std::size_t>(m.label())]);
  return Expr::apply(sig.op(static_cast<std::size_t>(m.op())).name, monomial_expr(m.left(), sig, names),
                     monomial_expr(m.right(), sig, names));
}

}  // namespace

Expression parse(std::string_view text, const OperationSignature& sig) {
  Parser p(text, sig);
  return Expression(p.equation());
}

std::string to_string(const Expr& e) {
  std::ostringstream os;
  print(os, e);
  return os.str();
}

std::string to_string(const Expression& e) { return to_string(e.ast()); }

MultilinearPoly expand(const Expression& e, const OperationSignature& sig) {
  return expand_rec(e.ast(), sig, e.variables(), {});
}

MultilinearPoly expand(const Expression& e, const OperationSignature& sig, std::span<const int> label_of) {
  if (label_of.size() != e.variables().size()) throw std::invalid_argument("label map size mismatch");
  return expand_rec(e.ast(), sig, e.variables(), label_of);
}

Expression to_expression(const MultilinearPoly& p, const OperationSignature& sig,
                         std::span<const std::string> names) {
  std::vector<Expr> terms;
  for (const auto& [m, c] : p.terms()) {
    Expr me = monomial_expr(m, sig, names);
    terms.push_back(c == 1 ? std::move(me) : Expr::scale(c, std::move(me)));
  }
  if (terms.size() == 1) return Expression(std::move(terms[0]));
  return Expression(Expr::sum(std::move(terms)));
}

}  // namespace nialg
