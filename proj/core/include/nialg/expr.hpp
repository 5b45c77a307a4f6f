#pragma once

// Identity expressions: parsing, printing and expansion into polynomials.
//
//   equation := expr ['=' expr]
//   expr     := ['+'|'-'] term (('+'|'-') term)*
//   term     := number ['*' product] | product
//   product  := atom ['*' atom]
//   atom     := var | '(' expr ')' | '[' expr ',' expr ']' | '{' expr ',' expr '}'
//             | ident '(' expr ',' expr ')'
//
// Variables match [a-z][a-z0-9]*. A bare number is accepted only when it is
// zero. Chains such as a*b*c must be parenthesized.

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nialg/magma.hpp"
#include "nialg/rational.hpp"

namespace nialg {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), position_(pos) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

struct Expr {
  enum class Kind { variable, apply, scale, sum };

  Kind kind = Kind::sum;
  std::string name;  // variable name, or operation name for apply
  Rational coeff;    // scale only
  std::vector<Expr> children;

  static Expr variable(std::string name);
  static Expr apply(std::string op, Expr left, Expr right);
  static Expr scale(Rational c, Expr e);
  static Expr sum(std::vector<Expr> terms);
  static Expr zero() { return sum({}); }

  bool operator==(const Expr& other) const = default;
};

class Expression {
 public:
  Expression() = default;
  explicit Expression(Expr ast);

  const Expr& ast() const { return ast_; }
  // Distinct variable names in natural order (a < b, x2 < x10).
  const std::vector<std::string>& variables() const { return variables_; }

  bool operator==(const Expression& other) const { return ast_ == other.ast_; }

 private:
  Expr ast_;
  std::vector<std::string> variables_;
};

// Throws ParseError on syntax errors and unknown operation symbols.
Expression parse(std::string_view text, const OperationSignature& sig);

std::string to_string(const Expression& e);
std::string to_string(const Expr& e);

// Natural order on variable names.
bool natural_less(std::string_view a, std::string_view b);

// Expands into a sum of canonical monomials; variable i of variables()
// becomes label i, or label_of[i] when given. Repeated variables are kept.
MultilinearPoly expand(const Expression& e, const OperationSignature& sig);
MultilinearPoly expand(const Expression& e, const OperationSignature& sig, std::span<const int> label_of);

// Expression tree of a polynomial, using the given variable names.
Expression to_expression(const MultilinearPoly& p, const OperationSignature& sig,
                         std::span<const std::string> names);

}  // namespace nialg
