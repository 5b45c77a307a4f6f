#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace nialg {

using Rational = mpq_class;

// Accepts "p", "-p", "p/q"; the result is canonicalized.
Rational parse_rational(std::string_view text);

// "p" when the denominator is 1, "p/q" otherwise.
std::string to_string(const Rational& value);

}  // namespace nialg
