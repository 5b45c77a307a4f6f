#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

#include "nialg/rational.hpp"

namespace nialg {

// Primes just below 2^31, used for two-prime rank certification.
inline constexpr std::array<std::uint32_t, 6> kPrimes = {2147483647u, 2147483629u, 2147483587u,
                                                         2147483579u, 2147483563u, 2147483549u};

struct RationalField {
  using value_type = Rational;
  static constexpr bool exact = true;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from(const Rational& q) const { return q; }
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type inv(const value_type& a) const { return 1 / a; }
  // acc -= f * b
  void sub_mul(value_type& acc, const value_type& f, const value_type& b) const { acc -= f * b; }
  Rational to_rational(const value_type& a) const { return a; }
};

class DenominatorDivisible : public std::runtime_error {
 public:
  DenominatorDivisible() : std::runtime_error("prime divides a denominator") {}
};

struct PrimeField {
  using value_type = std::uint32_t;
  static constexpr bool exact = false;

  PrimeField() : PrimeField(kPrimes[0]) {}
  explicit PrimeField(std::uint32_t prime)
      : p(prime), barrett(static_cast<std::uint64_t>(~std::uint64_t{0} / prime)) {}

  std::uint32_t p;
  std::uint64_t barrett;  // floor((2^64 - 1) / p)

  // x mod p for any 64-bit x.
  value_type reduce(std::uint64_t x) const {
    std::uint64_t q = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * barrett) >> 64);
    std::uint64_t r = x - q * p;
    while (r >= p) r -= p;
    return static_cast<value_type>(r);
  }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_integer(const mpz_class& z) const {
    mpz_class r = z % p;
    if (r < 0) r += p;
    return static_cast<value_type>(r.get_ui());
  }
  value_type from(const Rational& q) const {
    value_type d = from_integer(q.get_den());
    if (d == 0) throw DenominatorDivisible();
    return mul(from_integer(q.get_num()), inv(d));
  }
  bool is_zero(value_type a) const { return a == 0; }
  value_type add(value_type a, value_type b) const {
    std::uint64_t s = std::uint64_t(a) + b;
    return static_cast<value_type>(s >= p ? s - p : s);
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + (p - b); }
  value_type mul(value_type a, value_type b) const {
    return reduce(std::uint64_t(a) * b);
  }
  void sub_mul(value_type& acc, value_type f, value_type b) const {
    acc = reduce(acc + std::uint64_t(p - f) * b);
  }
  value_type neg(value_type a) const { return a == 0 ? 0 : p - a; }
  value_type inv(value_type a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    std::int64_t t = 0, new_t = 1, r = p, new_r = a;
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      std::int64_t tmp = t - q * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - q * new_r;
      r = new_r;
      new_r = tmp;
    }
    if (t < 0) t += p;
    return static_cast<value_type>(t);
  }
  // Symmetric representative; only meaningful for small images.
  Rational to_rational(value_type a) const {
    if (a > p / 2) return Rational(-static_cast<long>(p - a));
    return Rational(static_cast<long>(a));
  }
};

}  // namespace nialg
