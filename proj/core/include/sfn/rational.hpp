#pragma once

#include <gmpxx.h>

#include <limits>
#include <stdexcept>
#include <string>

namespace sfn {

using Int = mpz_class;
using Rational = mpq_class;

/// p-adic order extended by +infinity (the valuation of zero).
/// Arithmetic saturates: inf + n = inf, min(inf, n) = n.
struct ExtOrder {
  long value = 0;
  bool infinite = false;

  static ExtOrder inf() { return ExtOrder{0, true}; }
  static ExtOrder of(long v) { return ExtOrder{v, false}; }

  bool at_least(long k) const { return infinite || value >= k; }

  friend bool operator==(const ExtOrder&, const ExtOrder&) = default;

  friend ExtOrder operator+(const ExtOrder& a, const ExtOrder& b) {
    if (a.infinite || b.infinite) return inf();
    return of(a.value + b.value);
  }

  friend ExtOrder min(const ExtOrder& a, const ExtOrder& b) {
    if (a.infinite) return b;
    if (b.infinite) return a;
    return of(a.value < b.value ? a.value : b.value);
  }

  std::string str() const { return infinite ? "inf" : std::to_string(value); }
};

bool is_prime(unsigned long n);

/// ord_p of a nonzero integer.
long int_valuation(const Int& n, unsigned long p);

/// ord_p(numerator) - ord_p(denominator); +inf for x = 0. Throws if p is not prime.
ExtOrder rat_valuation(const Rational& x, unsigned long p);

/// Parses "num", "num/den" or a decimal-free integer string. Throws on malformed input.
Rational parse_rational(const std::string& text);

std::string rational_str(const Rational& x);

}  // namespace sfn
