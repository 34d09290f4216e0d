#include "sfn/rational.hpp"

namespace sfn {

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  Int z(static_cast<unsigned long>(n));
  return mpz_probab_prime_p(z.get_mpz_t(), 32) != 0;
}

long int_valuation(const Int& n, unsigned long p) {
  if (n == 0) throw std::invalid_argument("int_valuation: zero has infinite order");
  Int rem;
  Int base(static_cast<unsigned long>(p));
  return static_cast<long>(mpz_remove(rem.get_mpz_t(), n.get_mpz_t(), base.get_mpz_t()));
}

ExtOrder rat_valuation(const Rational& x, unsigned long p) {
  if (!is_prime(p)) throw std::invalid_argument("rat_valuation: p must be prime");
  if (x == 0) return ExtOrder::inf();
  long vn = x.get_num() == 0 ? 0 : int_valuation(x.get_num(), p);
  long vd = int_valuation(x.get_den(), p);
  return ExtOrder::of(vn - vd);
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("parse_rational: empty string");
  Rational r;
  if (mpq_set_str(r.get_mpq_t(), text.c_str(), 10) != 0)
    throw std::invalid_argument("parse_rational: malformed rational '" + text + "'");
  if (r.get_den() == 0) throw std::invalid_argument("parse_rational: zero denominator in '" + text + "'");
  r.canonicalize();
  return r;
}

std::string rational_str(const Rational& x) { return x.get_str(); }

}  // namespace sfn
