#pragma once

#include <memory>
#include <string>
#include <vector>

#include "sfn/polynomial.hpp"
#include "sfn/rational.hpp"

namespace sfn {

unsigned long euler_phi(unsigned long n);

/// Cached per-conductor data: the cyclotomic polynomial Phi_M and the
/// reductions of zeta^k (k < M) to the power basis 1, zeta, ..., zeta^{phi(M)-1}.
class CycField {
 public:
  static std::shared_ptr<const CycField> get(unsigned long conductor);

  unsigned long conductor() const { return conductor_; }
  unsigned long degree() const { return degree_; }
  const std::vector<Int>& cyclotomic_poly() const { return phi_; }
  const std::vector<Rational>& zeta_power(unsigned long k) const { return zeta_powers_[k % conductor_]; }

 private:
  explicit CycField(unsigned long conductor);

  unsigned long conductor_;
  unsigned long degree_;
  std::vector<Int> phi_;
  std::vector<std::vector<Rational>> zeta_powers_;
};

/// Element of Q(zeta_M) in the power integral basis, fully reduced mod Phi_M.
/// Conductor-1 elements (plain rationals) promote implicitly in mixed
/// arithmetic; any other conductor mismatch throws.
class CycElem {
 public:
  CycElem() : CycElem(Rational(0)) {}
  explicit CycElem(const Rational& r, unsigned long conductor = 1);
  explicit CycElem(long n) : CycElem(Rational(n)) {}

  static CycElem zeta(unsigned long conductor);
  static CycElem from_coords(unsigned long conductor, std::vector<Rational> coords);
  /// The t-th power of a fixed generator of the group of roots of unity in
  /// Q(zeta_M); the group has order M for even M and 2M for odd M.
  static CycElem root_of_unity(unsigned long conductor, unsigned long t);
  static unsigned long roots_of_unity_order(unsigned long conductor) {
    return conductor % 2 == 0 ? conductor : 2 * conductor;
  }

  unsigned long conductor() const { return field_->conductor(); }
  const std::vector<Rational>& coords() const { return coords_; }

  bool is_zero() const;
  bool is_rational() const;
  Rational rational_value() const;  // throws if not rational

  /// Re-expresses the element in Q(zeta_L); requires conductor | L.
  CycElem promote(unsigned long target_conductor) const;

  CycElem inverse() const;
  CycElem pow(const Int& e) const;  // negative exponents invert

  /// The automorphism zeta -> zeta^u for gcd(u, M) = 1.
  CycElem galois_apply(unsigned long u) const;

  friend CycElem operator+(const CycElem& a, const CycElem& b);
  friend CycElem operator-(const CycElem& a, const CycElem& b);
  friend CycElem operator*(const CycElem& a, const CycElem& b);
  friend CycElem operator/(const CycElem& a, const CycElem& b);
  friend CycElem operator-(const CycElem& a);
  friend bool operator==(const CycElem& a, const CycElem& b);

  std::string str() const;  // canonical text form M:[c0,c1,...]

 private:
  CycElem(std::shared_ptr<const CycField> field, std::vector<Rational> coords)
      : field_(std::move(field)), coords_(std::move(coords)) {}

  std::shared_ptr<const CycField> field_;
  std::vector<Rational> coords_;  // length phi(M)
};

/// Frobenius lift zeta -> zeta^p; requires p prime, p coprime to the conductor.
CycElem frobenius(const CycElem& x, unsigned long p);

/// min over power-basis coordinates of ord_p; +inf iff x = 0.
/// Requires p prime and coprime to the conductor.
ExtOrder padic_order(const CycElem& x, unsigned long p);

/// True iff x - y lies in p^k O_p, i.e. padic_order(x - y, p) >= k.
bool congruent_mod(const CycElem& x, const CycElem& y, unsigned long p, long k);

/// Parses the canonical text form "M:[c0,c1,...]" or a bare rational.
CycElem parse_cyc(const std::string& text);

template <>
struct ring_traits<CycElem> {
  static CycElem zero() { return CycElem(); }
  static CycElem one() { return CycElem(1L); }
  static CycElem from_int(long n) { return CycElem(n); }
  static bool is_zero(const CycElem& x) { return x.is_zero(); }
  static CycElem inverse(const CycElem& x) { return x.inverse(); }
};

}  // namespace sfn
