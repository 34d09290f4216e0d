#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "sfn/rational.hpp"

namespace sfn {

// Coefficient-ring hooks. Specialized for Rational here and for CycElem in
// cyclotomic.hpp; Poly and TruncSeries are written against these.
template <class T>
struct ring_traits;

template <>
struct ring_traits<Rational> {
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational from_int(long n) { return Rational(n); }
  static bool is_zero(const Rational& x) { return x == 0; }
  static Rational inverse(const Rational& x) {
    if (x == 0) throw std::domain_error("inverse of zero");
    return Rational(1) / x;
  }
};

/// Dense univariate polynomial, coefficients ascending. Zero polynomial has
/// an empty coefficient vector and degree -1.
template <class T>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  explicit Poly(const T& constant) : c_{constant} { trim(); }

  static Poly monomial(const T& coeff, std::size_t deg) {
    std::vector<T> v(deg + 1, ring_traits<T>::zero());
    v[deg] = coeff;
    return Poly(std::move(v));
  }

  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coeffs() const { return c_; }

  T coeff(std::size_t i) const {
    return i < c_.size() ? c_[i] : ring_traits<T>::zero();
  }

  const T& lead() const {
    if (c_.empty()) throw std::domain_error("lead of zero polynomial");
    return c_.back();
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<T> v(std::max(a.c_.size(), b.c_.size()), ring_traits<T>::zero());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) + b.coeff(i);
    return Poly(std::move(v));
  }

  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<T> v(std::max(a.c_.size(), b.c_.size()), ring_traits<T>::zero());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) - b.coeff(i);
    return Poly(std::move(v));
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<T> v(a.c_.size() + b.c_.size() - 1, ring_traits<T>::zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (ring_traits<T>::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] = v[i + j] + a.c_[i] * b.c_[j];
    }
    return Poly(std::move(v));
  }

  friend Poly operator*(const T& s, const Poly& a) {
    std::vector<T> v(a.c_);
    for (auto& x : v) x = s * x;
    return Poly(std::move(v));
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  T eval(const T& x) const {
    T acc = ring_traits<T>::zero();
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<T> v(c_.size() - 1, ring_traits<T>::zero());
    for (std::size_t i = 1; i < c_.size(); ++i)
      v[i - 1] = ring_traits<T>::from_int(static_cast<long>(i)) * c_[i];
    return Poly(std::move(v));
  }

  /// Euclidean division over a field; returns {quotient, remainder}.
  friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    Poly rem = a;
    Poly quot;
    const T lead_inv = ring_traits<T>::inverse(b.lead());
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
      std::size_t shift = static_cast<std::size_t>(rem.degree() - b.degree());
      T factor = rem.lead() * lead_inv;
      quot = quot + Poly::monomial(factor, shift);
      rem = rem - Poly::monomial(factor, shift) * b;
    }
    return {quot, rem};
  }

  Poly monic() const {
    if (is_zero()) return Poly();
    const T inv = ring_traits<T>::inverse(lead());
    return inv * *this;
  }

  /// Reversed coefficient order: w^deg * p(1/w).
  Poly reversed() const {
    std::vector<T> v(c_.rbegin(), c_.rend());
    return Poly(std::move(v));
  }

  static Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
      // keep every remainder monic: plain Euclid blows up coefficient sizes
      b = b.monic();
      auto [q, r] = divmod(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
  }

  /// Extended gcd: returns (g, u, v) with u*a + v*b = g, g monic (or zero).
  static std::tuple<Poly, Poly, Poly> extended_gcd(Poly a, Poly b) {
    Poly u0(ring_traits<T>::one()), v0, u1, v1(ring_traits<T>::one());
    while (!b.is_zero()) {
      // normalize each remainder: without this the coefficient sizes of the
      // remainder sequence grow exponentially
      const T lb = ring_traits<T>::inverse(b.lead());
      b = lb * b;
      u1 = lb * u1;
      v1 = lb * v1;
      auto [q, r] = divmod(a, b);
      Poly u2 = u0 - q * u1;
      Poly v2 = v0 - q * v1;
      a = std::move(b);
      b = std::move(r);
      u0 = std::move(u1);
      u1 = std::move(u2);
      v0 = std::move(v1);
      v1 = std::move(v2);
    }
    if (a.is_zero()) return {a, u0, v0};
    const T inv = ring_traits<T>::inverse(a.lead());
    return {inv * a, inv * u0, inv * v0};
  }

 private:
  void trim() {
    while (!c_.empty() && ring_traits<T>::is_zero(c_.back())) c_.pop_back();
  }

  std::vector<T> c_;
};

}  // namespace sfn
