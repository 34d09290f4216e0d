#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "sfn/cyclotomic.hpp"
#include "sfn/polynomial.hpp"

namespace sfn {

/// Truncated formal power series: coefficients of z^0 .. z^T, all exact.
/// Every operation records the tightest valid truncation of its output;
/// comparisons past the recorded truncation are refused.
template <class T>
class TruncSeries {
 public:
  explicit TruncSeries(std::size_t truncation)
      : c_(truncation + 1, ring_traits<T>::zero()) {}
  explicit TruncSeries(std::vector<T> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw std::invalid_argument("TruncSeries: needs a constant term");
  }

  std::size_t truncation() const { return c_.size() - 1; }

  const T& operator[](std::size_t n) const {
    if (n >= c_.size()) throw std::out_of_range("TruncSeries: index past truncation");
    return c_[n];
  }

  void set(std::size_t n, T v) {
    if (n >= c_.size()) throw std::out_of_range("TruncSeries: index past truncation");
    c_[n] = std::move(v);
  }

  bool agrees_with(const TruncSeries& other, std::size_t up_to) const {
    if (up_to > truncation() || up_to > other.truncation())
      throw std::out_of_range("agrees_with: comparison past truncation");
    for (std::size_t n = 0; n <= up_to; ++n)
      if (!(c_[n] == other.c_[n])) return false;
    return true;
  }

  friend bool operator==(const TruncSeries& a, const TruncSeries& b) { return a.c_ == b.c_; }

  friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
    std::size_t t = std::min(a.truncation(), b.truncation());
    TruncSeries out(t);
    for (std::size_t n = 0; n <= t; ++n) out.c_[n] = a.c_[n] + b.c_[n];
    return out;
  }

  friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
    std::size_t t = std::min(a.truncation(), b.truncation());
    TruncSeries out(t);
    for (std::size_t n = 0; n <= t; ++n) out.c_[n] = a.c_[n] - b.c_[n];
    return out;
  }

  friend TruncSeries operator-(const TruncSeries& a) {
    TruncSeries out(a.truncation());
    for (std::size_t n = 0; n < a.c_.size(); ++n) out.c_[n] = ring_traits<T>::zero() - a.c_[n];
    return out;
  }

  friend TruncSeries operator*(const T& s, const TruncSeries& a) {
    TruncSeries out(a.truncation());
    for (std::size_t n = 0; n < a.c_.size(); ++n) out.c_[n] = s * a.c_[n];
    return out;
  }

  /// Cauchy product to the shared truncation.
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    std::size_t t = std::min(a.truncation(), b.truncation());
    TruncSeries out(t);
    for (std::size_t i = 0; i <= t; ++i) {
      if (ring_traits<T>::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; i + j <= t; ++j) out.c_[i + j] = out.c_[i + j] + a.c_[i] * b.c_[j];
    }
    return out;
  }

 private:
  std::vector<T> c_;
};

/// z d/dz: multiplies the n-th coefficient by n.
template <class T>
TruncSeries<T> delta(const TruncSeries<T>& v) {
  TruncSeries<T> out(v.truncation());
  for (std::size_t n = 0; n <= v.truncation(); ++n)
    out.set(n, ring_traits<T>::from_int(static_cast<long>(n)) * v[n]);
  return out;
}

/// s-fold logarithmic integration: a_n -> a_n / n^s. Rejects nonzero constant terms.
template <class T>
TruncSeries<T> int_s(const TruncSeries<T>& v, unsigned s) {
  if (!ring_traits<T>::is_zero(v[0]))
    throw std::invalid_argument("int_s: nonzero constant term");
  TruncSeries<T> out(v.truncation());
  for (std::size_t n = 1; n <= v.truncation(); ++n) {
    T c = v[n];
    if (s > 0 && !ring_traits<T>::is_zero(c)) {
      T den = ring_traits<T>::one();
      for (unsigned i = 0; i < s; ++i) den = den * ring_traits<T>::from_int(static_cast<long>(n));
      c = c * ring_traits<T>::inverse(den);
    }
    out.set(n, std::move(c));
  }
  return out;
}

/// Cartier operator C_k: keeps every k-th coefficient; truncation floor(T/k).
template <class T>
TruncSeries<T> cartier(const TruncSeries<T>& v, unsigned long k) {
  if (k == 0) throw std::invalid_argument("cartier: k must be positive");
  TruncSeries<T> out(v.truncation() / k);
  for (std::size_t n = 0; n <= out.truncation(); ++n) out.set(n, v[n * k]);
  return out;
}

/// Substitution z -> l^s z^l (epsilon_l for s = 0); truncation kept at T.
template <class T>
TruncSeries<T> epsilon(const TruncSeries<T>& v, unsigned long l, unsigned s) {
  if (l == 0) throw std::invalid_argument("epsilon: l must be positive");
  TruncSeries<T> out(v.truncation());
  T scale = ring_traits<T>::one();
  for (unsigned i = 0; i < s; ++i) scale = scale * ring_traits<T>::from_int(static_cast<long>(l));
  for (std::size_t n = 0; n * l <= v.truncation(); ++n) out.set(n * l, scale * v[n]);
  return out;
}

/// Hadamard (coefficient-wise) product; truncation min(T_V, T_W).
template <class T>
TruncSeries<T> hadamard(const TruncSeries<T>& v, const TruncSeries<T>& w) {
  std::size_t t = std::min(v.truncation(), w.truncation());
  TruncSeries<T> out(t);
  for (std::size_t n = 0; n <= t; ++n) out.set(n, v[n] * w[n]);
  return out;
}

/// exp of a series with zero constant term: n e_n = sum_k k v_k e_{n-k}.
template <class T>
TruncSeries<T> series_exp(const TruncSeries<T>& v) {
  if (!ring_traits<T>::is_zero(v[0]))
    throw std::invalid_argument("series_exp: nonzero constant term");
  const std::size_t t = v.truncation();
  TruncSeries<T> out(t);
  out.set(0, ring_traits<T>::one());
  for (std::size_t n = 1; n <= t; ++n) {
    T acc = ring_traits<T>::zero();
    for (std::size_t k = 1; k <= n; ++k) {
      if (ring_traits<T>::is_zero(v[k])) continue;
      acc = acc + ring_traits<T>::from_int(static_cast<long>(k)) * v[k] * out[n - k];
    }
    out.set(n, acc * ring_traits<T>::inverse(ring_traits<T>::from_int(static_cast<long>(n))));
  }
  return out;
}

/// log of a series with unit constant term: l_n = y_n - (1/n) sum_{k<n} k l_k y_{n-k}.
template <class T>
TruncSeries<T> series_log(const TruncSeries<T>& y) {
  if (!(y[0] == ring_traits<T>::one()))
    throw std::invalid_argument("series_log: constant term must be 1");
  const std::size_t t = y.truncation();
  TruncSeries<T> out(t);
  for (std::size_t n = 1; n <= t; ++n) {
    T acc = ring_traits<T>::zero();
    for (std::size_t k = 1; k < n; ++k) {
      if (ring_traits<T>::is_zero(out[k])) continue;
      acc = acc + ring_traits<T>::from_int(static_cast<long>(k)) * out[k] * y[n - k];
    }
    out.set(n, y[n] - acc * ring_traits<T>::inverse(ring_traits<T>::from_int(static_cast<long>(n))));
  }
  return out;
}

/// Multiplicative inverse of a series with invertible constant term.
template <class T>
TruncSeries<T> series_inverse(const TruncSeries<T>& y) {
  const std::size_t t = y.truncation();
  TruncSeries<T> out(t);
  const T inv0 = ring_traits<T>::inverse(y[0]);
  out.set(0, inv0);
  for (std::size_t n = 1; n <= t; ++n) {
    T acc = ring_traits<T>::zero();
    for (std::size_t k = 1; k <= n; ++k) acc = acc + y[k] * out[n - k];
    out.set(n, ring_traits<T>::zero() - inv0 * acc);
  }
  return out;
}

/// Extracts q_1..q_T with Y = prod (1 - q_n z^n)^{-1}, peeling factors in
/// increasing degree; unique degree by degree. Requires Y(0) = 1.
template <class T>
std::vector<T> product_form_extract(const TruncSeries<T>& y) {
  if (!(y[0] == ring_traits<T>::one()))
    throw std::invalid_argument("product_form_extract: constant term must be 1");
  const std::size_t t = y.truncation();
  TruncSeries<T> rem = y;
  std::vector<T> q(t + 1, ring_traits<T>::zero());  // q[0] unused
  for (std::size_t n = 1; n <= t; ++n) {
    q[n] = rem[n];
    if (ring_traits<T>::is_zero(q[n])) continue;
    // multiply rem by (1 - q_n z^n)
    TruncSeries<T> factor(t);
    factor.set(0, ring_traits<T>::one());
    factor.set(n, ring_traits<T>::zero() - q[n]);
    rem = rem * factor;
  }
  q.erase(q.begin());
  return q;  // q[0] is q_1
}

/// Inverse of product_form_extract: Y = prod_{n<=T} (1 - q_n z^n)^{-1}.
template <class T>
TruncSeries<T> product_form_expand(const std::vector<T>& q) {
  const std::size_t t = q.size();
  TruncSeries<T> out(t);
  out.set(0, ring_traits<T>::one());
  for (std::size_t n = 1; n <= t; ++n) {
    const T& qn = q[n - 1];
    if (ring_traits<T>::is_zero(qn)) continue;
    TruncSeries<T> factor(t);  // geometric expansion of (1 - q_n z^n)^{-1}
    T power = ring_traits<T>::one();
    for (std::size_t k = 0; k * n <= t; ++k) {
      factor.set(k * n, power);
      power = power * qn;
    }
    out = out * factor;
  }
  return out;
}

/// Integer power of a series by repeated squaring (truncated).
template <class T>
TruncSeries<T> series_pow(const TruncSeries<T>& y, unsigned long e) {
  TruncSeries<T> acc(y.truncation());
  acc.set(0, ring_traits<T>::one());
  TruncSeries<T> base = y;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return acc;
}

/// Coefficient-wise Frobenius (zeta -> zeta^p); Frob_p(z) = z.
inline TruncSeries<CycElem> frobenius(const TruncSeries<CycElem>& v, unsigned long p) {
  TruncSeries<CycElem> out(v.truncation());
  for (std::size_t n = 0; n <= v.truncation(); ++n) out.set(n, frobenius(v[n], p));
  return out;
}

template <class T>
TruncSeries<CycElem> promote_series(const TruncSeries<T>& v, unsigned long conductor);

inline TruncSeries<CycElem> promote_series(const TruncSeries<Rational>& v, unsigned long conductor) {
  TruncSeries<CycElem> out(v.truncation());
  for (std::size_t n = 0; n <= v.truncation(); ++n)
    out.set(n, CycElem(v[n]).promote(conductor));
  return out;
}

inline TruncSeries<CycElem> promote_series(const TruncSeries<CycElem>& v, unsigned long conductor) {
  TruncSeries<CycElem> out(v.truncation());
  for (std::size_t n = 0; n <= v.truncation(); ++n) out.set(n, v[n].promote(conductor));
  return out;
}

}  // namespace sfn
