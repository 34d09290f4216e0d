#include "sfn/verifier.hpp"

#include <algorithm>
#include <numeric>

namespace sfn {

std::size_t CongruenceReport::failed() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const CheckRecord& c) { return !c.pass; }));
}

std::optional<CheckRecord> CongruenceReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.pass) return c;
  return std::nullopt;
}

void CongruenceReport::append(const CongruenceReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  skipped.insert(skipped.end(), other.skipped.begin(), other.skipped.end());
}

const CheckRecord* CongruenceReport::find(const std::string& kind, std::uint64_t m, unsigned r) const {
  for (const auto& c : checks)
    if (c.kind == kind && c.m == m && c.r == r) return &c;
  return nullptr;
}

namespace {

std::uint64_t pow_u64(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  while (exp--) r *= base;
  return r;
}

unsigned ord_p_u64(std::uint64_t n, unsigned long p) {
  unsigned r = 0;
  while (n % p == 0) {
    n /= p;
    ++r;
  }
  return r;
}

int moebius(std::uint64_t n) {
  int mu = 1;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    n /= d;
    if (n % d == 0) return 0;
    mu = -mu;
  }
  if (n > 1) mu = -mu;
  return mu;
}

CycElem scale_by_p_power(const CycElem& x, unsigned long p, long exponent) {
  Int pk;
  mpz_ui_pow_ui(pk.get_mpz_t(), p, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational s = exponent >= 0 ? Rational(pk) : Rational(1) / Rational(pk);
  return CycElem(s) * x;
}

}  // namespace

std::vector<unsigned long> primes_up_to(unsigned long bound) {
  std::vector<unsigned long> out;
  for (unsigned long p = 2; p <= bound; ++p)
    if (is_prime(p)) out.push_back(p);
  return out;
}

CongruenceReport check_local_s(const SequenceSource& src, unsigned long p, unsigned s,
                               std::uint64_t m_max, unsigned r_max) {
  if (!is_prime(p)) throw std::invalid_argument("check_local_s: p must be prime");
  if (src.conductor % p == 0)
    throw std::domain_error("check_local_s: prime " + std::to_string(p) +
                            " ramifies in conductor " + std::to_string(src.conductor));
  if (src.excluded_primes.count(p))
    throw std::domain_error("check_local_s: prime " + std::to_string(p) +
                            " is in the declared exclusion set of '" + src.name + "'");
  if (src.horizon < m_max * pow_u64(p, r_max))
    throw std::invalid_argument("check_local_s: horizon " + std::to_string(src.horizon) +
                                " below m_max * p^r_max");

  CongruenceReport report;
  std::set<std::uint64_t> touched;
  for (std::uint64_t m = 1; m <= m_max; ++m) {
    for (unsigned r = 1; r <= r_max; ++r) {
      const std::uint64_t lo = m * pow_u64(p, r - 1), hi = lo * p;
      touched.insert(lo);
      touched.insert(hi);
      CheckRecord rec;
      rec.kind = "direct";
      rec.p = p;
      rec.s = s;
      rec.m = m;
      rec.r = r;
      rec.required = static_cast<long>(s) * r;
      rec.order = padic_order(frobenius(src.at(lo), p) - src.at(hi), p);
      rec.pass = rec.order.at_least(rec.required);
      report.checks.push_back(std::move(rec));
    }
  }
  for (std::uint64_t n : touched) {
    CheckRecord rec;
    rec.kind = "integrality";
    rec.p = p;
    rec.s = s;
    rec.n = n;
    rec.required = 0;
    rec.order = padic_order(src.at(n), p);
    rec.pass = rec.order.at_least(0);
    report.checks.push_back(std::move(rec));
  }
  return report;
}

CongruenceReport verify_s_sequence(const SequenceSource& src, unsigned s,
                                   const std::vector<unsigned long>& primes,
                                   std::uint64_t m_max, unsigned r_max) {
  CongruenceReport report;
  for (unsigned long p : primes) {
    if (src.conductor % p == 0) {
      report.skipped.push_back("p=" + std::to_string(p) + ": ramified in conductor " +
                               std::to_string(src.conductor));
      continue;
    }
    if (src.excluded_primes.count(p)) {
      report.skipped.push_back("p=" + std::to_string(p) + ": in exclusion set S");
      continue;
    }
    report.append(check_local_s(src, p, s, m_max, r_max));
  }
  return report;
}

std::vector<CycElem> sequence_window(const SequenceSource& src, std::uint64_t horizon) {
  std::vector<CycElem> out;
  out.reserve(horizon);
  for (std::uint64_t n = 1; n <= horizon; ++n) out.push_back(src.at(n));
  return out;
}

std::vector<CycElem> a_to_b(const std::vector<CycElem>& a, unsigned s) {
  std::vector<CycElem> b(a.size());
  for (std::uint64_t n = 1; n <= a.size(); ++n) {
    CycElem acc;
    for (std::uint64_t d = 1; d <= n; ++d) {
      if (n % d != 0) continue;
      int mu = moebius(n / d);
      if (mu == 0) continue;
      acc = mu > 0 ? acc + a[d - 1] : acc - a[d - 1];
    }
    Int ns;
    mpz_ui_pow_ui(ns.get_mpz_t(), static_cast<unsigned long>(n), s);
    b[n - 1] = CycElem(Rational(1) / Rational(ns)) * acc;
  }
  return b;
}

std::vector<CycElem> b_to_a(const std::vector<CycElem>& b, unsigned s) {
  std::vector<CycElem> a(b.size());
  for (std::uint64_t n = 1; n <= b.size(); ++n) {
    CycElem acc;
    for (std::uint64_t d = 1; d <= n; ++d) {
      if (n % d != 0) continue;
      Int ds;
      mpz_ui_pow_ui(ds.get_mpz_t(), static_cast<unsigned long>(d), s);
      acc = acc + CycElem(Rational(ds)) * b[d - 1];
    }
    a[n - 1] = acc;
  }
  return a;
}

std::vector<CycElem> a_to_q(const std::vector<CycElem>& a) {
  std::vector<CycElem> q(a.size());
  for (std::uint64_t n = 1; n <= a.size(); ++n) {
    CycElem acc = a[n - 1];
    for (std::uint64_t d = 2; d <= n; ++d) {
      if (n % d != 0) continue;
      acc = acc - CycElem(Rational(n / d)) * q[n / d - 1].pow(Int(static_cast<unsigned long>(d)));
    }
    // the d = 1 term of a_n = sum_{d|n} (n/d) q_{n/d}^d is n q_n
    q[n - 1] = CycElem(Rational(1, n)) * acc;
  }
  return q;
}

std::vector<CycElem> q_to_a(const std::vector<CycElem>& q) {
  std::vector<CycElem> a(q.size());
  for (std::uint64_t n = 1; n <= q.size(); ++n) {
    CycElem acc;
    for (std::uint64_t d = 1; d <= n; ++d) {
      if (n % d != 0) continue;
      acc = acc + CycElem(Rational(n / d)) * q[n / d - 1].pow(Int(static_cast<unsigned long>(d)));
    }
    a[n - 1] = acc;
  }
  return a;
}

CongruenceReport b_criterion_check(const std::vector<CycElem>& b, unsigned s, unsigned long p,
                                   std::uint64_t horizon) {
  if (horizon > b.size()) throw std::invalid_argument("b_criterion_check: horizon past data");
  CongruenceReport report;
  for (std::uint64_t n = 1; n <= horizon; ++n) {
    CycElem acc;
    std::uint64_t q = n;
    for (unsigned i = 1; q % p == 0; ++i) {
      q /= p;
      CycElem diff = frobenius(b[q - 1], p) - b[q - 1];
      acc = acc + scale_by_p_power(diff, p, -static_cast<long>(s) * i);
    }
    acc = acc - b[n - 1];
    CheckRecord rec;
    rec.kind = "b";
    rec.p = p;
    rec.s = s;
    rec.n = n;
    rec.required = 0;
    rec.order = padic_order(acc, p);
    rec.pass = rec.order.at_least(0);
    report.checks.push_back(std::move(rec));
  }
  return report;
}

CongruenceReport q_criterion_check(const std::vector<CycElem>& q, unsigned s, unsigned long p,
                                   std::uint64_t horizon) {
  // The d = 1 term of the second sum reads q_{np}, so checking up to `horizon`
  // consumes q-data up to horizon * p.
  if (horizon * p > q.size())
    throw std::invalid_argument("q_criterion_check: horizon past data (need q up to horizon * p)");
  CongruenceReport report;
  for (std::uint64_t n = 1; n <= horizon; ++n) {
    CycElem acc;
    for (std::uint64_t d = 1; d <= n; ++d) {
      if (n % d != 0) continue;
      const CycElem& base = q[n / d - 1];
      CycElem term = frobenius(base, p).pow(Int(static_cast<unsigned long>(d))) -
                     base.pow(Int(static_cast<unsigned long>(p * d)));
      acc = acc + CycElem(Rational(1, static_cast<unsigned long>(d))) * term;
      if (d % p != 0) {
        CycElem unit = q[n * p / d - 1].pow(Int(static_cast<unsigned long>(d)));
        acc = acc - CycElem(Rational(p, static_cast<unsigned long>(d))) * unit;
      }
    }
    CheckRecord rec;
    rec.kind = "q";
    rec.p = p;
    rec.s = s;
    rec.n = n;
    rec.required = static_cast<long>(s - 1) * ord_p_u64(n, p) + static_cast<long>(s);
    rec.order = padic_order(acc, p);
    rec.pass = rec.order.at_least(rec.required);
    report.checks.push_back(std::move(rec));
  }
  return report;
}

CongruenceReport cartier_criterion_check(const TruncSeries<CycElem>& v, unsigned s, unsigned long p,
                                         unsigned r_max, std::uint64_t m_max) {
  if (v.truncation() / pow_u64(p, r_max) == 0)
    throw std::invalid_argument("cartier_criterion_check: truncation too small for r_max");
  CongruenceReport report;
  TruncSeries<CycElem> diff = frobenius(v, p) - cartier(v, p);  // truncation T/p
  for (unsigned r = 1; r <= r_max; ++r) {
    std::uint64_t window = diff.truncation();
    if (m_max > 0) window = std::min<std::uint64_t>(window, m_max);
    for (std::uint64_t n = 1; n <= window; ++n) {
      CheckRecord rec;
      rec.kind = "cartier";
      rec.p = p;
      rec.s = s;
      rec.n = n;
      rec.r = r;
      rec.required = static_cast<long>(s) * r;
      rec.order = padic_order(diff[n], p);
      rec.pass = rec.order.at_least(rec.required);
      report.checks.push_back(std::move(rec));
    }
    if (r < r_max) diff = cartier(diff, p);
  }
  // support condition: V - eps_p C_p V has p-integral coefficients
  TruncSeries<CycElem> supp = v - epsilon(cartier(v, p), p, 0);
  std::uint64_t window = supp.truncation();
  if (m_max > 0) window = std::min<std::uint64_t>(window, m_max * pow_u64(p, r_max));
  for (std::uint64_t n = 1; n <= window; ++n) {
    if (n % p == 0) continue;
    CheckRecord rec;
    rec.kind = "cartier-support";
    rec.p = p;
    rec.s = s;
    rec.n = n;
    rec.required = 0;
    rec.order = padic_order(supp[n], p);
    rec.pass = rec.order.at_least(0);
    report.checks.push_back(std::move(rec));
  }
  return report;
}

std::set<unsigned long> prime_support(const Int& n) {
  std::set<unsigned long> out;
  Int m = abs(n);
  if (m <= 1) return out;
  for (unsigned long p = 2; Int(p) * Int(p) <= m && p < 1'000'000; p += (p == 2 ? 1 : 2)) {
    if (m % p == 0) {
      out.insert(p);
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) {
    if (mpz_probab_prime_p(m.get_mpz_t(), 32) == 0)
      throw std::runtime_error("prime_support: composite cofactor too large to factor: " + m.get_str());
    if (!m.fits_ulong_p())
      throw std::runtime_error("prime_support: prime factor exceeds unsigned long: " + m.get_str());
    out.insert(m.get_ui());
  }
  return out;
}

DworkReport dwork_test(const TruncSeries<CycElem>& v, std::size_t T,
                       const std::set<unsigned long>& S) {
  if (!v[0].is_zero()) throw std::invalid_argument("dwork_test: nonzero constant term");
  if (T > v.truncation()) throw std::invalid_argument("dwork_test: T past truncation");
  TruncSeries<CycElem> vt(T);
  for (std::size_t n = 0; n <= T; ++n) vt.set(n, v[n]);
  TruncSeries<CycElem> y = series_exp(-int_s(vt, 1));

  DworkReport report;
  report.excluded = S;
  for (std::size_t n = 0; n <= T; ++n) {
    for (const auto& coord : y[n].coords()) {
      if (coord.get_den() == 1) continue;
      for (unsigned long p : prime_support(Int(coord.get_den()))) {
        report.denominator_primes.insert(p);
        if (!S.count(p) &&
            std::find(report.offending.begin(), report.offending.end(), p) == report.offending.end()) {
          report.offending.push_back(p);
          if (!report.witness) report.witness = {p, n};
        }
      }
    }
  }
  std::sort(report.offending.begin(), report.offending.end());
  report.is_1_function_evidence = report.offending.empty();
  return report;
}

}  // namespace sfn
