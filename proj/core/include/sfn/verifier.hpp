#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sfn/catalog.hpp"
#include "sfn/series.hpp"

namespace sfn {

/// One valuation check. `kind` distinguishes the five check families; unused
/// index fields stay zero. pass <=> order >= required.
struct CheckRecord {
  std::string kind;  // direct | integrality | cartier | cartier-support | b | q
  unsigned long p = 0;
  unsigned s = 0;
  std::uint64_t m = 0;
  unsigned r = 0;
  std::uint64_t n = 0;
  ExtOrder order;
  long required = 0;
  bool pass = false;
};

struct CongruenceReport {
  std::vector<CheckRecord> checks;
  std::vector<std::string> skipped;  // primes skipped by an aggregator, with reason

  std::size_t tested() const { return checks.size(); }
  std::size_t failed() const;
  std::optional<CheckRecord> first_failure() const;
  bool pass() const { return failed() == 0; }
  void append(const CongruenceReport& other);
  const CheckRecord* find(const std::string& kind, std::uint64_t m, unsigned r) const;
};

/// Frob_p(a_{m p^{r-1}}) = a_{m p^r} mod p^{sr} for m <= m_max, r <= r_max,
/// plus integrality of every sequence value the window touches.
CongruenceReport check_local_s(const SequenceSource& src, unsigned long p, unsigned s,
                               std::uint64_t m_max, unsigned r_max);

/// Aggregates check_local_s over a prime list; ramified and excluded primes
/// are skipped and recorded rather than treated as errors.
CongruenceReport verify_s_sequence(const SequenceSource& src, unsigned s,
                                   const std::vector<unsigned long>& primes,
                                   std::uint64_t m_max, unsigned r_max);

std::vector<unsigned long> primes_up_to(unsigned long bound);

/// a_1..a_horizon as a plain vector (index 0 holds a_1).
std::vector<CycElem> sequence_window(const SequenceSource& src, std::uint64_t horizon);

// Moebius-inversion pair: b_n = n^{-s} sum_{d|n} mu(n/d) a_d, a_n = sum_{d|n} d^s b_d.
std::vector<CycElem> a_to_b(const std::vector<CycElem>& a, unsigned s);
std::vector<CycElem> b_to_a(const std::vector<CycElem>& b, unsigned s);

// Product-representation pair: a_n = sum_{d|n} (n/d) q_{n/d}^d, solved by
// q_n = (a_n - sum_{d|n,d>1} (n/d) q_{n/d}^d) / n, and back.
std::vector<CycElem> a_to_q(const std::vector<CycElem>& a);
std::vector<CycElem> q_to_a(const std::vector<CycElem>& q);

/// Per-n check that sum_{i<=ord_p(n)} (Frob_p(b_{n/p^i}) - b_{n/p^i})/p^{si} - b_n
/// is a p-adic integer.
CongruenceReport b_criterion_check(const std::vector<CycElem>& b, unsigned s, unsigned long p,
                                   std::uint64_t horizon);

/// Per-n check of the product-form criterion
///   sum_{d|n} (Frob_p(q_{n/d}^d) - q_{n/d}^{pd})/d - p sum_{d|n, p∤d} q_{np/d}^d / d
/// against p^{(s-1) ord_p(n) + s}. The expression equals (Frob_p(a_n) - a_{np})/n,
/// so it needs q-data up to horizon * p; throws if q is shorter.
CongruenceReport q_criterion_check(const std::vector<CycElem>& q, unsigned s, unsigned long p,
                                   std::uint64_t horizon);

/// Coefficient-wise check of C_p^{r-1}(Frob_p V - C_p V) = 0 mod p^{sr} for
/// r <= r_max together with integrality of V - eps_p C_p V. When m_max > 0 the
/// per-r coefficient window is capped at m_max to mirror check_local_s.
CongruenceReport cartier_criterion_check(const TruncSeries<CycElem>& v, unsigned s, unsigned long p,
                                         unsigned r_max, std::uint64_t m_max = 0);

struct DworkReport {
  bool is_1_function_evidence = false;
  std::set<unsigned long> denominator_primes;  // support of all Y-coefficient denominators
  std::vector<unsigned long> offending;        // denominator primes outside S
  std::set<unsigned long> excluded;            // the declared S, echoed
  std::optional<std::pair<unsigned long, std::size_t>> witness;  // (prime, coefficient index)
};

/// Computes Y = exp(-int V) to order T and reports whether every coefficient
/// is integral away from the declared exclusion set.
DworkReport dwork_test(const TruncSeries<CycElem>& v, std::size_t T,
                       const std::set<unsigned long>& S = {});

/// Prime support of an integer's absolute value (full factorization).
std::set<unsigned long> prime_support(const Int& n);

}  // namespace sfn
