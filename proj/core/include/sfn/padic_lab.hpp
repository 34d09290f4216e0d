#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sfn/rational.hpp"

namespace sfn {

/// What is known about a p-adic order from a finite-precision residue.
/// exact: ord equals `ord`. Otherwise only ord >= ord.value is certified
/// (the residue vanished at the working precision).
struct OrderBound {
  ExtOrder ord;
  bool exact = true;

  bool certifies_at_least(long k) const { return ord.at_least(k); }
  std::string str() const { return exact ? ord.str() : ">=" + ord.str(); }
};

/// Residue mod p^precision standing in for a p-adic integer.
struct PadicApprox {
  unsigned long p = 0;
  unsigned precision = 0;
  Int value;  // 0 <= value < p^precision
  OrderBound order;
};

Int pow_mod(const Int& base, const Int& exp, const Int& mod);

/// rho_n(m) = (x^{m p^n} - x^{m p^{n-1}}) / p^n, exact mod p^{K-n}. The
/// division is exact for every p-adic unit x; this is asserted. |x| = 1 is
/// handled with exact integer arithmetic, so roots of unity report their
/// true infinite order.
PadicApprox rho(const Int& x, unsigned long p, unsigned n, std::uint64_t m, unsigned K);

/// kappa = ord_p(rho_1(1)); a lower bound K-1 when the residue vanishes.
OrderBound kappa(const Int& x, unsigned long p, unsigned K);

/// Working precision heuristic: 2 n_max + 2 kappa + 4, with kappa probed first.
unsigned default_precision(const Int& x, unsigned long p, unsigned n_max);

/// One congruence check at finite precision. required < 0 encodes an
/// unbounded threshold (kappa itself was indistinguishable from infinity).
/// indeterminate: the working precision cannot decide the assertion.
struct LabCheck {
  std::string what;
  std::uint64_t m = 0;
  unsigned n = 0;
  long required = 0;
  OrderBound observed;
  bool pass = false;
  bool indeterminate = false;
};

struct LabReport {
  std::vector<LabCheck> checks;
  std::vector<std::string> notes;

  std::size_t failed() const;
  std::size_t indeterminate() const;
  bool pass() const { return failed() == 0 && indeterminate() == 0; }
};

/// rho_{n+1}(m) = rho_n(m) mod p^{n+2 kappa} for n = 1..n_max (m = 1), plus
/// constancy of kappa_n across n. Requires p > 2.
LabReport check_rho_stability(const Int& x, unsigned long p, unsigned n_max, unsigned K);

/// rho_n(m) = m x^{(m-1) p^{n-1}} rho_n(1) mod p^{n+2 kappa} for m <= m_max, p coprime to m.
LabReport check_rho_m_scaling(const Int& x, unsigned long p, std::uint64_t m_max, unsigned n,
                              unsigned K);

struct ProbeResult {
  bool consistent = false;  // no violation found; evidence, not proof
  std::optional<unsigned> first_violation;
  std::vector<LabCheck> checks;
  std::string caveat;
};

/// Tests ord_p(x^{p^n} - x^{p^{n-1}}) >= 2n for n <= n_max. A violation
/// certifies x does not follow the root-of-unity pattern at p. Requires
/// K > 2 n_max so every threshold is decidable.
ProbeResult root_of_unity_probe(const Int& x, unsigned long p, unsigned n_max, unsigned K);

/// The unique (p-1)-th root of unity congruent to x mod p, computed mod p^K.
Int teichmuller(const Int& x, unsigned long p, unsigned K);

struct VandermondeReport {
  bool family_holds = false;
  std::optional<std::pair<std::uint64_t, unsigned>> first_failure;  // (m, n)
  bool det_unit = false;
  OrderBound kappa_used;
  std::vector<OrderBound> rho_orders;   // ord of rho_{i,1}(1) per input
  std::vector<bool> rho_vanishes;       // rho_{i,1}(1) = 0 mod p^{1+2 kappa}
  std::vector<LabCheck> family_checks;  // sum B_i (x_i^{m p^n} - x_i^{m p^{n-1}}) vs p^{2n}
  std::vector<std::string> notes;
  std::string conclusion;
};

/// Finite rendition of the linear-algebra step: checks the congruence family
/// sum_i B_i (x_i^{m p^n} - x_i^{m p^{n-1}}) = 0 mod p^{2n} on a window,
/// checks the system determinant is a unit, solves for the error terms
/// mod p^{1+2 kappa} and reports whether they are forced to vanish.
VandermondeReport vandermonde_contradiction_demo(const std::vector<Int>& xs,
                                                 const std::vector<Int>& bs, unsigned long p,
                                                 unsigned K, std::uint64_t m_max = 4,
                                                 unsigned n_max = 2);

}  // namespace sfn
