#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sfn/cyclotomic.hpp"
#include "sfn/polynomial.hpp"
#include "sfn/series.hpp"

namespace sfn {

/// Reduced rational function P/Q over a cyclotomic field. Construction
/// promotes all coefficients to a common conductor, cancels gcd(P, Q),
/// makes Q monic and rejects a pole at the origin.
class RatFunc {
 public:
  RatFunc(Poly<CycElem> num, Poly<CycElem> den);

  const Poly<CycElem>& num() const { return num_; }
  const Poly<CycElem>& den() const { return den_; }
  unsigned long conductor() const { return conductor_; }
  bool is_zero() const { return num_.is_zero(); }

  CycElem at_zero() const { return num_.coeff(0) * den_.coeff(0).inverse(); }

  friend bool operator==(const RatFunc& a, const RatFunc& b);

 private:
  Poly<CycElem> num_, den_;
  unsigned long conductor_ = 1;
};

Poly<CycElem> promote_poly(const Poly<CycElem>& p, unsigned long conductor);

/// Power-series expansion of P/Q at 0 to order T via the linear recurrence
/// q_0 a_n = p_n - sum_{k>=1} q_k a_{n-k}.
TruncSeries<CycElem> maclaurin(const RatFunc& f, std::size_t T);

/// Least N <= n_max with Q | 1 - z^N, or nothing.
std::optional<unsigned long> find_cyclotomic_period(const Poly<CycElem>& q, unsigned long n_max);

/// True iff gcd(Q, Q') is constant.
bool simple_pole_check(const Poly<CycElem>& q);

/// Least divisor P of a.size() with a_i = a_{i+P} cyclically.
unsigned long minimal_period(const std::vector<CycElem>& a);

/// Inverse discrete Fourier transform A_j = (1/P) sum_i a_i zeta^{-ij} for
/// j = 1..P (index 0 of the result holds A_1). zeta must have exact order P.
std::vector<CycElem> residues_dft(const std::vector<CycElem>& a, const CycElem& zeta);

struct AbelianForm {
  unsigned long period = 1;
  CycElem zeta;                    // primitive root of order `period`
  std::vector<Rational> residues;  // A_1..A_period
};

enum class RejectReason {
  nonzero_at_origin,
  pole_not_root_of_unity,
  multiple_pole,
  irrational_residue,
  degree_bound,
};

std::string reject_reason_str(RejectReason r);

struct Verdict {
  std::optional<AbelianForm> form;
  std::optional<RejectReason> reason;
  std::string witness;

  bool is_abelian() const { return form.has_value(); }
};

/// Decision procedure for the abelian normal form sum_j A_j zeta^j z / (1 - zeta^j z)
/// with rational A_j. Mathematical failures come back as rejection verdicts with a
/// witness; the zero function is an input error.
Verdict classify_2function(const RatFunc& f, unsigned long n_max = 720);

/// Rebuilds the rational function of an abelian form; classify on the result
/// round-trips.
RatFunc synthesize_abelian(const AbelianForm& form);

struct MintonTerm {
  CycElem residue;  // A_i
  CycElem alpha;    // reciprocal pole, a_n picks up A_i alpha_i^n
};

struct MintonResult {
  std::optional<std::vector<MintonTerm>> terms;
  std::string diagnostic;  // set when terms is empty
};

/// Exact partial fractions F = sum A_i alpha_i z / (1 - alpha_i z). Roots are
/// searched in the form (rational) * (root of unity) inside the coefficient
/// field; when Q does not split that way the result carries a diagnostic.
MintonResult minton_form(const RatFunc& f);

}  // namespace sfn
