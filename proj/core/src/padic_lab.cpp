#include "sfn/padic_lab.hpp"

#include <algorithm>
#include <numeric>

namespace sfn {

namespace {

Int p_power(unsigned long p, unsigned k) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, k);
  return r;
}

Int mod_into(Int v, const Int& mod) {
  v %= mod;
  if (v < 0) v += mod;
  return v;
}

void require_unit(const Int& x, unsigned long p, const char* who) {
  if (!is_prime(p)) throw std::invalid_argument(std::string(who) + ": p must be prime");
  if (mod_into(x, Int(p)) == 0)
    throw std::invalid_argument(std::string(who) + ": x must be a unit at p");
}

// Exact difference x^{e1} - x^{e0} for |x| = 1; parity is all that matters.
Int unit_diff(const Int& x, const Int& e1, const Int& e0) {
  auto val = [&](const Int& e) { return (x == 1 || e % 2 == 0) ? Int(1) : Int(-1); };
  return val(e1) - val(e0);
}

OrderBound order_of_residue(const Int& value, unsigned long p, unsigned precision) {
  if (value == 0) return OrderBound{ExtOrder::of(static_cast<long>(precision)), false};
  return OrderBound{ExtOrder::of(int_valuation(value, p)), true};
}

// pass/indeterminate for "ord >= required" given what the residue certifies.
void judge(LabCheck& c) {
  if (c.required < 0) {  // unbounded threshold: only exact infinity passes
    c.pass = c.observed.exact && c.observed.ord.infinite;
    c.indeterminate = !c.pass;
    return;
  }
  if (c.observed.certifies_at_least(c.required)) {
    c.pass = true;
    return;
  }
  if (c.observed.exact) {
    c.pass = false;  // true order known and below threshold
    return;
  }
  c.indeterminate = true;  // residue vanished below the threshold
}

}  // namespace

Int pow_mod(const Int& base, const Int& exp, const Int& mod) {
  Int r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return r;
}

PadicApprox rho(const Int& x, unsigned long p, unsigned n, std::uint64_t m, unsigned K) {
  require_unit(x, p, "rho");
  if (n == 0 || m == 0) throw std::invalid_argument("rho: need n, m >= 1");
  if (K <= n) throw std::invalid_argument("rho: precision K must exceed n");

  const Int e0 = Int(m) * p_power(p, n - 1);
  const Int e1 = e0 * p;
  const Int pn = p_power(p, n);
  const unsigned out_precision = K - n;
  const Int out_mod = p_power(p, out_precision);

  PadicApprox out;
  out.p = p;
  out.precision = out_precision;

  if (abs(x) == 1) {
    Int diff = unit_diff(x, e1, e0);
    if (diff == 0) {
      out.value = 0;
      out.order = OrderBound{ExtOrder::inf(), true};
      return out;
    }
    if (diff % pn != 0) throw std::logic_error("rho: inexact division");
    Int q = diff / pn;
    out.value = mod_into(q, out_mod);
    out.order = OrderBound{ExtOrder::of(int_valuation(q, p)), true};
    return out;
  }

  const Int big_mod = p_power(p, K);
  Int diff = mod_into(pow_mod(x, e1, big_mod) - pow_mod(x, e0, big_mod), big_mod);
  if (diff % pn != 0) throw std::logic_error("rho: inexact division");
  out.value = mod_into(diff / pn, out_mod);
  out.order = order_of_residue(out.value, p, out_precision);
  return out;
}

OrderBound kappa(const Int& x, unsigned long p, unsigned K) {
  return rho(x, p, 1, 1, K).order;
}

unsigned default_precision(const Int& x, unsigned long p, unsigned n_max) {
  OrderBound probe = kappa(x, p, n_max + 8);
  long kb = probe.exact && !probe.ord.infinite ? probe.ord.value : 0;
  return 2 * n_max + 2 * static_cast<unsigned>(kb) + 4;
}

std::size_t LabReport::failed() const {
  return static_cast<std::size_t>(std::count_if(
      checks.begin(), checks.end(), [](const LabCheck& c) { return !c.pass && !c.indeterminate; }));
}

std::size_t LabReport::indeterminate() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(),
                                                [](const LabCheck& c) { return c.indeterminate; }));
}

namespace {

// required threshold n + 2 kappa, or the -1 sentinel when kappa is only a bound.
long threshold(unsigned n, const OrderBound& k) {
  if (!k.exact || k.ord.infinite) return -1;
  return static_cast<long>(n) + 2 * k.ord.value;
}

}  // namespace

LabReport check_rho_stability(const Int& x, unsigned long p, unsigned n_max, unsigned K) {
  if (p == 2) throw std::invalid_argument("check_rho_stability: requires p > 2");
  require_unit(x, p, "check_rho_stability");
  if (K <= n_max + 1) throw std::invalid_argument("check_rho_stability: K too small for n_max");

  LabReport report;
  const OrderBound k = kappa(x, p, K);
  if (!k.exact || k.ord.infinite)
    report.notes.push_back("kappa indistinguishable from infinity at precision " +
                           std::to_string(K) + "; only exact vanishing can pass");

  std::vector<PadicApprox> rhos;  // rho_n(1) for n = 1..n_max+1
  for (unsigned n = 1; n <= n_max + 1; ++n) rhos.push_back(rho(x, p, n, 1, K));

  for (unsigned n = 1; n <= n_max; ++n) {
    const PadicApprox& lo = rhos[n - 1];
    const PadicApprox& hi = rhos[n];
    const unsigned prec = std::min(lo.precision, hi.precision);
    const Int mod = p_power(p, prec);
    Int diff = mod_into(hi.value - lo.value, mod);
    LabCheck c;
    c.what = "rho-stability";
    c.m = 1;
    c.n = n;
    c.required = threshold(n, k);
    c.observed = diff == 0 && lo.order.ord.infinite && hi.order.ord.infinite
                     ? OrderBound{ExtOrder::inf(), true}
                     : order_of_residue(diff, p, prec);
    judge(c);
    report.checks.push_back(std::move(c));
  }

  // kappa_n constant in n, whenever both orders are exactly known
  for (unsigned n = 2; n <= n_max + 1; ++n) {
    LabCheck c;
    c.what = "kappa-constancy";
    c.m = 1;
    c.n = n;
    c.required = k.exact && !k.ord.infinite ? k.ord.value : -1;
    c.observed = rhos[n - 1].order;
    if (c.required >= 0 && c.observed.exact) {
      c.pass = c.observed.ord == ExtOrder::of(c.required);
    } else {
      judge(c);
    }
    report.checks.push_back(std::move(c));
  }
  return report;
}

LabReport check_rho_m_scaling(const Int& x, unsigned long p, std::uint64_t m_max, unsigned n,
                              unsigned K) {
  require_unit(x, p, "check_rho_m_scaling");
  if (K <= n) throw std::invalid_argument("check_rho_m_scaling: K too small for n");

  LabReport report;
  const OrderBound k = kappa(x, p, K);
  if (!k.exact || k.ord.infinite)
    report.notes.push_back("kappa indistinguishable from infinity at precision " +
                           std::to_string(K) + "; only exact vanishing can pass");

  const PadicApprox base = rho(x, p, n, 1, K);
  const unsigned prec = base.precision;
  const Int mod = p_power(p, prec);
  for (std::uint64_t m = 1; m <= m_max; ++m) {
    if (m % p == 0) continue;
    const PadicApprox rm = rho(x, p, n, m, K);
    const Int scale = pow_mod(x, Int(m - 1) * p_power(p, n - 1), mod);
    Int diff = mod_into(rm.value - Int(m) * scale * base.value, mod);
    LabCheck c;
    c.what = "rho-m-scaling";
    c.m = m;
    c.n = n;
    c.required = threshold(n, k);
    c.observed = diff == 0 && rm.order.ord.infinite && base.order.ord.infinite
                     ? OrderBound{ExtOrder::inf(), true}
                     : order_of_residue(diff, p, prec);
    judge(c);
    report.checks.push_back(std::move(c));
  }
  return report;
}

ProbeResult root_of_unity_probe(const Int& x, unsigned long p, unsigned n_max, unsigned K) {
  require_unit(x, p, "root_of_unity_probe");
  if (K <= 2 * n_max)
    throw std::invalid_argument("root_of_unity_probe: need K > 2 n_max to decide every threshold");

  ProbeResult result;
  result.consistent = true;
  if (p == 2)
    result.caveat = "the stability propositions assume p > 2; the probe at p = 2 is heuristic only";

  const Int big_mod = p_power(p, K);
  for (unsigned n = 1; n <= n_max; ++n) {
    Int diff;
    if (abs(x) == 1) {
      diff = unit_diff(x, p_power(p, n), p_power(p, n - 1));
    } else {
      diff = mod_into(pow_mod(x, p_power(p, n), big_mod) - pow_mod(x, p_power(p, n - 1), big_mod),
                      big_mod);
    }
    LabCheck c;
    c.what = "root-of-unity-threshold";
    c.m = 1;
    c.n = n;
    c.required = 2 * static_cast<long>(n);
    c.observed = diff == 0 ? (abs(x) == 1 ? OrderBound{ExtOrder::inf(), true}
                                          : order_of_residue(diff, p, K))
                           : order_of_residue(mod_into(diff, big_mod), p, K);
    judge(c);
    if (!c.pass && !c.indeterminate && result.consistent) {
      result.consistent = false;
      result.first_violation = n;
    }
    result.checks.push_back(std::move(c));
    if (!result.consistent) break;
  }
  return result;
}

Int teichmuller(const Int& x, unsigned long p, unsigned K) {
  require_unit(x, p, "teichmuller");
  const Int mod = p_power(p, K);
  Int y = mod_into(x, mod);
  for (unsigned i = 0; i < K; ++i) {  // y -> y^p converges quadratically in the exponent sense
    Int next = pow_mod(y, Int(p), mod);
    if (next == y) break;
    y = next;
  }
  return y;
}

VandermondeReport vandermonde_contradiction_demo(const std::vector<Int>& xs,
                                                 const std::vector<Int>& bs, unsigned long p,
                                                 unsigned K, std::uint64_t m_max, unsigned n_max) {
  const std::size_t r = xs.size();
  if (r == 0 || bs.size() != r)
    throw std::invalid_argument("vandermonde_contradiction_demo: need matching nonempty xs, bs");
  if (r >= p) throw std::invalid_argument("vandermonde_contradiction_demo: requires r < p");
  for (const Int& x : xs) require_unit(x, p, "vandermonde_contradiction_demo");
  for (const Int& b : bs) require_unit(b, p, "vandermonde_contradiction_demo");
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j)
      if (mod_into(xs[i] - xs[j], Int(p)) == 0)
        throw std::invalid_argument("vandermonde_contradiction_demo: xs collide mod p");
  if (K <= 2 * n_max)
    throw std::invalid_argument("vandermonde_contradiction_demo: need K > 2 n_max");

  VandermondeReport report;
  const Int big_mod = p_power(p, K);

  // determinant prod B_i * prod_{i<j} (x_i - x_j) must be a unit
  Int det = 1;
  for (const Int& b : bs) det *= b;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) det *= xs[i] - xs[j];
  report.det_unit = mod_into(det, Int(p)) != 0;

  // kappa of the family: the smallest exactly-known kappa among the inputs
  OrderBound family_kappa{ExtOrder::inf(), false};
  for (const Int& x : xs) {
    OrderBound k = kappa(x, p, K);
    report.rho_orders.push_back(rho(x, p, 1, 1, K).order);
    if (k.exact && !k.ord.infinite &&
        (!family_kappa.exact || family_kappa.ord.infinite || k.ord.value < family_kappa.ord.value))
      family_kappa = k;
  }
  report.kappa_used = family_kappa;

  // the congruence family itself
  report.family_holds = true;
  for (std::uint64_t m = 1; m <= m_max; ++m) {
    if (m % p == 0) continue;
    for (unsigned n = 1; n <= n_max; ++n) {
      Int acc = 0;
      const Int e0 = Int(m) * p_power(p, n - 1);
      for (std::size_t i = 0; i < r; ++i)
        acc += bs[i] * (pow_mod(xs[i], e0 * p, big_mod) - pow_mod(xs[i], e0, big_mod));
      acc = mod_into(acc, big_mod);
      LabCheck c;
      c.what = "congruence-family";
      c.m = m;
      c.n = n;
      c.required = 2 * static_cast<long>(n);
      c.observed = order_of_residue(acc, p, K);
      judge(c);
      if (!c.pass && !c.indeterminate && report.family_holds) {
        report.family_holds = false;
        report.first_failure = {m, n};
      }
      report.family_checks.push_back(std::move(c));
    }
  }

  // forced vanishing of the error terms mod p^{1+2 kappa}
  long l = family_kappa.exact && !family_kappa.ord.infinite ? 1 + 2 * family_kappa.ord.value : 1;
  if (!family_kappa.exact || family_kappa.ord.infinite)
    report.notes.push_back("every input is consistent with a root-of-unity pattern at precision " +
                           std::to_string(K) + "; the forced-vanishing modulus defaults to p");
  if (static_cast<unsigned>(l) >= K) {
    l = K - 1;
    report.notes.push_back("forced-vanishing modulus clipped to the working precision");
  }
  const Int small_mod = p_power(p, static_cast<unsigned>(l));
  for (std::size_t i = 0; i < r; ++i) {
    PadicApprox ri = rho(xs[i], p, 1, 1, K);
    report.rho_vanishes.push_back(mod_into(ri.value, small_mod) == 0);
  }

  bool all_vanish =
      std::all_of(report.rho_vanishes.begin(), report.rho_vanishes.end(), [](bool b) { return b; });
  if (report.family_holds && all_vanish) {
    report.conclusion =
        "family holds on the window and every error term vanishes mod p^" + std::to_string(l) +
        "; inputs are consistent with roots of unity";
  } else if (!report.family_holds && !all_vanish) {
    report.conclusion =
        "family fails on the window, as forced: some error term is a unit times p^kappa and the "
        "system determinant is " +
        std::string(report.det_unit ? "a unit" : "not a unit");
  } else if (report.family_holds) {
    report.conclusion = "family holds on this finite window despite nonvanishing error terms; "
                        "enlarge the window or precision";
  } else {
    report.conclusion = "family fails although the tested error terms vanish at the modulus; "
                        "failure witnessed at larger (m, n)";
  }
  return report;
}

}  // namespace sfn
