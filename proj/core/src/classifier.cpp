#include "sfn/ratfunc.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace sfn {

namespace {

unsigned long poly_conductor(const Poly<CycElem>& p) {
  unsigned long c = 1;
  for (const auto& x : p.coeffs()) c = std::lcm(c, x.conductor());
  return c;
}

Poly<CycElem> one_minus_z_pow(unsigned long n) {
  std::vector<CycElem> v(n + 1);
  v[0] = CycElem(1L);
  v[n] = CycElem(-1L);
  return Poly<CycElem>(std::move(v));
}

// divide out the rational content so pseudo-remainder chains keep small coordinates
Poly<CycElem> strip_rational_content(Poly<CycElem> p) {
  if (p.is_zero()) return p;
  Int num_gcd(0), den_lcm(1);
  for (const auto& c : p.coeffs())
    for (const auto& coord : c.coords()) {
      if (coord == 0) continue;
      num_gcd = gcd(num_gcd, Int(coord.get_num()));
      den_lcm = lcm(den_lcm, Int(coord.get_den()));
    }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  return CycElem(scale).promote(p.coeffs().front().conductor()) * p;
}

// Monic Euclid with content-stripped inputs; together with the normalized
// remainder sequence inside Poly::gcd this keeps coordinate sizes polynomial.
Poly<CycElem> cyc_poly_gcd(Poly<CycElem> a, Poly<CycElem> b) {
  return Poly<CycElem>::gcd(strip_rational_content(std::move(a)),
                            strip_rational_content(std::move(b)));
}

unsigned long pow_mod_ul(unsigned long base, unsigned long e, unsigned long q) {
  unsigned long acc = 1 % q;
  base %= q;
  while (e > 0) {
    if (e & 1) acc = static_cast<unsigned long>((static_cast<__uint128_t>(acc) * base) % q);
    e >>= 1;
    if (e > 0) base = static_cast<unsigned long>((static_cast<__uint128_t>(base) * base) % q);
  }
  return acc;
}

std::vector<unsigned long> prime_divisors_ul(unsigned long n) {
  std::vector<unsigned long> out;
  for (unsigned long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Coprimality certificate over F_q: pick a prime q = 1 mod M (M the shared
// conductor), send zeta to an order-M element of F_q*, and run Euclid on the
// images. A constant image gcd proves gcd = 1 over Q(zeta) — the gcd degree
// can only grow under reduction. Returns false (= "don't know") whenever the
// reduction is unusable; callers then fall back to the exact gcd.
bool coprime_certificate(const Poly<CycElem>& a, const Poly<CycElem>& b) {
  if (a.is_zero() || b.is_zero()) return false;
  unsigned long m = 1;
  for (const auto& c : a.coeffs()) m = std::lcm(m, c.conductor());
  for (const auto& c : b.coeffs()) m = std::lcm(m, c.conductor());

  auto usable = [&](unsigned long q) {
    auto check = [&](const Poly<CycElem>& p) {
      for (const auto& c : p.coeffs())
        for (const auto& r : c.coords())
          if (mpz_divisible_ui_p(r.get_den().get_mpz_t(), q)) return false;
      return true;
    };
    return check(a) && check(b);
  };
  unsigned long q = 0;
  for (unsigned long k = (1ul << 20) / m + 1; k < (1ul << 26) / m; ++k) {
    unsigned long cand = k * m + 1;
    if (is_prime(cand) && usable(cand)) {
      q = cand;
      break;
    }
  }
  if (q == 0) return false;

  unsigned long w = 1;  // image of zeta_m
  if (m > 1) {
    const auto mps = prime_divisors_ul(m);
    for (unsigned long g = 2; g < q; ++g) {
      unsigned long cand = pow_mod_ul(g, (q - 1) / m, q);
      if (cand == 1) continue;
      bool exact_order = true;
      for (unsigned long p : mps)
        if (pow_mod_ul(cand, m / p, q) == 1) exact_order = false;
      if (exact_order) {
        w = cand;
        break;
      }
    }
    if (w == 1) return false;
  }

  auto reduce_poly = [&](const Poly<CycElem>& p) {
    std::vector<unsigned long> img(p.coeffs().size(), 0);
    for (std::size_t i = 0; i < img.size(); ++i) {
      const CycElem& c = p.coeffs()[i];
      unsigned long acc = 0, wp = 1;
      for (const auto& r : c.coords()) {
        unsigned long num = mpz_fdiv_ui(r.get_num().get_mpz_t(), q);
        unsigned long den = mpz_fdiv_ui(r.get_den().get_mpz_t(), q);
        unsigned long val = static_cast<unsigned long>(
            (static_cast<__uint128_t>(num) * pow_mod_ul(den, q - 2, q)) % q);
        acc = static_cast<unsigned long>(
            (acc + static_cast<__uint128_t>(val) * wp) % q);
        wp = static_cast<unsigned long>((static_cast<__uint128_t>(wp) * w) % q);
      }
      img[i] = acc;
    }
    while (!img.empty() && img.back() == 0) img.pop_back();
    return img;
  };
  std::vector<unsigned long> fa = reduce_poly(a), fb = reduce_poly(b);
  if (fa.size() != a.coeffs().size() || fb.size() != b.coeffs().size())
    return false;  // a leading coefficient vanished mod q: degrees unreliable

  while (!fb.empty()) {
    // fa mod fb in F_q[z]
    unsigned long lead_inv = pow_mod_ul(fb.back(), q - 2, q);
    while (fa.size() >= fb.size()) {
      unsigned long factor = static_cast<unsigned long>(
          (static_cast<__uint128_t>(fa.back()) * lead_inv) % q);
      std::size_t shift = fa.size() - fb.size();
      for (std::size_t i = 0; i < fb.size(); ++i) {
        unsigned long sub = static_cast<unsigned long>(
            (static_cast<__uint128_t>(factor) * fb[i]) % q);
        fa[shift + i] = (fa[shift + i] + q - sub) % q;
      }
      while (!fa.empty() && fa.back() == 0) fa.pop_back();
      if (fa.empty()) break;
    }
    std::swap(fa, fb);
  }
  return fa.size() == 1;  // constant gcd mod q certifies coprimality over K
}

std::string poly_str(const Poly<CycElem>& p) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) os << (i ? "," : "") << p.coeffs()[i].str();
  os << "]";
  return os.str();
}

}  // namespace

Poly<CycElem> promote_poly(const Poly<CycElem>& p, unsigned long conductor) {
  std::vector<CycElem> v;
  v.reserve(p.coeffs().size());
  for (const auto& x : p.coeffs()) v.push_back(x.promote(conductor));
  return Poly<CycElem>(std::move(v));
}

RatFunc::RatFunc(Poly<CycElem> num, Poly<CycElem> den) {
  if (den.is_zero()) throw std::invalid_argument("RatFunc: zero denominator");
  conductor_ = std::lcm(poly_conductor(num), poly_conductor(den));
  num = promote_poly(num, conductor_);
  den = promote_poly(den, conductor_);
  if (!coprime_certificate(num, den)) {
    Poly<CycElem> g = cyc_poly_gcd(num, den);
    if (g.degree() > 0) {
      num = divmod(num, g).first;
      den = divmod(den, g).first;
    }
  }
  if (den.coeff(0).is_zero()) throw std::invalid_argument("RatFunc: pole at the origin");
  const CycElem lead_inv = den.lead().inverse();
  num_ = lead_inv * num;
  den_ = lead_inv * den;
}

bool operator==(const RatFunc& a, const RatFunc& b) {
  unsigned long c = std::lcm(a.conductor_, b.conductor_);
  return promote_poly(a.num_, c) * promote_poly(b.den_, c) ==
         promote_poly(b.num_, c) * promote_poly(a.den_, c);
}

TruncSeries<CycElem> maclaurin(const RatFunc& f, std::size_t T) {
  const Poly<CycElem>& p = f.num();
  const Poly<CycElem>& q = f.den();
  const CycElem q0_inv = q.coeff(0).inverse();
  TruncSeries<CycElem> out(T);
  for (std::size_t n = 0; n <= T; ++n) {
    CycElem acc = p.coeff(n);
    for (std::size_t k = 1; k <= n && static_cast<long>(k) <= q.degree(); ++k)
      acc = acc - q.coeff(k) * out[n - k];
    out.set(n, acc * q0_inv);
  }
  return out;
}

std::optional<unsigned long> find_cyclotomic_period(const Poly<CycElem>& q, unsigned long n_max) {
  if (q.coeff(0).is_zero()) throw std::invalid_argument("find_cyclotomic_period: Q(0) = 0");
  if (q.degree() <= 0) return 1;  // constants divide everything
  // Q | 1 - z^N iff z^N = 1 mod Q (Q(0) != 0 makes z a unit mod Q); walk
  // z^n mod Q one multiplication at a time instead of dividing per candidate
  const Poly<CycElem> monic = q.monic();
  const std::size_t deg = static_cast<std::size_t>(monic.degree());
  std::vector<CycElem> rem(deg);  // z^n mod monic, dense low-to-high
  const CycElem one(1L);
  if (deg == 1)
    rem[0] = CycElem() - monic.coeff(0);  // z mod (z + c0) = -c0
  else
    rem[1] = one;
  for (unsigned long n = 1; n <= n_max; ++n) {
    if (n > 1) {
      // multiply by z and reduce
      CycElem top = rem[deg - 1];
      for (std::size_t i = deg - 1; i > 0; --i) rem[i] = rem[i - 1];
      rem[0] = CycElem();
      if (!top.is_zero())
        for (std::size_t i = 0; i < deg; ++i) rem[i] = rem[i] - top * monic.coeff(i);
    }
    bool is_one = rem[0] == one;
    for (std::size_t i = 1; is_one && i < deg; ++i) is_one = rem[i].is_zero();
    if (is_one) return n;
  }
  return std::nullopt;
}

bool simple_pole_check(const Poly<CycElem>& q) {
  if (coprime_certificate(q, q.derivative())) return true;
  return cyc_poly_gcd(q, q.derivative()).degree() <= 0;
}

unsigned long minimal_period(const std::vector<CycElem>& a) {
  const std::size_t n = a.size();
  if (n == 0) throw std::invalid_argument("minimal_period: empty window");
  for (std::size_t p = 1; p <= n; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (std::size_t i = 0; ok && i < n; ++i) ok = a[i] == a[(i + p) % n];
    if (ok) return p;
  }
  return static_cast<unsigned long>(n);  // unreachable: p = n always matches
}

std::vector<CycElem> residues_dft(const std::vector<CycElem>& a, const CycElem& zeta) {
  const unsigned long p = static_cast<unsigned long>(a.size());
  if (p == 0) throw std::invalid_argument("residues_dft: empty window");
  if (!(zeta.pow(Int(p)) == CycElem(1L)))
    throw std::invalid_argument("residues_dft: zeta^P != 1");
  for (unsigned long d = 1; d < p; ++d)
    if (p % d == 0 && zeta.pow(Int(d)) == CycElem(1L))
      throw std::invalid_argument("residues_dft: zeta has order below P");

  const CycElem inv_p = CycElem(Rational(1, p));
  std::vector<CycElem> res(p);
  for (unsigned long j = 1; j <= p; ++j) {
    CycElem acc;
    for (unsigned long i = 1; i <= p; ++i)
      acc = acc + a[i - 1] * zeta.pow(-Int(i) * Int(j));
    res[j - 1] = inv_p * acc;
  }
  return res;
}

std::string reject_reason_str(RejectReason r) {
  switch (r) {
    case RejectReason::nonzero_at_origin: return "nonzero-at-origin";
    case RejectReason::pole_not_root_of_unity: return "pole-not-root-of-unity";
    case RejectReason::multiple_pole: return "multiple-pole";
    case RejectReason::irrational_residue: return "irrational-residue";
    case RejectReason::degree_bound: return "degree-bound";
  }
  throw std::logic_error("reject_reason_str: bad enum");
}

namespace {

Verdict rejected(RejectReason r, std::string witness) {
  Verdict v;
  v.reason = r;
  v.witness = std::move(witness);
  return v;
}

}  // namespace

Verdict classify_2function(const RatFunc& f, unsigned long n_max) {
  if (f.is_zero()) throw std::invalid_argument("classify_2function: zero function");
  if (!f.num().coeff(0).is_zero())
    return rejected(RejectReason::nonzero_at_origin, "F(0) = " + f.at_zero().str());
  if (f.num().degree() > f.den().degree())
    return rejected(RejectReason::degree_bound,
                    "deg P = " + std::to_string(f.num().degree()) +
                        " > deg Q = " + std::to_string(f.den().degree()));
  if (!coprime_certificate(f.den(), f.den().derivative())) {
    Poly<CycElem> g = cyc_poly_gcd(f.den(), f.den().derivative());
    if (g.degree() > 0)
      return rejected(RejectReason::multiple_pole, "gcd(Q, Q') = " + poly_str(g));
  }
  auto n_opt = find_cyclotomic_period(f.den(), n_max);
  if (!n_opt)
    return rejected(RejectReason::pole_not_root_of_unity,
                    "Q divides no 1 - z^N for N <= " + std::to_string(n_max));
  const unsigned long n = *n_opt;

  TruncSeries<CycElem> series = maclaurin(f, n);
  std::vector<CycElem> window;
  window.reserve(n);
  for (unsigned long i = 1; i <= n; ++i) window.push_back(series[i]);
  const unsigned long p = minimal_period(window);
  window.resize(p);

  const unsigned long conductor = std::lcm(p, f.conductor());
  CycElem zeta = CycElem::zeta(p).promote(conductor);
  for (auto& x : window) x = x.promote(conductor);
  std::vector<CycElem> raw = residues_dft(window, zeta);

  AbelianForm form;
  form.period = p;
  form.zeta = CycElem::zeta(p);
  form.residues.reserve(p);
  for (unsigned long j = 0; j < p; ++j) {
    if (!raw[j].is_rational())
      return rejected(RejectReason::irrational_residue,
                      "A_" + std::to_string(j + 1) + " = " + raw[j].str());
    form.residues.push_back(raw[j].rational_value());
  }

  if (!(synthesize_abelian(form) == f))
    throw std::logic_error("classify_2function: resynthesis mismatch");

  Verdict v;
  v.form = std::move(form);
  return v;
}

RatFunc synthesize_abelian(const AbelianForm& form) {
  const unsigned long p = form.period;
  if (p == 0 || form.residues.size() != p)
    throw std::invalid_argument("synthesize_abelian: need exactly P residues");
  // keep only the poles with a nonzero residue: a zero A_j would leave the
  // common factor (1 - zeta^j z) for the constructor to cancel, and building
  // the reduced form directly is far cheaper than a gcd over Q(zeta)[z]
  std::vector<unsigned long> support;
  for (unsigned long j = 1; j <= p; ++j)
    if (form.residues[j - 1] != 0) support.push_back(j);
  if (support.empty()) return RatFunc(Poly<CycElem>(), Poly<CycElem>(CycElem(1L)));

  Poly<CycElem> den(CycElem(1L));
  std::vector<std::pair<unsigned long, Poly<CycElem>>> factors;
  for (unsigned long j : support) {
    Poly<CycElem> lin(std::vector<CycElem>{CycElem(1L), CycElem() - form.zeta.pow(Int(j))});
    den = den * lin;
    factors.emplace_back(j, std::move(lin));
  }
  // F = sum_j A_j zeta^j z / (1 - zeta^j z) over a common denominator
  Poly<CycElem> num;
  for (const auto& [j, lin] : factors) {
    Poly<CycElem> cof = divmod(den, lin).first;
    CycElem scale = CycElem(form.residues[j - 1]) * form.zeta.pow(Int(j));
    num = num + Poly<CycElem>::monomial(scale, 1) * cof;
  }
  return RatFunc(std::move(num), std::move(den));
}

namespace {

// All positive divisors of |n|; trial division plus a primality check on the
// cofactor. Throws when a composite cofactor survives the trial bound.
std::vector<Int> divisors_abs(Int n) {
  n = abs(n);
  if (n == 0) throw std::invalid_argument("divisors_abs: zero");
  std::vector<std::pair<Int, unsigned>> fact;
  for (unsigned long d = 2; Int(d) * Int(d) <= n && d < 1'000'000; d += (d == 2 ? 1 : 2)) {
    if (n % d != 0) continue;
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    fact.emplace_back(Int(d), e);
  }
  if (n > 1) {
    if (mpz_probab_prime_p(n.get_mpz_t(), 32) == 0)
      throw std::runtime_error("divisors_abs: cannot factor cofactor " + n.get_str());
    fact.emplace_back(n, 1);
  }
  std::vector<Int> divs{Int(1)};
  for (const auto& [q, e] : fact) {
    std::size_t base = divs.size();
    Int power = 1;
    for (unsigned i = 1; i <= e; ++i) {
      power *= q;
      for (std::size_t k = 0; k < base; ++k) divs.push_back(divs[k] * power);
    }
    if (divs.size() > (1u << 20)) throw std::runtime_error("divisors_abs: too many divisors");
  }
  return divs;
}

std::vector<Rational> rational_roots(const Poly<Rational>& p) {
  if (p.is_zero()) throw std::invalid_argument("rational_roots: zero polynomial");
  Int den_lcm = 1;
  for (const auto& c : p.coeffs()) den_lcm = lcm(den_lcm, Int(c.get_den()));
  std::vector<Int> zc;
  for (const auto& c : p.coeffs()) zc.push_back(Int(c * Rational(den_lcm)));
  std::size_t low = 0;  // strip powers of x; 0 is never a candidate here
  while (low < zc.size() && zc[low] == 0) ++low;
  if (low + 1 >= zc.size()) return {};
  std::vector<Rational> roots;
  for (const Int& a : divisors_abs(zc[low])) {
    for (const Int& b : divisors_abs(zc.back())) {
      for (int sign : {1, -1}) {
        Rational r(sign * a, b);
        r.canonicalize();
        if (std::find(roots.begin(), roots.end(), r) != roots.end()) continue;
        if (p.eval(r) == 0) roots.push_back(r);
      }
    }
  }
  return roots;
}

std::vector<unsigned long> galois_units(unsigned long m) {
  std::vector<unsigned long> out;
  for (unsigned long u = 1; u <= m; ++u)
    if (std::gcd(u, m) == 1) out.push_back(u);
  return out;
}

Poly<CycElem> galois_poly(const Poly<CycElem>& p, unsigned long u) {
  std::vector<CycElem> v;
  v.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) v.push_back(c.galois_apply(u));
  return Poly<CycElem>(std::move(v));
}

}  // namespace

MintonResult minton_form(const RatFunc& f) {
  if (!simple_pole_check(f.den()))
    throw std::invalid_argument("minton_form: denominator is not squarefree");
  MintonResult result;
  if (f.num().degree() > f.den().degree()) {
    result.diagnostic = "numerator degree exceeds denominator degree";
    return result;
  }
  if (f.den().degree() == 0) {
    if (f.num().degree() > 0) throw std::logic_error("minton_form: unreduced input");
    result.diagnostic = f.is_zero() ? "" : "constant function has no pole data";
    if (f.is_zero()) result.terms.emplace();
    return result;
  }

  // work over the smallest field that also contains the cyclotomic poles:
  // Q | 1 - z^N means the reciprocal roots include N-th roots of unity the
  // input's own coefficient field may not see
  unsigned long m = f.conductor();
  if (auto n_cyc = find_cyclotomic_period(f.den(), 720)) m = std::lcm(m, *n_cyc);
  const unsigned long w = CycElem::roots_of_unity_order(m);
  const Poly<CycElem> g = promote_poly(f.den().reversed(), m).monic();  // roots: alpha_i

  // candidates alpha = r * omega with r rational, omega^W = 1
  std::vector<CycElem> roots;
  for (unsigned long t = 0; t < w; ++t) {
    const CycElem omega = CycElem::root_of_unity(m, t);
    // g(omega x) as a polynomial in x
    std::vector<CycElem> gw;
    gw.reserve(g.coeffs().size());
    for (std::size_t k = 0; k < g.coeffs().size(); ++k)
      gw.push_back(g.coeffs()[k] * omega.pow(Int(static_cast<unsigned long>(k))));
    Poly<CycElem> g_omega(std::move(gw));
    Poly<CycElem> norm(CycElem(1L));
    for (unsigned long u : galois_units(m)) norm = norm * galois_poly(g_omega, u);
    std::vector<Rational> nc;
    for (const auto& c : norm.coeffs()) {
      if (!c.is_rational()) throw std::logic_error("minton_form: norm polynomial not rational");
      nc.push_back(c.rational_value());
    }
    for (const Rational& r : rational_roots(Poly<Rational>(std::move(nc)))) {
      if (r == 0) continue;
      CycElem alpha = CycElem(r) * omega;
      if (!g.eval(alpha.promote(m)).is_zero()) continue;
      if (std::find(roots.begin(), roots.end(), alpha) == roots.end()) roots.push_back(alpha);
    }
  }

  if (roots.size() != static_cast<std::size_t>(g.degree())) {
    result.diagnostic = "denominator does not split into (rational)*(root of unity) factors over "
                        "the coefficient field; found " +
                        std::to_string(roots.size()) + " of " + std::to_string(g.degree()) +
                        " reciprocal roots";
    return result;
  }

  const Poly<CycElem> num_m = promote_poly(f.num(), m);
  const Poly<CycElem> qprime = promote_poly(f.den(), m).derivative();
  std::vector<MintonTerm> terms;
  terms.reserve(roots.size());
  for (const CycElem& alpha : roots) {
    const CycElem beta = alpha.promote(m).inverse();  // the pole itself
    const CycElem residue = -(alpha.promote(m)) * num_m.eval(beta) * qprime.eval(beta).inverse();
    if (residue.is_zero()) continue;  // cancelled pole cannot occur on reduced input
    terms.push_back({residue, alpha.promote(m)});
  }
  result.terms = std::move(terms);
  return result;
}

}  // namespace sfn
