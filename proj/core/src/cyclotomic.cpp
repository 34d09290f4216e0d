#include "sfn/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace sfn {

namespace {

// Exact division of integer polynomials, divisor monic. Ascending coefficients.
std::vector<Int> exact_div_monic(std::vector<Int> num, const std::vector<Int>& den) {
  const std::size_t dn = num.size() - 1, dd = den.size() - 1;
  std::vector<Int> quot(dn - dd + 1);
  for (std::size_t i = dn + 1; i-- > dd;) {
    Int c = num[i];
    quot[i - dd] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
  }
  return quot;
}

std::vector<Int> cyclotomic_poly_z(unsigned long n) {
  // x^n - 1 divided by Phi_d for every proper divisor d | n.
  std::vector<Int> poly(n + 1);
  poly[0] = -1;
  poly[n] = 1;
  for (unsigned long d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    poly = exact_div_monic(std::move(poly), cyclotomic_poly_z(d));
  }
  return poly;
}

// function-local statics so the registry is usable from other translation
// units' static initializers
std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

std::map<unsigned long, std::shared_ptr<const CycField>>& registry() {
  static std::map<unsigned long, std::shared_ptr<const CycField>> r;
  return r;
}

}  // namespace

unsigned long euler_phi(unsigned long n) {
  unsigned long result = n;
  for (unsigned long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

CycField::CycField(unsigned long conductor) : conductor_(conductor) {
  if (conductor == 0) throw std::invalid_argument("conductor must be positive");
  phi_ = cyclotomic_poly_z(conductor);
  degree_ = phi_.size() - 1;  // phi(M)
  zeta_powers_.reserve(conductor);
  std::vector<Rational> cur(degree_, Rational(0));
  cur[0] = 1;
  for (unsigned long k = 0; k < conductor; ++k) {
    zeta_powers_.push_back(cur);
    // multiply by zeta and reduce mod Phi_M
    Rational top = cur[degree_ - 1];
    for (std::size_t i = degree_ - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top != 0)
      for (std::size_t i = 0; i < degree_; ++i) cur[i] -= top * Rational(phi_[i]);
  }
}

std::shared_ptr<const CycField> CycField::get(unsigned long conductor) {
  std::lock_guard<std::mutex> lock(registry_mutex());
  auto& reg = registry();
  auto it = reg.find(conductor);
  if (it != reg.end()) return it->second;
  auto field = std::shared_ptr<const CycField>(new CycField(conductor));
  reg.emplace(conductor, field);
  return field;
}

CycElem::CycElem(const Rational& r, unsigned long conductor)
    : field_(CycField::get(conductor)), coords_(field_->degree(), Rational(0)) {
  coords_[0] = r;
}

CycElem CycElem::zeta(unsigned long conductor) {
  auto field = CycField::get(conductor);
  return CycElem(field, field->zeta_power(1 % conductor));
}

CycElem CycElem::from_coords(unsigned long conductor, std::vector<Rational> coords) {
  auto field = CycField::get(conductor);
  if (coords.size() != field->degree())
    throw std::invalid_argument("from_coords: expected " + std::to_string(field->degree()) +
                                " coordinates for conductor " + std::to_string(conductor));
  for (auto& c : coords) c.canonicalize();
  return CycElem(field, std::move(coords));
}

CycElem CycElem::root_of_unity(unsigned long conductor, unsigned long t) {
  auto field = CycField::get(conductor);
  const unsigned long order = roots_of_unity_order(conductor);
  t %= order;
  if (conductor % 2 == 0) return CycElem(field, field->zeta_power(t));
  // For odd M the generator is -zeta_M^{(M+1)/2}, a primitive 2M-th root.
  std::vector<Rational> coords = field->zeta_power(t * ((conductor + 1) / 2) % conductor);
  if (t % 2 == 1)
    for (auto& c : coords) c = -c;
  return CycElem(field, std::move(coords));
}

bool CycElem::is_zero() const {
  for (const auto& c : coords_)
    if (c != 0) return false;
  return true;
}

bool CycElem::is_rational() const {
  for (std::size_t i = 1; i < coords_.size(); ++i)
    if (coords_[i] != 0) return false;
  return true;
}

Rational CycElem::rational_value() const {
  if (!is_rational()) throw std::domain_error("rational_value: element is not rational: " + str());
  return coords_[0];
}

CycElem CycElem::promote(unsigned long target) const {
  const unsigned long m = conductor();
  if (target == m) return *this;
  if (target % m != 0)
    throw std::invalid_argument("promote: conductor " + std::to_string(m) +
                                " does not divide " + std::to_string(target));
  auto field = CycField::get(target);
  std::vector<Rational> out(field->degree(), Rational(0));
  const unsigned long step = target / m;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i] == 0) continue;
    const auto& zp = field->zeta_power(i * step % target);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += coords_[i] * zp[j];
  }
  return CycElem(field, std::move(out));
}

namespace {

// Promote conductor-1 operands; any other mismatch is an error.
std::pair<CycElem, CycElem> align(const CycElem& a, const CycElem& b) {
  if (a.conductor() == b.conductor()) return {a, b};
  if (a.conductor() == 1) return {a.promote(b.conductor()), b};
  if (b.conductor() == 1) return {a, b.promote(a.conductor())};
  throw std::invalid_argument("conductor mismatch: " + std::to_string(a.conductor()) + " vs " +
                              std::to_string(b.conductor()));
}

Poly<Rational> to_poly(const CycElem& x) {
  return Poly<Rational>(x.coords());
}

Poly<Rational> cyclotomic_as_rational_poly(const CycField& field) {
  std::vector<Rational> v;
  v.reserve(field.cyclotomic_poly().size());
  for (const auto& c : field.cyclotomic_poly()) v.emplace_back(c);
  return Poly<Rational>(std::move(v));
}

}  // namespace

CycElem operator+(const CycElem& a, const CycElem& b) {
  auto [x, y] = align(a, b);
  std::vector<Rational> out(x.coords());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += y.coords()[i];
  return CycElem::from_coords(x.conductor(), std::move(out));
}

CycElem operator-(const CycElem& a, const CycElem& b) {
  auto [x, y] = align(a, b);
  std::vector<Rational> out(x.coords());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= y.coords()[i];
  return CycElem::from_coords(x.conductor(), std::move(out));
}

CycElem operator-(const CycElem& a) {
  std::vector<Rational> out(a.coords());
  for (auto& c : out) c = -c;
  return CycElem::from_coords(a.conductor(), std::move(out));
}

CycElem operator*(const CycElem& a, const CycElem& b) {
  auto [x, y] = align(a, b);
  auto field = CycField::get(x.conductor());
  const std::size_t d = field->degree();
  std::vector<Rational> conv(2 * d - 1, Rational(0));
  for (std::size_t i = 0; i < d; ++i) {
    if (x.coords()[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) conv[i + j] += x.coords()[i] * y.coords()[j];
  }
  const auto& phi = field->cyclotomic_poly();
  for (std::size_t i = conv.size(); i-- > d;) {
    Rational c = conv[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j < d; ++j) conv[i - d + j] -= c * Rational(phi[j]);
    conv[i] = 0;
  }
  conv.resize(d);
  return CycElem::from_coords(x.conductor(), std::move(conv));
}

CycElem CycElem::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  auto phi = cyclotomic_as_rational_poly(*field_);
  auto [g, u, v] = Poly<Rational>::extended_gcd(to_poly(*this), phi);
  (void)v;
  if (g.degree() != 0) throw std::logic_error("cyclotomic polynomial not coprime to element");
  auto [q, r] = divmod(u, phi);
  (void)q;
  std::vector<Rational> out(field_->degree(), Rational(0));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = r.coeff(i);
  return CycElem(field_, std::move(out));
}

CycElem operator/(const CycElem& a, const CycElem& b) { return a * b.inverse(); }

CycElem CycElem::pow(const Int& e) const {
  if (e < 0) return inverse().pow(-e);
  CycElem base = *this;
  CycElem acc(1L);
  Int k = e;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) acc = acc * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return acc;
}

CycElem CycElem::galois_apply(unsigned long u) const {
  const unsigned long m = conductor();
  u %= m;
  if (std::gcd(u, m) != 1)
    throw std::invalid_argument("galois_apply: exponent not coprime to conductor");
  std::vector<Rational> out(field_->degree(), Rational(0));
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i] == 0) continue;
    const auto& zp = field_->zeta_power(i * u % m);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += coords_[i] * zp[j];
  }
  return CycElem(field_, std::move(out));
}

bool operator==(const CycElem& a, const CycElem& b) {
  if (a.conductor() == b.conductor()) return a.coords() == b.coords();
  // conductors differ: compare in the compositum
  unsigned long m = std::lcm(a.conductor(), b.conductor());
  return a.promote(m).coords() == b.promote(m).coords();
}

std::string CycElem::str() const {
  std::ostringstream os;
  os << conductor() << ":[";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) os << ",";
    os << coords_[i].get_str();
  }
  os << "]";
  return os.str();
}

CycElem frobenius(const CycElem& x, unsigned long p) {
  if (!is_prime(p)) throw std::invalid_argument("frobenius: p must be prime");
  if (x.conductor() % p == 0)
    throw std::domain_error("frobenius: prime " + std::to_string(p) + " ramifies in conductor " +
                            std::to_string(x.conductor()));
  return x.galois_apply(p % x.conductor());
}

ExtOrder padic_order(const CycElem& x, unsigned long p) {
  if (!is_prime(p)) throw std::invalid_argument("padic_order: p must be prime");
  if (x.conductor() % p == 0)
    throw std::domain_error("padic_order: prime " + std::to_string(p) + " ramifies in conductor " +
                            std::to_string(x.conductor()));
  ExtOrder acc = ExtOrder::inf();
  for (const auto& c : x.coords()) acc = min(acc, rat_valuation(c, p));
  return acc;
}

bool congruent_mod(const CycElem& x, const CycElem& y, unsigned long p, long k) {
  return padic_order(x - y, p).at_least(k);
}

CycElem parse_cyc(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) return CycElem(parse_rational(text));
  unsigned long conductor = std::stoul(text.substr(0, colon));
  std::string rest = text.substr(colon + 1);
  if (rest.size() < 2 || rest.front() != '[' || rest.back() != ']')
    throw std::invalid_argument("parse_cyc: expected M:[c0,c1,...] in '" + text + "'");
  rest = rest.substr(1, rest.size() - 2);
  std::vector<Rational> coords;
  std::string tok;
  std::istringstream is(rest);
  while (std::getline(is, tok, ',')) coords.push_back(parse_rational(tok));
  if (rest.empty()) coords.clear();
  return CycElem::from_coords(conductor, std::move(coords));
}

}  // namespace sfn
