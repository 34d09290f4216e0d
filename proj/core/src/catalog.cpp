#include "sfn/catalog.hpp"

#include "sfn/verifier.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

namespace sfn {

CycElem CatalogEntry::at(std::uint64_t n) const {
  if (n == 0 || n > horizon)
    throw std::out_of_range("sequence '" + name + "': index " + std::to_string(n) +
                            " outside 1.." + std::to_string(horizon));
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->memo.find(n);
    if (it != cache_->memo.end()) return it->second;
  }
  CycElem value = gen(n);
  std::lock_guard<std::mutex> lock(cache_->mu);
  return cache_->memo.emplace(n, std::move(value)).first->second;
}

namespace {

Int binom(unsigned long n, unsigned long k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

constexpr std::uint64_t kUnboundedHorizon = 1'000'000'000ULL;

}  // namespace

Int apery_number(unsigned long n) {
  Int sum = 0;
  for (unsigned long k = 0; k <= n; ++k) {
    Int a = binom(n, k);
    Int b = binom(n + k, k);
    sum += a * a * b * b;
  }
  return sum;
}

Int domb_number(unsigned long n) {
  Int sum = 0;
  for (unsigned long k = 0; k <= n; ++k) {
    Int a = binom(n, k);
    sum += a * a * binom(2 * k, k) * binom(2 * (n - k), n - k);
  }
  return sum;
}

Int almkvist_zudilin_number(unsigned long n) {
  Int sum = 0;
  for (unsigned long k = 0; 3 * k <= n; ++k) {
    Int term = binom(n, 3 * k) * binom(n + k, k);
    Int fact3k, factk;
    mpz_fac_ui(fact3k.get_mpz_t(), 3 * k);
    mpz_fac_ui(factk.get_mpz_t(), k);
    term *= fact3k / (factk * factk * factk);
    Int three;
    mpz_ui_pow_ui(three.get_mpz_t(), 3, n - 3 * k);
    if ((n - 3 * k) % 2 == 1) three = -three;
    sum += term * three;
  }
  return sum;
}

CatalogEntry geometric(const CycElem& c) {
  if (c.is_zero()) throw std::invalid_argument("geometric: ratio must be nonzero");
  CatalogEntry e;
  e.name = "geometric:" + (c.is_rational() ? c.rational_value().get_str() : c.str());
  e.conductor = c.conductor();
  e.claimed_s = 1;
  e.note = "a_n = c^n";
  e.horizon = kUnboundedHorizon;
  e.gen = [c](std::uint64_t n) { return c.pow(Int(static_cast<unsigned long>(n))); };
  return e;
}

CatalogEntry periodic(const std::vector<Rational>& coefficients, unsigned long period) {
  if (period == 0 || coefficients.size() != period)
    throw std::invalid_argument("periodic: need exactly P coefficients");
  const CycElem z = CycElem::zeta(period);
  std::vector<CycElem> values;  // a_1..a_P
  values.reserve(period);
  for (unsigned long n = 1; n <= period; ++n) {
    CycElem acc;
    for (unsigned long i = 1; i <= period; ++i)
      acc = acc + CycElem(coefficients[i - 1]) * z.pow(Int(i * n));
    values.push_back(acc);
  }
  bool rational = true;
  for (const auto& v : values) rational = rational && v.is_rational();
  if (rational)
    for (auto& v : values) v = CycElem(v.rational_value());

  // the ambient field is Q(zeta_d) for the minimal period d of the values,
  // whether or not the values themselves collapse into Q: congruences at
  // primes ramified there genuinely fail (a_n = (-1)^n at p = 2, say)
  unsigned long min_period = period;
  for (unsigned long d = 1; d < period; ++d) {
    if (period % d != 0) continue;
    bool ok = true;
    for (unsigned long i = 0; ok && i < period; ++i) ok = values[i] == values[(i + d) % period];
    if (ok) {
      min_period = d;
      break;
    }
  }

  CatalogEntry e;
  std::ostringstream name;
  name << "periodic:";
  for (unsigned long i = 0; i < period; ++i) name << (i ? "," : "") << coefficients[i].get_str();
  e.name = name.str();
  e.conductor = min_period;
  e.claimed_s = 2;
  // the values live in Z[zeta][1/D]: primes dividing a coefficient denominator
  // must sit in the exclusion set
  for (const auto& c : coefficients)
    for (unsigned long q : prime_support(Int(c.get_den()))) e.excluded_primes.insert(q);
  e.note = "a_n = sum A_i zeta^{in}";
  e.horizon = kUnboundedHorizon;
  e.gen = [values, period](std::uint64_t n) { return values[(n - 1) % period]; };
  return e;
}

CatalogEntry apery() {
  CatalogEntry e;
  e.name = "apery";
  e.claimed_s = 3;
  e.excluded_primes = {2, 3};
  e.note = "A_n = sum C(n,k)^2 C(n+k,k)^2";
  e.horizon = 100'000;
  e.gen = [](std::uint64_t n) { return CycElem(Rational(apery_number(n))); };
  return e;
}

CatalogEntry domb() {
  CatalogEntry e;
  e.name = "domb";
  e.claimed_s = 3;
  e.excluded_primes = {2, 3};
  e.note = "D_n = sum C(n,k)^2 C(2k,k) C(2(n-k),n-k)";
  e.horizon = 100'000;
  e.gen = [](std::uint64_t n) { return CycElem(Rational(domb_number(n))); };
  return e;
}

CatalogEntry almkvist_zudilin() {
  CatalogEntry e;
  e.name = "az";
  e.claimed_s = 3;
  e.excluded_primes = {2, 3};
  e.note = "Z_n = sum (-3)^{n-3k} C(n,3k) C(n+k,k) (3k)!/k!^3";
  e.horizon = 100'000;
  e.gen = [](std::uint64_t n) { return CycElem(Rational(almkvist_zudilin_number(n))); };
  return e;
}

CatalogEntry hadamard_product(const CatalogEntry& a, const CatalogEntry& b) {
  CatalogEntry e;
  e.name = a.name + "*" + b.name;
  e.conductor = std::lcm(a.conductor, b.conductor);
  e.excluded_primes = a.excluded_primes;
  e.excluded_primes.insert(b.excluded_primes.begin(), b.excluded_primes.end());
  e.note = "coefficient-wise product";
  e.horizon = std::min(a.horizon, b.horizon);
  CatalogEntry lhs = a, rhs = b;
  e.gen = [lhs, rhs](std::uint64_t n) { return lhs.at(n) * rhs.at(n); };
  return e;
}

CatalogEntry ingest_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("ingest_csv: cannot open '" + path + "'");
  auto values = std::make_shared<std::vector<CycElem>>();
  std::string line;
  std::uint64_t expected = 1;
  std::size_t line_no = 0;
  unsigned long conductor = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error("ingest_csv: line " + std::to_string(line_no) + ": expected 'n,value'");
    std::uint64_t n;
    try {
      n = std::stoull(line.substr(0, comma));
    } catch (const std::exception&) {
      throw std::runtime_error("ingest_csv: line " + std::to_string(line_no) + ": bad index");
    }
    if (n != expected)
      throw std::runtime_error("ingest_csv: line " + std::to_string(line_no) + ": index gap (got " +
                               std::to_string(n) + ", expected " + std::to_string(expected) + ")");
    CycElem v = parse_cyc(line.substr(comma + 1));
    conductor = std::lcm(conductor, v.conductor());
    values->push_back(std::move(v));
    ++expected;
  }
  if (values->empty()) throw std::runtime_error("ingest_csv: no data in '" + path + "'");
  for (auto& v : *values) v = v.promote(conductor);

  CatalogEntry e;
  e.name = "csv:" + path;
  e.conductor = conductor;
  e.note = "ingested from file";
  e.horizon = values->size();
  e.gen = [values](std::uint64_t n) { return (*values)[n - 1]; };
  return e;
}

void export_csv(const CatalogEntry& entry, const std::string& path, std::uint64_t n_max) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("export_csv: cannot open '" + path + "'");
  for (std::uint64_t n = 1; n <= n_max; ++n) out << n << "," << entry.at(n).str() << "\n";
}

CatalogEntry resolve_sequence(const std::string& spec) {
  if (spec == "apery") return apery();
  if (spec == "domb") return domb();
  if (spec == "az") return almkvist_zudilin();
  if (spec.rfind("geometric:", 0) == 0) return geometric(parse_cyc(spec.substr(10)));
  if (spec.rfind("periodic:", 0) == 0) {
    std::vector<Rational> coeffs;
    std::istringstream is(spec.substr(9));
    std::string tok;
    while (std::getline(is, tok, ',')) coeffs.push_back(parse_rational(tok));
    if (coeffs.empty()) throw std::invalid_argument("periodic: empty coefficient list");
    return periodic(coeffs, coeffs.size());
  }
  return ingest_csv(spec);
}

std::vector<std::string> catalog_names() {
  return {"apery", "domb", "az", "geometric:<c>", "periodic:<A1,...,AP>", "<file.csv>"};
}

TruncSeries<CycElem> sequence_series(const CatalogEntry& entry, std::size_t truncation) {
  TruncSeries<CycElem> out(truncation);
  for (std::size_t n = 1; n <= truncation; ++n) out.set(n, entry.at(n));
  return out;
}

}  // namespace sfn
