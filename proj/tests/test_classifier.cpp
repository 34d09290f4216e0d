#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sfn/ratfunc.hpp"

using namespace sfn;

namespace {

Poly<CycElem> poly(std::initializer_list<long> coeffs) {
  std::vector<CycElem> v;
  for (long c : coeffs) v.emplace_back(c);
  return Poly<CycElem>(std::move(v));
}

const Poly<CycElem> z = poly({0, 1});

}  // namespace

TEST_CASE("maclaurin expansion") {
  RatFunc geo(z, poly({1, -1}));
  auto s = maclaurin(geo, 10);
  CHECK(s[0].is_zero());
  for (std::size_t n = 1; n <= 10; ++n) CHECK(s[n] == CycElem(1L));

  RatFunc ramp(z, poly({1, -2, 1}));
  auto r = maclaurin(ramp, 10);
  for (std::size_t n = 0; n <= 10; ++n) CHECK(r[n] == CycElem(static_cast<long>(n)));

  RatFunc alt(poly({0, -1}), poly({1, 1}));
  auto a = maclaurin(alt, 10);
  for (std::size_t n = 1; n <= 10; ++n) CHECK(a[n] == CycElem(n % 2 == 0 ? 1L : -1L));

  CHECK_THROWS_AS(RatFunc(poly({1}), z), std::invalid_argument);  // pole at origin
}

TEST_CASE("rational function normalization") {
  // (z - z^2) / (1 - z^2) reduces to z / (1 + z)
  RatFunc f(poly({0, 1, -1}), poly({1, 0, -1}));
  CHECK(f.den().degree() == 1);
  CHECK(f == RatFunc(z, poly({1, 1})));
  CHECK(f.den().lead() == CycElem(1L));  // monic after normalization
}

TEST_CASE("cyclotomic period of the denominator") {
  CHECK(find_cyclotomic_period(poly({1, 1}), 720) == 2);
  CHECK_FALSE(find_cyclotomic_period(poly({1, -2, 1}), 720).has_value());
  CHECK(find_cyclotomic_period(poly({1, 1, 1}), 720) == 3);
  CHECK(find_cyclotomic_period(poly({1, -1}), 720) == 1);
  CHECK_FALSE(find_cyclotomic_period(poly({1, -2}), 720).has_value());
}

TEST_CASE("simple pole check") {
  CHECK(simple_pole_check(poly({1, 0, -1})));       // (1-z)(1+z)
  CHECK_FALSE(simple_pole_check(poly({1, -2, 1})));  // (1-z)^2
  for (unsigned long n = 1; n <= 8; ++n) {
    std::vector<CycElem> v(n + 1);
    v[0] = CycElem(1L);
    v[n] = CycElem(-1L);
    CHECK(simple_pole_check(Poly<CycElem>(std::move(v))));  // 1 - z^n squarefree
  }
}

TEST_CASE("minimal period") {
  auto lift = [](std::initializer_list<long> vals) {
    std::vector<CycElem> v;
    for (long x : vals) v.emplace_back(x);
    return v;
  };
  CHECK(minimal_period(lift({1, 1, 1, 1})) == 1);
  CHECK(minimal_period(lift({1, -1, 1, -1})) == 2);
  CHECK(minimal_period(lift({2, 5, 2, 5, 2, 5})) == 2);
  CHECK(minimal_period(lift({1, 2, 3})) == 3);
}

TEST_CASE("inverse transform residues") {
  // period 1
  auto a1 = residues_dft({CycElem(1L)}, CycElem(1L));
  CHECK(a1 == std::vector<CycElem>{CycElem(1L)});

  // a_n = (-1)^n: A = (1, 0)
  auto a2 = residues_dft({CycElem(-1L), CycElem(1L)}, CycElem(-1L));
  CHECK(a2[0] == CycElem(1L));
  CHECK(a2[1].is_zero());

  // a_n = zeta_3^n: A = (1, 0, 0)
  CycElem z3 = CycElem::zeta(3);
  auto a3 = residues_dft({z3, z3 * z3, CycElem(1L).promote(3)}, z3);
  CHECK(a3[0] == CycElem(1L).promote(3));
  CHECK(a3[1].is_zero());
  CHECK(a3[2].is_zero());

  CHECK_THROWS_AS(residues_dft({CycElem(1L), CycElem(1L)}, CycElem(1L)), std::invalid_argument);
}

TEST_CASE("classification verdicts") {
  Verdict ok = classify_2function(RatFunc(z, poly({1, -1})));
  REQUIRE(ok.is_abelian());
  CHECK(ok.form->period == 1);
  CHECK(ok.form->residues == std::vector<Rational>{Rational(1)});

  Verdict multi = classify_2function(RatFunc(z, poly({1, -2, 1})));
  REQUIRE_FALSE(multi.is_abelian());
  CHECK(multi.reason == RejectReason::multiple_pole);

  Verdict notroot = classify_2function(RatFunc(z, poly({1, -2})));
  REQUIRE_FALSE(notroot.is_abelian());
  CHECK(notroot.reason == RejectReason::pole_not_root_of_unity);

  Verdict at0 = classify_2function(RatFunc(poly({1}), poly({1, -1})));
  REQUIRE_FALSE(at0.is_abelian());
  CHECK(at0.reason == RejectReason::nonzero_at_origin);

  Verdict degree = classify_2function(RatFunc(poly({0, 0, 0, 1}), poly({1, 1})));
  REQUIRE_FALSE(degree.is_abelian());
  CHECK(degree.reason == RejectReason::degree_bound);

  CHECK_THROWS_AS(classify_2function(RatFunc(Poly<CycElem>(), poly({1, -1}))),
                  std::invalid_argument);
}

TEST_CASE("irrational residues are rejected with the offending witness") {
  AbelianForm form;
  form.period = 3;
  form.zeta = CycElem::zeta(3);
  form.residues = {Rational(1), Rational(0), Rational(0)};
  RatFunc f = synthesize_abelian(form);
  // multiply through by zeta_3: residues stop being rational
  Poly<CycElem> num = Poly<CycElem>(CycElem::zeta(3)) * f.num();
  Verdict v = classify_2function(RatFunc(num, f.den()));
  REQUIRE_FALSE(v.is_abelian());
  CHECK(v.reason == RejectReason::irrational_residue);
  CHECK_FALSE(v.witness.empty());
}

TEST_CASE("round trip on random abelian forms") {
  std::mt19937 rng(424242);
  std::uniform_int_distribution<unsigned long> period_pick(1, 12);
  std::uniform_int_distribution<long> num_pick(-5, 5);
  std::uniform_int_distribution<unsigned long> den_pick(1, 10);
  for (int trial = 0; trial < 25; ++trial) {
    AbelianForm form;
    form.period = period_pick(rng);
    form.zeta = CycElem::zeta(form.period);
    form.residues.assign(form.period, Rational(0));
    bool nonzero = false;
    for (auto& a : form.residues) {
      a = Rational(num_pick(rng), den_pick(rng));
      a.canonicalize();
      nonzero = nonzero || a != 0;
    }
    if (!nonzero) form.residues[0] = 1;
    RatFunc f = synthesize_abelian(form);
    Verdict v = classify_2function(f);
    REQUIRE(v.is_abelian());
    CHECK(v.form->residues.size() == v.form->period);
    // recovered form reproduces the coefficients of f exactly
    auto series = maclaurin(f, 3 * v.form->period);
    CycElem zeta = v.form->zeta.promote(std::lcm(v.form->period, f.conductor()));
    for (std::size_t n = 1; n <= series.truncation(); ++n) {
      CycElem expect;
      for (unsigned long j = 1; j <= v.form->period; ++j)
        expect = expect + CycElem(v.form->residues[j - 1]) *
                              zeta.pow(Int(j) * Int(static_cast<unsigned long>(n)));
      CHECK(series[n] == expect.promote(series[n].conductor()));
    }
    // minimality: no proper divisor of the period works
    auto window = maclaurin(f, v.form->period);
    std::vector<CycElem> coeffs;
    for (unsigned long i = 1; i <= v.form->period; ++i) coeffs.push_back(window[i]);
    CHECK(minimal_period(coeffs) == v.form->period);
  }
}

TEST_CASE("one-function partial fractions") {
  auto single = minton_form(RatFunc(z, poly({1, -1})));
  REQUIRE(single.terms.has_value());
  REQUIRE(single.terms->size() == 1);
  CHECK((*single.terms)[0].residue == CycElem(1L));
  CHECK((*single.terms)[0].alpha == CycElem(1L));

  // 2z/(1-z^2): a_n = 1 + (-1)^{n+1}, so the terms are (1, 1) and (-1, -1)
  auto pair = minton_form(RatFunc(poly({0, 2}), poly({1, 0, -1})));
  REQUIRE(pair.terms.has_value());
  REQUIRE(pair.terms->size() == 2);
  auto series = maclaurin(RatFunc(poly({0, 2}), poly({1, 0, -1})), 8);
  for (std::size_t n = 1; n <= 8; ++n) {
    CycElem acc;
    for (const auto& t : *pair.terms)
      acc = acc + t.residue * t.alpha.pow(Int(static_cast<unsigned long>(n)));
    CHECK(acc == series[n]);
  }
  bool saw_plus = false, saw_minus = false;
  for (const auto& t : *pair.terms) {
    if (t.alpha == CycElem(1L)) {
      saw_plus = true;
      CHECK(t.residue == CycElem(1L));
    }
    if (t.alpha == CycElem(-1L)) {
      saw_minus = true;
      CHECK(t.residue == CycElem(-1L));
    }
  }
  CHECK(saw_plus);
  CHECK(saw_minus);

  // z/(1-2z) = sum 2^{n-1} z^n = sum (1/2) 2^n z^n
  auto geo2 = minton_form(RatFunc(z, poly({1, -2})));
  REQUIRE(geo2.terms.has_value());
  REQUIRE(geo2.terms->size() == 1);
  CHECK((*geo2.terms)[0].residue == CycElem(Rational(1, 2)));
  CHECK((*geo2.terms)[0].alpha == CycElem(2L));

  // denominator with a non-cyclotomic splitting field: diagnostic, not terms
  auto stuck = minton_form(RatFunc(z, poly({1, 0, -2})));  // poles at +-1/sqrt(2)
  CHECK_FALSE(stuck.terms.has_value());
  CHECK_FALSE(stuck.diagnostic.empty());

  CHECK_THROWS_AS(minton_form(RatFunc(z, poly({1, -2, 1}))), std::invalid_argument);
}

TEST_CASE("minton form over a genuine cyclotomic pole") {
  // F = zeta_3 z / (1 - zeta_3 z)
  std::vector<CycElem> den{CycElem(1L), -CycElem::zeta(3)};
  std::vector<CycElem> num{CycElem(), CycElem::zeta(3)};
  auto res = minton_form(RatFunc(Poly<CycElem>(num), Poly<CycElem>(den)));
  REQUIRE(res.terms.has_value());
  REQUIRE(res.terms->size() == 1);
  CHECK((*res.terms)[0].alpha == CycElem::zeta(3));
  CHECK((*res.terms)[0].residue == CycElem(1L).promote(3));
}
