#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sfn/cyclotomic.hpp"

using namespace sfn;

TEST_CASE("rational valuations") {
  CHECK(rat_valuation(Rational(50, 3), 5) == ExtOrder::of(2));
  CHECK(rat_valuation(Rational(0), 7) == ExtOrder::inf());
  CHECK(rat_valuation(Rational(1, 5), 5) == ExtOrder::of(-1));
  CHECK_THROWS_AS(rat_valuation(Rational(1), 6), std::invalid_argument);
}

TEST_CASE("extended order saturates") {
  CHECK(ExtOrder::inf() + ExtOrder::of(3) == ExtOrder::inf());
  CHECK(min(ExtOrder::inf(), ExtOrder::of(3)) == ExtOrder::of(3));
  CHECK(ExtOrder::of(2) + ExtOrder::of(-5) == ExtOrder::of(-3));
  CHECK(ExtOrder::inf().at_least(1000));
}

TEST_CASE("field arithmetic in small conductors") {
  CycElem z4 = CycElem::zeta(4);
  CHECK(z4 * z4 == CycElem(Rational(-1), 4));

  CycElem a = CycElem::zeta(5) + CycElem(3L);
  CHECK(a + CycElem() == a);

  // inv(zeta_3) = zeta_3^2 = -1 - zeta_3
  CycElem z3 = CycElem::zeta(3);
  CHECK(z3.inverse() == CycElem::from_coords(3, {Rational(-1), Rational(-1)}));
  CHECK(z3.inverse() == z3.pow(Int(2)));
  CHECK(z3 * z3.inverse() == CycElem(1L).promote(3));

  CHECK_THROWS_AS(CycElem().inverse(), std::exception);
}

TEST_CASE("conductor promotion rules") {
  CycElem z3 = CycElem::zeta(3);
  CycElem half(Rational(1, 2));
  CHECK((z3 + half).conductor() == 3);  // conductor 1 promotes implicitly
  CHECK_THROWS_AS(z3 + CycElem::zeta(4), std::invalid_argument);
  CHECK(z3.promote(12).conductor() == 12);
  CHECK(z3.promote(12) * CycElem::zeta(4).promote(12) == CycElem::zeta(12).pow(Int(7)));
  CHECK_THROWS_AS(z3.promote(7), std::invalid_argument);
}

TEST_CASE("frobenius") {
  CycElem z5 = CycElem::zeta(5);
  CHECK(frobenius(z5, 2) == z5.pow(Int(2)));
  CHECK(frobenius(CycElem(Rational(3, 7)), 11) == CycElem(Rational(3, 7)));
  CycElem z3 = CycElem::zeta(3);
  CHECK(frobenius(CycElem(1L) + z3, 2) == -z3);
  CHECK_THROWS_AS(frobenius(z3, 3), std::domain_error);  // ramified
  CHECK_THROWS_AS(frobenius(z3, 4), std::invalid_argument);

  // composition: Frob_p . Frob_p = (zeta -> zeta^{p^2})
  CycElem z7 = CycElem::zeta(7);
  CHECK(frobenius(frobenius(z7 + CycElem(2L) * z7 * z7, 3), 3) ==
        (z7 + CycElem(2L) * z7 * z7).galois_apply(9 % 7));

  // Frob_p(x) = x^p mod p for integer coordinates
  for (unsigned long p : {2ul, 5ul, 7ul}) {
    CycElem x = CycElem(3L) + CycElem(2L) * z3 - z3 * z3;
    CHECK(congruent_mod(frobenius(x, p), x.pow(Int(p)), p, 1));
  }
}

TEST_CASE("padic order on cyclotomic elements") {
  CycElem z3 = CycElem::zeta(3);
  CHECK(padic_order(CycElem(5L) + CycElem(10L) * z3, 5) == ExtOrder::of(1));
  CHECK(padic_order(CycElem(), 7) == ExtOrder::inf());
  CHECK(padic_order(z3.pow(Int(7)) - z3, 7) == ExtOrder::inf());
  CHECK_THROWS_AS(padic_order(z3, 3), std::domain_error);

  // ultrametric bound on sums
  CycElem x = CycElem(Rational(5, 2)) * z3 + CycElem(25L);
  CycElem y = CycElem(Rational(1, 5)) - z3;
  ExtOrder lhs = padic_order(x + y, 5);
  CHECK(lhs.at_least(std::min(padic_order(x, 5).value, padic_order(y, 5).value)));
}

TEST_CASE("congruences") {
  CycElem z3 = CycElem::zeta(3);
  CHECK(congruent_mod(frobenius(z3, 7), z3, 7, 3));
  CHECK(congruent_mod(CycElem(2L), CycElem(2L), 13, 100));
  CHECK_FALSE(congruent_mod(CycElem(Rational(1, 5)), CycElem(), 5, 1));
}

TEST_CASE("roots of unity and canonical text form") {
  CHECK(CycElem::roots_of_unity_order(12) == 12);
  CHECK(CycElem::roots_of_unity_order(5) == 10);
  // the generator really has the advertised order
  for (unsigned long m : {1ul, 3ul, 4ul, 5ul, 12ul}) {
    unsigned long w = CycElem::roots_of_unity_order(m);
    CycElem g = CycElem::root_of_unity(m, 1);
    CHECK(g.pow(Int(w)) == CycElem(1L).promote(m));
    for (unsigned long d = 1; d < w; ++d)
      if (w % d == 0) CHECK_FALSE(g.pow(Int(d)) == CycElem(1L).promote(m));
  }

  CycElem x = CycElem(Rational(3, 2)) * CycElem::zeta(5) - CycElem(1L);
  CHECK(parse_cyc(x.str()) == x);
  CHECK(parse_cyc("-7/3") == CycElem(Rational(-7, 3)));
  CHECK(x.str() == "5:[-1,3/2,0,0]");
  CHECK_THROWS_AS(parse_cyc("5:[1,2,3]"), std::exception);  // wrong coordinate count
}

TEST_CASE("euler phi") {
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(2) == 1);
  CHECK(euler_phi(12) == 4);
  CHECK(euler_phi(97) == 96);
  CHECK(euler_phi(360) == 96);
}
