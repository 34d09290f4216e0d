#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "sfn/catalog.hpp"
#include "sfn/verifier.hpp"

using namespace sfn;

TEST_CASE("classical binomial sums") {
  CHECK(apery_number(0) == 1);
  CHECK(apery_number(1) == 5);
  CHECK(apery_number(2) == 73);
  CHECK(apery_number(5) == 819005);

  CHECK(domb_number(0) == 1);
  CHECK(domb_number(1) == 4);
  CHECK(domb_number(2) == 28);
  CHECK(domb_number(3) == 256);

  CHECK(almkvist_zudilin_number(0) == 1);
  CHECK(almkvist_zudilin_number(1) == -3);
  CHECK(almkvist_zudilin_number(2) == 9);
  CHECK(almkvist_zudilin_number(3) == -3);
  CHECK(almkvist_zudilin_number(4) == -279);
}

TEST_CASE("geometric entries") {
  auto one = geometric(CycElem(1L));
  for (std::uint64_t n = 1; n <= 5; ++n) CHECK(one.at(n) == CycElem(1L));

  auto two = geometric(CycElem(2L));
  CHECK(two.at(1) == CycElem(2L));
  CHECK(two.at(10) == CycElem(1024L));
  CHECK(two.claimed_s == 1);

  auto zg = geometric(CycElem::zeta(3));
  CHECK(zg.at(3) == CycElem(1L).promote(3));
  CHECK(zg.at(4) == CycElem::zeta(3));
  CHECK(zg.conductor == 3);

  CHECK_THROWS_AS(geometric(CycElem()), std::invalid_argument);
  CHECK_THROWS_AS(two.at(0), std::out_of_range);
}

TEST_CASE("periodic entries") {
  auto ones = periodic({Rational(1)}, 1);
  CHECK(ones.at(7) == CycElem(1L));

  auto alt = periodic({Rational(1), Rational(0)}, 2);  // a_n = (-1)^n
  // rational values, but the poles live in Q(zeta_2): 2 still ramifies
  CHECK(alt.conductor == 2);
  CHECK(alt.at(1) == CycElem(-1L));
  CHECK(alt.at(2) == CycElem(1L));

  auto allones = periodic({Rational(0), Rational(1)}, 2);  // zeta^2 = 1 term
  CHECK(allones.at(3) == CycElem(1L));
  CHECK(allones.conductor == 1);  // constant: minimal period 1

  auto irr = periodic({Rational(1), Rational(0), Rational(0)}, 3);
  CHECK(irr.conductor == 3);
  CHECK(irr.at(1) == CycElem::zeta(3));
  CHECK(irr.at(3) == CycElem(1L).promote(3));

  CHECK_THROWS_AS(periodic({Rational(1)}, 2), std::invalid_argument);
}

TEST_CASE("catalog metadata") {
  CHECK(apery().excluded_primes == std::set<unsigned long>{2, 3});
  CHECK(domb().claimed_s == 3);
  CHECK(almkvist_zudilin().excluded_primes == std::set<unsigned long>{2, 3});
  CHECK_FALSE(catalog_names().empty());
}

TEST_CASE("hadamard product entry") {
  auto prod = hadamard_product(apery(), geometric(CycElem(2L)));
  CHECK(prod.at(1) == CycElem(10L));    // 5 * 2
  CHECK(prod.at(2) == CycElem(292L));   // 73 * 4
  CHECK(prod.at(3) == CycElem(11560L)); // 1445 * 8
  CHECK(prod.excluded_primes == std::set<unsigned long>{2, 3});
}

TEST_CASE("csv round trip and error reporting") {
  const std::string path = "catalog_test_tmp.csv";
  auto src = periodic({Rational(1), Rational(0), Rational(0)}, 3);
  export_csv(src, path, 9);
  auto back = ingest_csv(path);
  CHECK(back.horizon == 9);
  CHECK(back.conductor == 3);
  for (std::uint64_t n = 1; n <= 9; ++n) CHECK(back.at(n) == src.at(n));

  {
    std::ofstream out(path);
    out << "1,1\n3,9\n";
  }
  CHECK_THROWS_WITH_AS(ingest_csv(path), doctest::Contains("line 2"), std::runtime_error);

  {
    std::ofstream out(path);
    out << "2,4\n";
  }
  CHECK_THROWS_AS(ingest_csv(path), std::runtime_error);

  std::remove(path.c_str());
  CHECK_THROWS_AS(ingest_csv("does_not_exist.csv"), std::runtime_error);
}

TEST_CASE("sequence spec resolution") {
  CHECK(resolve_sequence("apery").name == "apery");
  CHECK(resolve_sequence("domb").at(1) == CycElem(4L));
  CHECK(resolve_sequence("az").at(1) == CycElem(-3L));
  CHECK(resolve_sequence("geometric:3").at(2) == CycElem(9L));
  CHECK(resolve_sequence("periodic:1,0").at(1) == CycElem(-1L));
}

TEST_CASE("memoization is transparent") {
  int calls = 0;
  CatalogEntry e;
  e.name = "probe";
  e.horizon = 10;
  e.gen = [&calls](std::uint64_t n) {
    ++calls;
    return CycElem(static_cast<long>(n));
  };
  CHECK(e.at(4) == CycElem(4L));
  CHECK(e.at(4) == CycElem(4L));
  CHECK(calls == 1);
}

TEST_CASE("catalog sequences satisfy their claimed congruences on a window") {
  CHECK(verify_s_sequence(apery(), 3, {5, 7, 11, 13, 17, 19, 23, 29, 31}, 2, 2).pass());
  CHECK(verify_s_sequence(domb(), 3, {5, 7, 11}, 2, 2).pass());
  CHECK(verify_s_sequence(almkvist_zudilin(), 3, {5, 7, 11}, 2, 2).pass());
}
