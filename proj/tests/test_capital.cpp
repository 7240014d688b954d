#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "aitk/capital.hpp"

using namespace aitk;

TEST_CASE("exact dyadic arithmetic") {
  Capital one = Capital::one();
  CHECK(one + one == Capital(2L));
  CHECK(one.half() + one.half() == one);
  CHECK(one.half().twice() == one);
  CHECK(Capital::pow2(-3) + Capital::pow2(-3) == Capital::pow2(-2));
  CHECK(Capital(5L) - Capital(2L) == Capital(3L));
  CHECK(Capital(3L) * Capital::pow2(-1) == Capital(3L).half());
}

TEST_CASE("canonical form and text rendering") {
  CHECK(Capital::pow2(-1).to_pair_text() == "1/2^1");
  CHECK((Capital(2L).half()).to_pair_text() == "1/2^0");  // normalized
  CHECK(Capital::zero().to_pair_text() == "0/2^0");
  CHECK(Capital(3L).half().to_decimal_text() == "1.5");
}

TEST_CASE("ordering") {
  CHECK(Capital::pow2(-2) < Capital::pow2(-1));
  CHECK(Capital(3L) > Capital(2L));
  CHECK(Capital::zero() <= Capital::zero());
}

TEST_CASE("average2 is exact") {
  CHECK(average2(Capital::one(), Capital(3L)) == Capital(2L));
  CHECK(average2(Capital::one(), Capital::zero()) == Capital::pow2(-1));
}

TEST_CASE("mul_ratio: exact or refused") {
  CHECK(mul_ratio(Capital(6L), Capital(2L), Capital(3L)) == Capital(4L));
  CHECK(mul_ratio(Capital(5L), Capital(1L), Capital(4L)) ==
        Capital(5L) * Capital::pow2(-2));
  CHECK_THROWS_AS(mul_ratio(Capital::one(), Capital(1L), Capital(3L)),
                  NonDyadicError);
  CHECK_THROWS_AS(mul_ratio(Capital::one(), Capital(1L), Capital::zero()),
                  DivisionByZeroError);
  CHECK(mul_ratio(Capital::zero(), Capital(7L), Capital(8L)) ==
        Capital::zero());
}
