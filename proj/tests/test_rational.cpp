#include "doctest.h"
#include "support.hpp"

using namespace pairmix;

TEST_CASE("2-adic valuation of reduced fractions") {
  CHECK(v2(Rat(4)) == 2);
  CHECK(v2(Rat(3)) == 0);
  CHECK(v2(Rat(5, 3)) == 0);
  CHECK(v2(Rat(10, 3)) == 1);
  CHECK(v2(Rat(3, 8)) == -3);
  CHECK(v2(Rat(-12)) == 2);
}

TEST_CASE("F_n membership") {
  CHECK(in_fn(Rat(5, 3), 2));        // v2 = 0
  CHECK(!in_fn(Rat(10, 3), 2));      // v2 = 1
  CHECK(in_fn(Rat(4), 2));           // v2 = 2
  CHECK(in_fn(Rat(1, 4), 2));        // v2 = -2
  CHECK(!in_fn(Rat(2), 2));
  CHECK(in_fn(Rat(8), 3));
  CHECK(in_fn(Rat(-1), 3));          // odd/odd
  CHECK(in_fn(Rat(7, 9), std::nullopt));
  CHECK(!in_fn(Rat(2), std::nullopt));
  CHECK(!in_fn(Rat(0), 2));
}

TEST_CASE("rational strings round-trip") {
  for (auto const& s : {"3/2", "-1/1", "0/1", "22/7"}) {
    CHECK(rat_to_string(rat_from_string(s)) == s);
  }
  CHECK(rat_from_string("6/4") == Rat(3, 2));
  CHECK_THROWS_AS(rat_from_string("1/0"), Error);
  CHECK_THROWS_AS(rat_from_string("x"), Error);
}

TEST_CASE("complex coefficients") {
  ComplexRational z = complex_from_string("1/2+3/4i");
  CHECK(z.re == Rat(1, 2));
  CHECK(z.im == Rat(3, 4));
  CHECK(complex_to_string(z) == "1/2+3/4i");
  CHECK(complex_to_string(complex_from_string("-i")) == "0/1-1/1i");
  CHECK(complex_from_string("2") == ComplexRational(Rat(2)));
  CHECK((z * z.conj()).re == z.norm_sq());
  CHECK((z * z.conj()).im == 0);
}

TEST_CASE("decimal rendering is exact long division") {
  CHECK(rat_to_decimal(Rat(1, 4)) == "0.25");
  CHECK(rat_to_decimal(Rat(-3, 2)) == "-1.5");
  CHECK(rat_to_decimal(Rat(1, 3), 5) == "0.33333");
  CHECK(rat_to_decimal(Rat(0)) == "0");
  CHECK(rat_to_decimal(Rat(1000)) == "1000");
}
