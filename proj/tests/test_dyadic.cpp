#include <doctest.h>

#include "confun/dyadic.hpp"

using namespace confun;

TEST_CASE("dyadic normalization keeps lowest terms") {
  Dyadic d(Int(12), 2);  // 12/4 = 3
  CHECK(d.is_integer());
  CHECK(d.numerator() == 3);
  CHECK(d.exponent() == 0);

  Dyadic h(Int(5), 3);  // 5/8 stays
  CHECK(h.exponent() == 3);
  CHECK_FALSE(h.is_integer());

  CHECK(Dyadic(Int(0), 7) == Dyadic(0));
}

TEST_CASE("dyadic arithmetic is exact") {
  Dyadic a(Int(1), 1);   // 1/2
  Dyadic b(Int(3), 2);   // 3/4
  CHECK((a + b).str() == "5/4");
  CHECK((a - b).str() == "-1/4");
  CHECK((a * b).str() == "3/8");
  CHECK((a + a) == Dyadic(1));
  CHECK((-b).str() == "-3/4");
  CHECK(Dyadic(6).half() == Dyadic(3));
}

TEST_CASE("parity and integer views") {
  CHECK(Dyadic(4).is_even());
  CHECK(Dyadic(-3).is_odd());
  CHECK_FALSE(Dyadic(Int(1), 1).is_odd());
  CHECK(Dyadic(7).as_integer() == 7);
  CHECK_THROWS_AS(Dyadic(Int(1), 1).as_integer(), Error);
  CHECK(Dyadic(-3).mod_pow2(2) == 1);
  CHECK(Dyadic(-3).mod_pow2(3) == 5);
  CHECK(Dyadic(8).mod_pow2(3) == 0);
}

TEST_CASE("string round trip") {
  for (const char* s : {"3", "-1", "5/2", "7/8", "0"}) {
    CHECK(Dyadic::parse(s).str() == s);
  }
  CHECK(Dyadic::parse("10/4").str() == "5/2");
  CHECK_THROWS_AS(Dyadic::parse("1/3"), ParseError);
  CHECK_THROWS_AS(Dyadic::parse("x"), ParseError);
}
