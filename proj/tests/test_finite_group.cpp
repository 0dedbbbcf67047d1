#include "doctest.h"
#include "support.hpp"

using namespace pairmix;

TEST_CASE("cyclic tables") {
  auto g = FiniteGroupTable::cyclic(4, "s");
  g.validate("test");
  CHECK(g.order() == 4);
  CHECK(g.mul(1, 3) == 0);
  CHECK(g.inv(1) == 3);
  CHECK(g.element_order(1) == 4);
  CHECK(g.element_order(2) == 2);
  CHECK(g.index_of("s^2") == 2);
  CHECK_THROWS_AS(g.index_of("nope"), Error);
}

TEST_CASE("broken tables are rejected") {
  FiniteGroupTable g;
  g.names = {"e", "x"};
  g.table = {{0, 1}, {1, 1}};  // x*x = x: not a Latin square
  CHECK_THROWS_AS(g.validate("test"), Error);

  FiniteGroupTable h;
  h.names = {"e", "x"};
  h.table = {{1, 0}, {0, 1}};  // 0 is not the identity
  CHECK_THROWS_AS(h.validate("test"), Error);
}
