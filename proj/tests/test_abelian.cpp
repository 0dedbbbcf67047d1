#include "doctest.h"
#include "support.hpp"

using namespace pairmix;

namespace {

std::vector<Int> iv(std::vector<long> v) {
  std::vector<Int> out;
  for (long x : v) {
    out.emplace_back(x);
  }
  return out;
}

}  // namespace

TEST_CASE("lattice membership and coset reduction in Z") {
  AbelianLattice l(1, {iv({3})});
  CHECK(l.contains(iv({6})));
  CHECK(l.contains(iv({-9})));
  CHECK(!l.contains(iv({5})));
  CHECK(l.reduce(iv({7})) == iv({1}));
  CHECK(l.reduce(iv({-1})) == iv({2}));  // representatives in [0, 3)
}

TEST_CASE("lattice solve returns generator coefficients") {
  AbelianLattice l(2, {iv({2, 0}), iv({1, 3})});
  auto c = l.solve(iv({4, 6}));
  REQUIRE(c.has_value());
  CHECK((*c)[0] * 2 + (*c)[1] * 1 == 4);
  CHECK((*c)[1] * 3 == 6);
  CHECK(!l.solve(iv({1, 1})).has_value());
}

TEST_CASE("kernel detects relations among generators") {
  // rows 2 and 3 of Z: relation 3*(2) - 2*(3) = 0
  AbelianLattice l(1, {iv({2}), iv({3})});
  REQUIRE(!l.kernel().empty());
  for (auto const& rel : l.kernel()) {
    CHECK(rel[0] * 2 + rel[1] * 3 == 0);
  }
  CHECK(l.contains(iv({1})));  // gcd(2,3) = 1
}

TEST_CASE("lattice intersection") {
  AbelianLattice a(1, {iv({4})});
  AbelianLattice b(1, {iv({6})});
  auto c = AbelianLattice::intersect(a, b);
  CHECK(c.contains(iv({12})));
  CHECK(!c.contains(iv({6})));
  CHECK(!c.contains(iv({4})));

  AbelianLattice d(2, {iv({1, 0})});
  AbelianLattice e(2, {iv({0, 1})});
  auto f = AbelianLattice::intersect(d, e);
  CHECK(f.rank() == 0);
}

TEST_CASE("torsion-aware subgroup arithmetic") {
  FGAbelianSpec spec;
  spec.free_rank = 1;
  spec.torsion = {Int(4)};
  spec.validate_and_default_names("test");
  CHECK(spec.dim() == 2);
  auto v = spec.normalized(iv({3, 7}));
  CHECK(v.coords == iv({3, 3}));
  CHECK(spec.is_zero(spec.add(v, spec.neg(v))));

  // subgroup <(2, 1)> of Z x Z/4; with the relator row (0, 4) the element
  // (2, 1) + (2, 1) = (4, 2) and also (8, 0) lies inside
  std::vector<std::vector<Int>> rows{iv({2, 1})};
  for (auto const& t : spec.torsion_rows()) {
    rows.push_back(t);
  }
  AbelianLattice l(2, rows);
  CHECK(l.contains(iv({4, 2})));
  CHECK(l.contains(iv({8, 0})));
  CHECK(!l.contains(iv({2, 0})));
}

TEST_CASE("abelian word rendering") {
  FGAbelianSpec spec;
  spec.free_rank = 1;
  spec.torsion = {Int(2)};
  spec.names = {"a", "c"};
  spec.validate_and_default_names("test");
  CHECK(spec.to_word(AbelianVec{iv({2, 1})}) == "a^2 c");
  CHECK(spec.to_word(spec.zero()) == "1");
  CHECK(spec.to_word(AbelianVec{iv({-3, 0})}) == "a^-3");
}
