#include "doctest.h"
#include "support.hpp"

using namespace pairmix;
using namespace testsup;

TEST_CASE("semidirect multiplication follows the twisted law") {
  auto ctx = fib_semidirect();
  Element a = ctx.make_semidirect({Int(1), Int(0)}, Int(0));
  Element t = ctx.make_semidirect({Int(0), Int(0)}, Int(1));
  auto const& p1 = std::get<SemidirectPair>(ctx.mul(a, t).payload);
  CHECK(p1.v == std::vector<Int>{Int(1), Int(0)});
  CHECK(p1.k == 1);
  auto const& p2 = std::get<SemidirectPair>(ctx.mul(t, a).payload);
  CHECK(p2.v == std::vector<Int>{Int(2), Int(1)});
  CHECK(p2.k == 1);
}

TEST_CASE("semidirect inverses solve the twisted equation") {
  auto ctx = fib_semidirect();
  Rng rng(53);
  std::vector<std::string> letters{"e1", "e2", "t"};
  for (int i = 0; i < 100; ++i) {
    Element x = random_element(ctx, rng, letters, 6);
    CHECK(ctx.mul(x, ctx.inv(x)) == ctx.identity());
    CHECK(ctx.mul(ctx.inv(x), x) == ctx.identity());
  }
}

TEST_CASE("semidirect words canonicalize through the letters") {
  auto ctx = fib_semidirect();
  CHECK(ctx.canonicalize("e1 t") ==
        ctx.make_semidirect({Int(1), Int(0)}, Int(1)));
  CHECK(ctx.to_word_string(ctx.canonicalize("t e1")) == "e1^2 e2 t");
}

TEST_CASE("determinant validation for the semidirect action") {
  IntMatrix bad;
  bad.n = 2;
  bad.a = {Int(2), Int(0), Int(0), Int(2)};  // det 4
  CHECK_THROWS_AS(make_semidirect_context(2, std::move(bad)), Error);
}

TEST_CASE("triangular2 arithmetic and membership") {
  auto ctx = tri2(2);
  Element g = ctx.make_tri2(Rat(4), Rat(1, 2));
  Element h = ctx.make_tri2(Rat(3), Rat(-1));
  auto const& m = std::get<Tri2Matrix>(ctx.mul(g, h).payload);
  CHECK(m.f == Rat(12));
  CHECK(m.x == Rat(4) * Rat(-1) + Rat(1, 2));
  CHECK(ctx.mul(g, ctx.inv(g)) == ctx.identity());
  CHECK(ctx.is_in_gamma0(ctx.make_tri2(Rat(4), Rat(0))));
  CHECK(!ctx.is_in_gamma0(g));
  CHECK_THROWS_AS(ctx.make_tri2(Rat(2), Rat(0)), Error);  // v2 = 1, odd
}

TEST_CASE("triangular3 entry constraints") {
  auto ctx = tri23();
  CHECK_NOTHROW(ctx.make_tri3(Rat(5, 3), Rat(1), Rat(0), Rat(0)));
  CHECK_THROWS_AS(ctx.make_tri3(Rat(10, 3), Rat(1), Rat(0), Rat(0)), Error);
  CHECK_THROWS_AS(ctx.make_tri3(Rat(4), Rat(2), Rat(0), Rat(0)), Error);
  CHECK_NOTHROW(ctx.make_tri3(Rat(4), Rat(8), Rat(1, 7), Rat(-2)));
}

TEST_CASE("diagonal inverse in Gamma(2,3)") {
  auto ctx = tri23();
  Element d = ctx.make_tri3(Rat(4), Rat(8), Rat(0), Rat(0));
  auto const& m = std::get<Tri3Matrix>(ctx.inv(d).payload);
  CHECK(m.f1 == Rat(1, 4));
  CHECK(m.f2 == Rat(1, 8));
  CHECK(m.x == 0);
  CHECK(m.y == 0);
}

TEST_CASE("the y-unipotent centralizes the diag(1,f,1) family") {
  auto ctx = tri23();
  Element u = ctx.letter("u");
  for (long p : {1L, 3L, 4L, 16L}) {
    Element d = ctx.make_tri3(Rat(p), Rat(1), Rat(0), Rat(0));
    CHECK(ctx.mul(ctx.mul(u, d), ctx.inv(u)) == d);
  }
  // but conjugation moves the diag(1,1,f) family out of the diagonal
  Element d2 = ctx.make_tri3(Rat(1), Rat(8), Rat(0), Rat(0));
  CHECK(!ctx.is_in_gamma0(ctx.mul(ctx.mul(u, d2), ctx.inv(u))));
}

TEST_CASE("triangular3 group axioms") {
  auto ctx = tri23();
  Rng rng(59);
  std::vector<std::string> letters{"d41", "d31", "d18", "u", "ux"};
  for (int i = 0; i < 150; ++i) {
    Element x = random_element(ctx, rng, letters, 6);
    Element y = random_element(ctx, rng, letters, 6);
    Element z = random_element(ctx, rng, letters, 6);
    CHECK(ctx.mul(ctx.mul(x, y), z) == ctx.mul(x, ctx.mul(y, z)));
    CHECK(ctx.mul(x, ctx.inv(x)) == ctx.identity());
  }
}

TEST_CASE("integer matrix helpers") {
  IntMatrix m;
  m.n = 2;
  m.a = {Int(2), Int(1), Int(1), Int(1)};
  CHECK(m.det() == 1);
  IntMatrix inv = m.inverse_unimodular();
  CHECK(m.mul(inv) == IntMatrix::identity(2));
  CHECK(m.power(Int(3)).apply({Int(1), Int(0)}) ==
        std::vector<Int>{Int(13), Int(8)});
  CHECK(m.power(Int(-2)) == inv.mul(inv));
  IntMatrix r;
  r.n = 2;
  r.a = {Int(0), Int(-1), Int(1), Int(0)};
  CHECK(r.det() == 1);
  CHECK(r.power(Int(4)) == IntMatrix::identity(2));
}
