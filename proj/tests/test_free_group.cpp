#include "doctest.h"
#include "support.hpp"

using namespace pairmix;
using namespace testsup;

TEST_CASE("free reduction") {
  auto ctx = f2();
  CHECK(ctx.canonicalize("a b b^-1") == ctx.canonicalize("a"));
  CHECK(ctx.canonicalize("a a^-1") == ctx.identity());
  CHECK(ctx.to_word_string(ctx.canonicalize("a a b^-2")) == "a^2 b^-2");
  CHECK_THROWS_AS(ctx.canonicalize("q"), Error);
}

TEST_CASE("free inverse reverses and negates") {
  auto ctx = f2();
  auto w = ctx.canonicalize("a b");
  CHECK(ctx.to_word_string(ctx.inv(w)) == "b^-1 a^-1");
  CHECK(ctx.mul(w, ctx.inv(w)) == ctx.identity());
}

TEST_CASE("group axioms on random words") {
  auto ctx = f2();
  Rng rng(7);
  std::vector<std::string> letters{"a", "b"};
  for (int i = 0; i < 200; ++i) {
    Element x = random_element(ctx, rng, letters, 8);
    Element y = random_element(ctx, rng, letters, 8);
    Element z = random_element(ctx, rng, letters, 8);
    CHECK(ctx.mul(ctx.mul(x, y), z) == ctx.mul(x, ctx.mul(y, z)));
    CHECK(ctx.mul(x, ctx.identity()) == x);
    CHECK(ctx.mul(x, ctx.inv(x)) == ctx.identity());
    CHECK(ctx.inv(ctx.inv(x)) == x);
  }
}

TEST_CASE("free-group normal forms absorb inserted trivial pairs") {
  auto ctx = f2();
  Rng rng(11);
  std::vector<std::string> letters{"a", "b"};
  for (int i = 0; i < 500; ++i) {
    TokenWord w = random_token_word(rng, letters, 10);
    TokenWord w2 = insert_relators(rng, w, {}, letters, 6);
    CHECK(ctx.canonicalize(to_raw(w)) == ctx.canonicalize(to_raw(w2)));
  }
}

TEST_CASE("gamma0 membership in the free pair") {
  auto ctx = f2();
  CHECK(ctx.is_in_gamma0(ctx.canonicalize("a^3")));
  CHECK(ctx.is_in_gamma0(ctx.identity()));
  CHECK(!ctx.is_in_gamma0(ctx.canonicalize("b")));
  CHECK(!ctx.is_in_gamma0(ctx.canonicalize("a b a^-1")));
}

TEST_CASE("membership is closed under products and inverses") {
  auto ctx = f2();
  Ball ball = ctx.enumerate_ball(BallSide::Gamma0Only, 6);
  for (auto const& x : ball.members) {
    CHECK(ctx.is_in_gamma0(ctx.inv(x)));
    for (auto const& y : ball.members) {
      CHECK(ctx.is_in_gamma0(ctx.mul(x, y)));
      CHECK(ctx.mul(x, y) == ctx.mul(y, x));  // gamma0 is abelian
    }
  }
}
