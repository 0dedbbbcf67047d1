#include "doctest.h"
#include "support.hpp"

using namespace pairmix;
using namespace testsup;

TEST_CASE("gamma0 ball of the free pair") {
  auto ctx = f2();
  Ball ball = ctx.enumerate_ball(BallSide::Gamma0Only, 2);
  REQUIRE(ball.members.size() == 5);
  std::vector<std::string> words;
  for (auto const& x : ball.members) {
    words.push_back(ctx.to_word_string(x));
  }
  CHECK(words == std::vector<std::string>{"1", "a", "a^-1", "a^2", "a^-2"});
}

TEST_CASE("whole-group ball of BS(2,3) at radius 1") {
  auto ctx = bs(2, 3);
  Ball ball = ctx.enumerate_ball(BallSide::WholeGroup, 1);
  std::vector<std::string> words;
  for (auto const& x : ball.members) {
    words.push_back(ctx.to_word_string(x));
  }
  CHECK(words ==
        std::vector<std::string>{"1", "a", "a^-1", "b", "b^-1"});
}

TEST_CASE("semidirect gamma0 ball is the powers of t") {
  auto ctx = fib_semidirect();
  Ball ball = ctx.enumerate_ball(BallSide::Gamma0Only, 3);
  CHECK(ball.members.size() == 7);
  for (auto const& x : ball.members) {
    CHECK(ctx.is_in_gamma0(x));
  }
}

TEST_CASE("ball members of radius R are a prefix of radius R+1") {
  for (auto const& ctx : {f2(), bs(2, 3), psl2z(), z4_amalgam()}) {
    Ball small = ctx.enumerate_ball(BallSide::WholeGroup, 3);
    Ball large = ctx.enumerate_ball(BallSide::WholeGroup, 4);
    REQUIRE(small.members.size() <= large.members.size());
    for (std::size_t i = 0; i < small.members.size(); ++i) {
      CHECK(small.members[i] == large.members[i]);
    }
  }
}

TEST_CASE("complement ball excludes gamma0 but keeps it in the frontier") {
  auto ctx = f2();
  Ball ball = ctx.enumerate_ball(BallSide::ComplementOfGamma0, 2);
  for (auto const& x : ball.members) {
    CHECK(!ctx.is_in_gamma0(x));
  }
  // a b has length 2 and is only reachable through a
  bool found = false;
  for (auto const& x : ball.members) {
    if (x == ctx.canonicalize("a b")) {
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("ball cap raises BallTooLarge") {
  PairContext::Options options;
  options.ball_cap = 10;
  auto ctx = make_free_group(2, 0, {}, std::move(options));
  CHECK_THROWS_AS(ctx.enumerate_ball(BallSide::WholeGroup, 3), Error);
}

TEST_CASE("box enumeration for the semidirect family") {
  auto ctx = fib_semidirect();
  Ball box = ctx.enumerate_box(Int(1), Int(2), BallSide::WholeGroup);
  CHECK(box.members.size() == 9 * 5);
  Ball gamma0_box = ctx.enumerate_box(Int(1), Int(2), BallSide::Gamma0Only);
  CHECK(gamma0_box.members.size() == 5);
  CHECK_THROWS_AS(f2().enumerate_box(Int(1), Int(1), BallSide::WholeGroup),
                  Error);
}

TEST_CASE("triangular families require configured generators") {
  PairContext bare{Tri2Spec{2L}};
  CHECK_THROWS_AS(bare.enumerate_ball(BallSide::Gamma0Only, 2), Error);
}
