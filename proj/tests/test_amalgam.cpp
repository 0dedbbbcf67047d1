#include "doctest.h"
#include "support.hpp"

using namespace pairmix;
using namespace testsup;

TEST_CASE("free product of Z/2 and Z/3: torsion collapses") {
  auto ctx = psl2z();
  CHECK(ctx.canonicalize("x x") == ctx.identity());
  CHECK(ctx.canonicalize("y y y") == ctx.identity());
  CHECK(ctx.canonicalize("x y x y") ==
        ctx.pow(ctx.canonicalize("x y"), Int(2)));
  CHECK(ctx.canonicalize("y^-1") == ctx.canonicalize("y y"));
}

TEST_CASE("order-2 syllable squares to the identity in Z * Z/2") {
  auto ctx = z_star_z2();
  CHECK(ctx.canonicalize("s s") == ctx.identity());
  Element w = ctx.canonicalize("s a s");
  auto const& form = std::get<AmalgamForm>(w.payload);
  CHECK(form.chain.size() == 3);
}

TEST_CASE("gamma0 = <xy> membership in the modular pair") {
  auto ctx = psl2z();
  Element w = ctx.canonicalize("x y");
  CHECK(ctx.is_in_gamma0(w));
  CHECK(ctx.is_in_gamma0(ctx.pow(w, Int(5))));
  CHECK(ctx.is_in_gamma0(ctx.pow(w, Int(-3))));
  CHECK(ctx.is_in_gamma0(ctx.identity()));
  CHECK(!ctx.is_in_gamma0(ctx.canonicalize("x")));
  CHECK(!ctx.is_in_gamma0(ctx.canonicalize("y")));
  CHECK(!ctx.is_in_gamma0(ctx.canonicalize("y x")));  // conjugate, not member
}

TEST_CASE("the ZxZ/2 *_Z Z/4 amalgam identifies c with s^2") {
  auto ctx = z4_amalgam();
  CHECK(ctx.canonicalize("c") == ctx.canonicalize("s s"));
  CHECK(ctx.canonicalize("c s^-2") == ctx.identity());
  CHECK(ctx.is_in_gamma0(ctx.canonicalize("s^2")));  // = c, in the factor
  CHECK(!ctx.is_in_gamma0(ctx.canonicalize("s")));
  CHECK(ctx.is_in_gamma0(ctx.canonicalize("a^3 c")));
}

TEST_CASE("normal forms are stable under relator insertion") {
  SUBCASE("modular group") {
    auto ctx = psl2z();
    Rng rng(31);
    std::vector<std::string> letters{"x", "y"};
    auto relators = relators_for_psl2z();
    for (int i = 0; i < 400; ++i) {
      TokenWord w = random_token_word(rng, letters, 10);
      TokenWord w2 = insert_relators(rng, w, relators, letters, 6);
      CHECK(ctx.canonicalize(to_raw(w)) == ctx.canonicalize(to_raw(w2)));
    }
  }
  SUBCASE("Z/4 amalgam") {
    auto ctx = z4_amalgam();
    Rng rng(37);
    std::vector<std::string> letters{"a", "c", "s"};
    auto relators = relators_for_z4_amalgam();
    for (int i = 0; i < 400; ++i) {
      TokenWord w = random_token_word(rng, letters, 10);
      TokenWord w2 = insert_relators(rng, w, relators, letters, 6);
      CHECK(ctx.canonicalize(to_raw(w)) == ctx.canonicalize(to_raw(w2)));
    }
  }
}

TEST_CASE("canonicalization is idempotent") {
  auto ctx = z4_amalgam();
  Rng rng(41);
  std::vector<std::string> letters{"a", "c", "s"};
  for (int i = 0; i < 200; ++i) {
    Element x = random_element(ctx, rng, letters, 8);
    // re-feeding the normal form through mul with the identity must not
    // change it
    CHECK(ctx.mul(x, ctx.identity()) == x);
    CHECK(ctx.mul(ctx.identity(), x) == x);
  }
}

TEST_CASE("amalgam forms satisfy the chain invariants") {
  auto ctx = z4_amalgam();
  auto const& s = ctx.spec_as<AmalgamSpec>();
  Rng rng(43);
  std::vector<std::string> letters{"a", "c", "s"};
  for (int i = 0; i < 200; ++i) {
    Element x = random_element(ctx, rng, letters, 8);
    auto const& form = std::get<AmalgamForm>(x.payload);
    for (std::size_t j = 0; j < form.chain.size(); ++j) {
      auto const& syl = form.chain[j];
      if (j > 0) {
        CHECK(form.chain[j - 1].in_gamma1 != syl.in_gamma1);
      }
      if (syl.in_gamma1) {
        // a representative of a nontrivial coset: not in the image of Z
        CHECK(s.g1_rep[syl.s] == syl.s);
        CHECK(syl.s != 0);
        bool in_z = false;
        for (int zi : s.z_in_gamma1) {
          if (zi == syl.s) {
            in_z = true;
          }
        }
        CHECK(!in_z);
      } else {
        TransversalTable table{s};
        CHECK(table.factor_gamma0(syl.r).first == syl.r);
        CHECK(!s.gamma0.is_zero(syl.r));
      }
    }
  }
}

TEST_CASE("amalgam group axioms on random words") {
  auto ctx = z4_amalgam();
  Rng rng(47);
  std::vector<std::string> letters{"a", "c", "s"};
  for (int i = 0; i < 150; ++i) {
    Element x = random_element(ctx, rng, letters, 7);
    Element y = random_element(ctx, rng, letters, 7);
    Element z = random_element(ctx, rng, letters, 7);
    CHECK(ctx.mul(ctx.mul(x, y), z) == ctx.mul(x, ctx.mul(y, z)));
    CHECK(ctx.mul(x, ctx.inv(x)) == ctx.identity());
    CHECK(ctx.inv(ctx.inv(x)) == x);
  }
}

TEST_CASE("degenerate amalgams are rejected") {
  // finite factor equal to Z collapses the amalgam onto gamma0
  AmalgamSpec spec;
  spec.gamma0.free_rank = 1;
  spec.gamma0.torsion = {Int(2)};
  spec.gamma1 = FiniteGroupTable::cyclic(2, "s");
  spec.z_in_gamma0 = {AbelianVec{{Int(0), Int(0)}},
                      AbelianVec{{Int(0), Int(1)}}};
  spec.z_in_gamma1 = {0, 1};
  CHECK_THROWS_AS(make_amalgam(std::move(spec)), Error);

  // finite gamma0 without a cyclic word is not an infinite pair
  AmalgamSpec spec2;
  spec2.gamma0.free_rank = 0;
  spec2.gamma0.torsion = {Int(2)};
  spec2.gamma1 = FiniteGroupTable::cyclic(3, "y");
  spec2.z_in_gamma0 = {AbelianVec{{Int(0)}}};
  spec2.z_in_gamma1 = {0};
  CHECK_THROWS_AS(make_amalgam(std::move(spec2)), Error);

  // embedding that is not a homomorphism
  AmalgamSpec spec3;
  spec3.gamma0.free_rank = 1;
  spec3.gamma0.torsion = {Int(4)};
  spec3.gamma1 = FiniteGroupTable::cyclic(8, "s");
  spec3.z_in_gamma0 = {AbelianVec{{Int(0), Int(0)}},
                       AbelianVec{{Int(0), Int(1)}},
                       AbelianVec{{Int(0), Int(2)}},
                       AbelianVec{{Int(0), Int(3)}}};
  spec3.z_in_gamma1 = {0, 2, 4, 7};  // 2+2 should be 4, maps to 7: broken
  CHECK_THROWS_AS(make_amalgam(std::move(spec3)), Error);
}
