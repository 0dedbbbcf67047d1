#include "doctest.h"
#include "support.hpp"

using namespace pairmix;
using namespace testsup;

TEST_CASE("Britton pinches the defining relation of BS(2,3)") {
  auto ctx = bs(2, 3);
  CHECK(ctx.canonicalize("a^-1 b^3 a") == ctx.canonicalize("b^2"));
  CHECK(ctx.canonicalize("b^3 a b^-2") == ctx.canonicalize("a"));
  CHECK(ctx.canonicalize("a^-1 b a") ==
        ctx.mul(ctx.mul(ctx.inv(ctx.letter("a")), ctx.letter("b")),
                ctx.letter("a")));
}

TEST_CASE("already-reduced words only get transversal-normalized") {
  auto ctx = bs(2, 3);
  Element w = ctx.canonicalize("b a b");
  auto const& form = std::get<HnnForm>(w.payload);
  CHECK(form.length() == 1);
  // b before t must be the H-coset representative (mod 3)
  CHECK(form.head.coords[0] >= 0);
  CHECK(form.head.coords[0] < 3);
}

TEST_CASE("Britton's lemma: reduced words with stable letters are nontrivial") {
  auto ctx = bs(2, 3);
  Rng rng(3);
  std::vector<std::string> letters{"a", "b"};
  for (int i = 0; i < 300; ++i) {
    Element x = random_element(ctx, rng, letters, 10);
    auto const& form = std::get<HnnForm>(x.payload);
    if (form.length() >= 1) {
      CHECK(x != ctx.identity());
    }
  }
}

TEST_CASE("relator insertion does not change BS normal forms") {
  for (auto [m, n] : {std::pair<long, long>{2, 3}, {3, 2}, {2, 2}}) {
    auto ctx = bs(m, n);
    auto relators = relators_for_bs(m, n);
    Rng rng(17 + m * 10 + n);
    std::vector<std::string> letters{"a", "b"};
    for (int i = 0; i < 300; ++i) {
      TokenWord w = random_token_word(rng, letters, 8);
      TokenWord w2 = insert_relators(rng, w, relators, letters, 5);
      CHECK(ctx.canonicalize(to_raw(w)) == ctx.canonicalize(to_raw(w2)));
    }
  }
}

TEST_CASE("sign sequences are invariants of the element") {
  auto ctx = bs(2, 3);
  auto relators = relators_for_bs(2, 3);
  Rng rng(23);
  std::vector<std::string> letters{"a", "b"};
  for (int i = 0; i < 200; ++i) {
    TokenWord w = random_token_word(rng, letters, 8);
    TokenWord w2 = insert_relators(rng, w, relators, letters, 4);
    auto const& f1 = std::get<HnnForm>(ctx.canonicalize(to_raw(w)).payload);
    auto const& f2 = std::get<HnnForm>(ctx.canonicalize(to_raw(w2)).payload);
    REQUIRE(f1.length() == f2.length());
    for (int j = 0; j < f1.length(); ++j) {
      CHECK(f1.letters[j].first == f2.letters[j].first);
    }
  }
}

TEST_CASE("powers of the stable letter are exactly gamma0") {
  auto ctx = bs(2, 3);
  CHECK(ctx.is_in_gamma0(ctx.canonicalize("a^5")));
  CHECK(ctx.is_in_gamma0(ctx.canonicalize("b^3 a b^-2")));  // = a
  CHECK(!ctx.is_in_gamma0(ctx.canonicalize("b")));
  CHECK(!ctx.is_in_gamma0(ctx.canonicalize("b a")));
  CHECK(ctx.is_in_gamma0(ctx.identity()));
}

TEST_CASE("dom chain of BS(2,3) is 3Z, 9Z, 27Z, ...") {
  auto ctx = bs(2, 3);
  auto const& spec = ctx.spec_as<HnnSpec>();
  DomChain chain = dom_chain(spec, 6);
  Int expected(1);
  for (int j = 1; j <= 6; ++j) {
    expected *= 3;
    // brute force: h in Dom(phi^j) iff iterated phi stays defined
    for (long h = -750; h <= 750; ++h) {
      bool expected_member = h % static_cast<long>(expected) == 0;
      CHECK(chain.member(j, AbelianVec{{Int(h)}}) == expected_member);
    }
  }
  CHECK(chain.strictly_descending());
}

TEST_CASE("brute-force iterated-phi membership agrees with the chain") {
  // independent oracle: Dom(phi^j) by direct iteration of phi(3k) = 2k
  auto ctx = bs(2, 3);
  auto const& spec = ctx.spec_as<HnnSpec>();
  DomChain chain = dom_chain(spec, 5);
  for (long h = -300; h <= 300; ++h) {
    long x = h;
    for (int j = 1; j <= 5; ++j) {
      bool defined = x % 3 == 0;
      if (defined) {
        x = 2 * (x / 3);
      }
      CHECK(chain.member(j, AbelianVec{{Int(h)}}) == defined);
      if (!defined) {
        break;
      }
    }
  }
}

TEST_CASE("escape indices of BS(2,3)") {
  auto ctx = bs(2, 3);
  auto const& spec = ctx.spec_as<HnnSpec>();
  DomChain chain = dom_chain(spec, 6);
  CHECK(escape_index(spec, chain, AbelianVec{{Int(6)}}) == 2);
  CHECK(escape_index(spec, chain, AbelianVec{{Int(1)}}) == 1);
  CHECK(escape_index(spec, chain, AbelianVec{{Int(729)}}).has_value());
  CHECK_THROWS_AS(escape_index(spec, chain, AbelianVec{{Int(0)}}), Error);
}

TEST_CASE("BS(2,2) chain stabilizes at 2Z") {
  auto ctx = bs(2, 2);
  auto const& spec = ctx.spec_as<HnnSpec>();
  DomChain chain = dom_chain(spec, 5);
  for (int j = 1; j <= 5; ++j) {
    CHECK(chain.member(j, AbelianVec{{Int(2)}}));
    CHECK(!chain.member(j, AbelianVec{{Int(1)}}));
  }
  CHECK(!chain.strictly_descending());
  CHECK(!escape_index(spec, chain, AbelianVec{{Int(2)}}).has_value());
}

TEST_CASE("BS(3,2) chain strictly descends: 2Z, 4Z, 8Z, ...") {
  auto ctx = bs(3, 2);
  auto const& spec = ctx.spec_as<HnnSpec>();
  DomChain chain = dom_chain(spec, 4);
  Int expected(1);
  for (int j = 1; j <= 4; ++j) {
    expected *= 2;
    for (long h = -40; h <= 40; ++h) {
      CHECK(chain.member(j, AbelianVec{{Int(h)}}) ==
            (h % static_cast<long>(expected) == 0));
    }
  }
  CHECK(chain.strictly_descending());
}

TEST_CASE("phi as a whole-base automorphism keeps the chain constant") {
  HnnSpec spec;
  spec.base.free_rank = 1;
  spec.base.names = {"b"};
  spec.h_gens = {AbelianVec{{Int(1)}}};
  spec.k_gens = {AbelianVec{{Int(1)}}};
  spec.phi_images = {AbelianVec{{Int(-1)}}};  // inversion automorphism
  auto ctx = make_hnn(std::move(spec));
  auto const& s = ctx.spec_as<HnnSpec>();
  DomChain chain = dom_chain(s, 4);
  for (int j = 1; j <= 4; ++j) {
    CHECK(chain.member(j, AbelianVec{{Int(1)}}));
  }
}

TEST_CASE("invalid phi specs are rejected") {
  HnnSpec spec;
  spec.base.free_rank = 1;
  spec.h_gens = {AbelianVec{{Int(3)}}};
  spec.k_gens = {AbelianVec{{Int(2)}}};
  spec.phi_images = {AbelianVec{{Int(5)}}};  // 5 not in K = 2Z
  CHECK_THROWS_AS(make_hnn(std::move(spec)), Error);

  HnnSpec spec2;
  spec2.base.free_rank = 1;
  spec2.h_gens = {AbelianVec{{Int(3)}}};
  spec2.k_gens = {AbelianVec{{Int(2)}}};
  spec2.phi_images = {AbelianVec{{Int(4)}}};  // phi(H) = 4Z != 2Z
  CHECK_THROWS_AS(make_hnn(std::move(spec2)), Error);
}

TEST_CASE("hnn group axioms on random words") {
  auto ctx = bs(2, 3);
  Rng rng(5);
  std::vector<std::string> letters{"a", "b"};
  for (int i = 0; i < 150; ++i) {
    Element x = random_element(ctx, rng, letters, 6);
    Element y = random_element(ctx, rng, letters, 6);
    Element z = random_element(ctx, rng, letters, 6);
    CHECK(ctx.mul(ctx.mul(x, y), z) == ctx.mul(x, ctx.mul(y, z)));
    CHECK(ctx.mul(x, ctx.inv(x)) == ctx.identity());
  }
}
