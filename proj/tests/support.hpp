#ifndef PAIRMIX_TESTS_SUPPORT_HPP_
#define PAIRMIX_TESTS_SUPPORT_HPP_

#include <random>
#include <string>
#include <vector>

#include "pairmix/conditions.hpp"
#include "pairmix/fourier.hpp"
#include "pairmix/normal_forms.hpp"
#include "pairmix/pair_context.hpp"

namespace testsup {

using namespace pairmix;

using Rng = std::mt19937_64;

inline PairContext f2() {
  return make_free_group(2, 0);
}

inline PairContext bs(long m, long n) {
  return make_baumslag_solitar(m, n);
}

// Z/2 * Z/3 with gamma0 = <xy> (the modular-group pair).
inline PairContext psl2z() {
  AmalgamSpec spec;
  spec.gamma0.free_rank = 0;
  spec.gamma0.torsion = {Int(2)};
  spec.gamma0.names = {"x"};
  spec.gamma1 = FiniteGroupTable::cyclic(3, "y");
  spec.z_in_gamma0 = {AbelianVec{{Int(0)}}};
  spec.z_in_gamma1 = {0};
  spec.cyclic_word = "x y";
  return make_amalgam(std::move(spec));
}

// (Z x Z/2) *_Z Z/4 with Z = {0} x Z/2 glued to the order-2 element of Z/4.
inline PairContext z4_amalgam() {
  AmalgamSpec spec;
  spec.gamma0.free_rank = 1;
  spec.gamma0.torsion = {Int(2)};
  spec.gamma0.names = {"a", "c"};
  spec.gamma1 = FiniteGroupTable::cyclic(4, "s");
  spec.z_in_gamma0 = {AbelianVec{{Int(0), Int(0)}},
                      AbelianVec{{Int(0), Int(1)}}};
  spec.z_in_gamma1 = {0, 2};
  return make_amalgam(std::move(spec));
}

// Z * Z/2 (free product): abelian factor Z, finite factor of order 2, Z
// trivial.
inline PairContext z_star_z2() {
  AmalgamSpec spec;
  spec.gamma0.free_rank = 1;
  spec.gamma0.names = {"a"};
  spec.gamma1 = FiniteGroupTable::cyclic(2, "s");
  spec.z_in_gamma0 = {AbelianVec{{Int(0)}}};
  spec.z_in_gamma1 = {0};
  return make_amalgam(std::move(spec));
}

inline PairContext fib_semidirect() {
  IntMatrix m;
  m.n = 2;
  m.a = {Int(2), Int(1), Int(1), Int(1)};
  return make_semidirect_context(2, std::move(m));
}

inline PairContext::Options tri2_options(PairContext const& bare) {
  PairContext::Options options;
  options.named_elements.emplace("d4", bare.make_tri2(Rat(4), Rat(0)));
  options.named_elements.emplace("d3", bare.make_tri2(Rat(3), Rat(0)));
  options.named_elements.emplace("u", bare.make_tri2(Rat(1), Rat(1)));
  options.gamma0_generators = {bare.make_tri2(Rat(4), Rat(0)),
                               bare.make_tri2(Rat(3), Rat(0))};
  options.gamma_generators = {bare.make_tri2(Rat(4), Rat(0)),
                              bare.make_tri2(Rat(3), Rat(0)),
                              bare.make_tri2(Rat(1), Rat(1))};
  return options;
}

inline PairContext tri2(long n = 2) {
  PairContext bare{Tri2Spec{n}};
  return make_tri2_context(n, tri2_options(bare));
}

// Gamma(2, 3) with the diagonal generators diag(1,4,1), diag(1,3,1),
// diag(1,1,8) and the two unipotents.
inline PairContext tri23() {
  PairContext bare{Tri3Spec{2, 3}};
  auto d41 = bare.make_tri3(Rat(4), Rat(1), Rat(0), Rat(0));
  auto d31 = bare.make_tri3(Rat(3), Rat(1), Rat(0), Rat(0));
  auto d18 = bare.make_tri3(Rat(1), Rat(8), Rat(0), Rat(0));
  auto uy = bare.make_tri3(Rat(1), Rat(1), Rat(0), Rat(1));
  auto ux = bare.make_tri3(Rat(1), Rat(1), Rat(1), Rat(0));
  PairContext::Options options;
  options.named_elements.emplace("d41", d41);
  options.named_elements.emplace("d31", d31);
  options.named_elements.emplace("d18", d18);
  options.named_elements.emplace("u", uy);
  options.named_elements.emplace("ux", ux);
  options.gamma0_generators = {d41, d31, d18};
  options.gamma_generators = {d41, d31, d18, uy, ux};
  return make_tri3_context(2, 3, std::move(options));
}

// ------------------------------------------------------------------
// Random words and the relator-insertion equivalence oracle
// ------------------------------------------------------------------

struct LetterToken {
  std::string name;
  long exp;
};

using TokenWord = std::vector<LetterToken>;

inline RawWord to_raw(TokenWord const& w) {
  RawWord out;
  for (auto const& t : w) {
    out.letters.emplace_back(t.name, Int(t.exp));
  }
  return out;
}

inline TokenWord random_token_word(Rng& rng,
                                   std::vector<std::string> const& letters,
                                   int length) {
  TokenWord out;
  std::uniform_int_distribution<std::size_t> pick(0, letters.size() - 1);
  std::uniform_int_distribution<int> sign(0, 1);
  for (int i = 0; i < length; ++i) {
    out.push_back(LetterToken{letters[pick(rng)], sign(rng) ? 1L : -1L});
  }
  return out;
}

//! Inserts `count` relators (words equal to the identity) at random
//! positions; the result represents the same group element.
inline TokenWord insert_relators(Rng& rng, TokenWord word,
                                 std::vector<TokenWord> const& relators,
                                 std::vector<std::string> const& letters,
                                 int count) {
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_int_distribution<std::size_t> pick_rel(0, relators.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_letter(0,
                                                         letters.size() - 1);
  for (int i = 0; i < count; ++i) {
    TokenWord chunk;
    switch (relators.empty() ? 0 : kind(rng)) {
      case 0: {  // g g^{-1}
        std::string const& name = letters[pick_letter(rng)];
        chunk = {LetterToken{name, 1}, LetterToken{name, -1}};
        break;
      }
      case 1: {
        chunk = relators[pick_rel(rng)];
        break;
      }
      default: {  // inverse of a relator
        TokenWord const& r = relators[pick_rel(rng)];
        for (auto it = r.rbegin(); it != r.rend(); ++it) {
          chunk.push_back(LetterToken{it->name, -it->exp});
        }
        break;
      }
    }
    std::uniform_int_distribution<std::size_t> pos(0, word.size());
    word.insert(word.begin() + static_cast<long>(pos(rng)), chunk.begin(),
                chunk.end());
  }
  return word;
}

inline std::vector<TokenWord> relators_for_bs(long m, long n) {
  // a b^n a^{-1} b^{-m} = 1  (from a^{-1} b^n a = b^m ... written with the
  // stable letter on the left)
  return {TokenWord{LetterToken{"a", -1}, LetterToken{"b", n},
                    LetterToken{"a", 1}, LetterToken{"b", -m}}};
}

inline std::vector<TokenWord> relators_for_psl2z() {
  return {TokenWord{LetterToken{"x", 1}, LetterToken{"x", 1}},
          TokenWord{LetterToken{"y", 1}, LetterToken{"y", 1},
                    LetterToken{"y", 1}}};
}

inline std::vector<TokenWord> relators_for_z4_amalgam() {
  return {
      TokenWord{LetterToken{"c", 1}, LetterToken{"c", 1}},
      TokenWord{LetterToken{"s", 1}, LetterToken{"s", 1}, LetterToken{"s", 1},
                LetterToken{"s", 1}},
      // the identification c = s^2
      TokenWord{LetterToken{"c", 1}, LetterToken{"s", -1},
                LetterToken{"s", -1}},
      // commutativity of the abelian factor
      TokenWord{LetterToken{"a", 1}, LetterToken{"c", 1}, LetterToken{"a", -1},
                LetterToken{"c", -1}},
  };
}

//! Random element of the whole group as a canonical form.
inline Element random_element(PairContext const& ctx, Rng& rng,
                              std::vector<std::string> const& letters,
                              int length) {
  return ctx.canonicalize(to_raw(random_token_word(rng, letters, length)));
}

}  // namespace testsup

#endif  // PAIRMIX_TESTS_SUPPORT_HPP_
