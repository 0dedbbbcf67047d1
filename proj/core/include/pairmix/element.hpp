#ifndef PAIRMIX_ELEMENT_HPP_
#define PAIRMIX_ELEMENT_HPP_

#include <memory>
#include <utility>
#include <variant>
#include <vector>

#include "abelian.hpp"
#include "rational.hpp"

namespace pairmix {

enum class Family {
  FreeGroup,
  Amalgam,
  Hnn,
  Semidirect,
  RationalTriangular2,
  RationalTriangular3,
  FreeProduct,
};

char const* family_name(Family f);

//! Freely reduced word as generator/exponent runs: adjacent runs have
//! distinct generator indices and no run has exponent zero.
struct FreeWord {
  std::vector<std::pair<int, Int>> runs;

  bool operator==(FreeWord const& o) const = default;
};

//! Normal form in an amalgamated product G0 *_Z G1: an alternating chain of
//! nontrivial coset representatives (G0-syllables are elements of the
//! abelian factor, G1-syllables indices into the finite factor) followed by
//! a tail in Z (stored as an index into the Z element list).
struct AmalgamForm {
  struct Syllable {
    bool in_gamma1;
    AbelianVec r;  // valid when !in_gamma1
    int s = 0;     // valid when in_gamma1

    bool operator==(Syllable const& o) const = default;
  };

  std::vector<Syllable> chain;
  int tail = 0;

  bool operator==(AmalgamForm const& o) const = default;
};

//! Britton-reduced, transversal-normalized word g_0 t^{e_1} g_1 ... t^{e_n}
//! g_n in an HNN extension of an abelian base. letters[i] = (e_{i+1},
//! g_{i+1}); base letters before a stable letter are coset representatives
//! (mod H before t, mod K before t^{-1}), the final letter is arbitrary.
struct HnnForm {
  AbelianVec head;
  std::vector<std::pair<int, AbelianVec>> letters;

  int length() const {
    return static_cast<int>(letters.size());
  }

  bool operator==(HnnForm const& o) const = default;
};

//! (v, k) in Z^d x| Z with (v,k)(v',k') = (v + g^k v', k + k').
struct SemidirectPair {
  std::vector<Int> v;
  Int k;

  bool operator==(SemidirectPair const& o) const = default;
};

//! [[f, x], [0, 1]] with f in F_n, x rational.
struct Tri2Matrix {
  Rat f;
  Rat x;

  bool operator==(Tri2Matrix const& o) const = default;
};

//! [[1, x, y], [0, f1, 0], [0, 0, f2]] with f1 in F_m, f2 in F_n.
struct Tri3Matrix {
  Rat f1;
  Rat f2;
  Rat x;
  Rat y;

  bool operator==(Tri3Matrix const& o) const = default;
};

struct Element;

//! Normal form in Gamma * G for an existing pair context on Gamma and a
//! finite group G: alternating nontrivial syllables from the two factors.
struct FreeProdWord {
  struct Syllable {
    std::shared_ptr<Element const> inner;  // nonnull for Gamma-syllables
    int g = 0;                             // used when inner is null

    bool in_finite() const {
      return inner == nullptr;
    }
  };

  std::vector<Syllable> syls;
};

struct Element {
  std::variant<FreeWord, AmalgamForm, HnnForm, SemidirectPair, Tri2Matrix,
               Tri3Matrix, FreeProdWord>
      payload;

  Family family() const {
    return static_cast<Family>(payload.index());
  }
};

int cmp(Element const& a, Element const& b);

inline bool operator==(Element const& a, Element const& b) {
  return cmp(a, b) == 0;
}
inline bool operator!=(Element const& a, Element const& b) {
  return cmp(a, b) != 0;
}

//! Strict total order; used for deterministic maps and report ordering.
struct ElementLess {
  bool operator()(Element const& a, Element const& b) const {
    return cmp(a, b) < 0;
  }
};

}  // namespace pairmix

#endif  // PAIRMIX_ELEMENT_HPP_
