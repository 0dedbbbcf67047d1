#ifndef PAIRMIX_NORMAL_FORMS_HPP_
#define PAIRMIX_NORMAL_FORMS_HPP_

#include <optional>
#include <variant>
#include <vector>

#include "pair_context.hpp"

namespace pairmix {

// ---------------------------------------------------------------------
// Amalgamated products
// ---------------------------------------------------------------------

//! One unreduced input syllable: an element of the abelian factor or an
//! index into the finite factor.
using RawAmalgamSyllable = std::variant<AbelianVec, int>;

//! Factorization through the fixed transversals: an element of the abelian
//! factor splits as rep * z with rep the lexicographically least member of
//! its Z-coset; an element of the finite factor splits analogously with the
//! least-index coset member as representative. rep = identity exactly on Z.
struct TransversalTable {
  AmalgamSpec const& spec;

  // gamma0 side
  std::pair<AbelianVec, int> factor_gamma0(AbelianVec const& g) const;
  std::optional<int> z_index_of_gamma0(AbelianVec const& g) const;

  // gamma1 side
  std::pair<int, int> factor_gamma1(int s) const;
  std::optional<int> z_index_of_gamma1(int s) const;
};

//! Unique normal form of an arbitrary alternating-or-not syllable list:
//! adjacent same-factor syllables are merged, syllables falling into Z are
//! pushed right into the tail, all chain syllables become transversal
//! representatives. Empty input yields the identity form.
AmalgamForm amalgam_normalize(AmalgamSpec const& spec,
                              std::vector<RawAmalgamSyllable> const& raw);

//! Right-multiplies a canonical form by one more factor element in place.
void amalgam_rmul(AmalgamSpec const& spec, AmalgamForm& form,
                  RawAmalgamSyllable const& factor);

// ---------------------------------------------------------------------
// HNN extensions
// ---------------------------------------------------------------------

//! One letter of an unreduced HNN word: a base element or t^{+-1}.
struct HnnLetter {
  bool is_stable;
  int sign = 0;    // +1 / -1 when is_stable
  AbelianVec base;  // when !is_stable

  static HnnLetter stable(int s) {
    return HnnLetter{true, s, {}};
  }
  static HnnLetter base_elt(AbelianVec v) {
    return HnnLetter{false, 0, std::move(v)};
  }
};

//! phi and phi^{-1} on the (validated) isomorphism H -> K.
AbelianVec hnn_phi(HnnSpec const& spec, AbelianVec const& h);
AbelianVec hnn_phi_inverse(HnnSpec const& spec, AbelianVec const& k);
bool hnn_in_h(HnnSpec const& spec, AbelianVec const& v);
bool hnn_in_k(HnnSpec const& spec, AbelianVec const& v);

//! Britton reduction followed by transversal normalization: pinches
//! t^{-1} h t -> phi(h) (h in H) and t k t^{-1} -> phi^{-1}(k) (k in K)
//! leftmost-innermost until none remains, then normalizes every base letter
//! that precedes a stable letter to its coset representative (mod H before
//! t, mod K before t^{-1}), sliding remainders rightward. The result is the
//! unique canonical form of the input word.
HnnForm britton_reduce(HnnSpec const& spec, std::vector<HnnLetter> const& raw);

// ---------------------------------------------------------------------
// Iterated domains Dom(phi^j)
// ---------------------------------------------------------------------

//! Dom(phi^1) = H and Dom(phi^j) = phi^{-1}(Dom(phi^{j-1}) cap K); the
//! chain is descending. For a Z base each domain is d_j Z with d_1 | d_2 |
//! ... and the chain is kept as exact sublattices.
struct DomChain {
  int jmax = 0;
  std::vector<AbelianLattice> doms;        // doms[j-1] = Dom(phi^j)
  std::vector<std::string> descriptions;   // human-readable per level

  bool strictly_descending() const;  // every step a proper inclusion
  bool member(int j, AbelianVec const& v) const;  // v in Dom(phi^j)
};

DomChain dom_chain(HnnSpec const& spec, int jmax);

//! Least j <= jmax with lambda not in Dom(phi^j), or nullopt (no escape
//! within the chain). Rejects lambda = identity, which never escapes.
std::optional<int> escape_index(HnnSpec const& spec, DomChain const& chain,
                                AbelianVec const& lambda);

}  // namespace pairmix

#endif  // PAIRMIX_NORMAL_FORMS_HPP_
