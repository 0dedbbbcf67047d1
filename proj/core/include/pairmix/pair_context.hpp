#ifndef PAIRMIX_PAIR_CONTEXT_HPP_
#define PAIRMIX_PAIR_CONTEXT_HPP_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "element.hpp"
#include "finite_group.hpp"

namespace pairmix {

//! Square integer matrix, row-major. Used for the semidirect action.
struct IntMatrix {
  int n = 0;
  std::vector<Int> a;

  static IntMatrix identity(int n);

  Int const& at(int i, int j) const {
    return a[static_cast<std::size_t>(i) * n + j];
  }
  Int& at(int i, int j) {
    return a[static_cast<std::size_t>(i) * n + j];
  }

  IntMatrix mul(IntMatrix const& o) const;
  std::vector<Int> apply(std::vector<Int> const& v) const;
  Int det() const;
  IntMatrix inverse_unimodular() const;  // requires det = +-1
  IntMatrix power(Int k) const;          // any sign (uses the inverse)

  bool operator==(IntMatrix const& o) const = default;
};

struct FreeGroupSpec {
  int rank = 0;
  int gamma0_index = 0;
  std::vector<std::string> names;
};

//! Amalgamated product A *_Z G1 where A is finitely generated abelian, G1 is
//! finite and Z is a common finite subgroup listed element by element. The
//! distinguished subgroup is A itself unless `cyclic_word` is set, in which
//! case it is the infinite cyclic subgroup generated by that element.
struct AmalgamSpec {
  FGAbelianSpec gamma0;
  FiniteGroupTable gamma1;
  std::vector<AbelianVec> z_in_gamma0;  // index 0 = identity
  std::vector<int> z_in_gamma1;         // aligned embedding into gamma1
  std::optional<std::string> cyclic_word;

  // derived at validation time
  std::vector<std::vector<int>> z_mul;
  std::vector<int> z_inv;
  std::vector<int> g1_rep;     // per gamma1 element: representative of its coset sZ
  std::vector<int> g1_rem;     // s = g1_rep[s] * z_in_gamma1[g1_rem[s]]
};

//! HNN(base, H, K, phi) over an abelian base, with the relation
//! t^{-1} h t = phi(h). The distinguished subgroup is <t>.
struct HnnSpec {
  FGAbelianSpec base;
  std::string stable_name = "t";
  std::vector<AbelianVec> h_gens;
  std::vector<AbelianVec> k_gens;
  std::vector<AbelianVec> phi_images;  // aligned with h_gens

  // derived at validation time: lifted lattices (torsion rows included)
  AbelianLattice h_lat;
  AbelianLattice k_lat;
  AbelianLattice h_solver;    // rows = h_gens then torsion rows
  AbelianLattice phi_solver;  // rows = phi_images then torsion rows
};

struct SemidirectSpec {
  int dim = 0;
  IntMatrix matrix;
  std::vector<std::string> names;  // dim vector names then the Z-generator name

  IntMatrix inverse;  // derived
};

//! Gamma(n): [[f, x], [0, 1]] with f in F_n. n = nullopt means F_infinity.
struct Tri2Spec {
  std::optional<long> n;
};

//! Gamma(m, n): diag-and-top-row 3x3 matrices with f1 in F_m, f2 in F_n.
struct Tri3Spec {
  long m = 1;
  long n = 1;
};

class PairContext;

//! Free product (inner pair) * G with G finite; the distinguished subgroup
//! is the inner pair's, embedded.
struct FreeProductSpec {
  std::shared_ptr<PairContext const> inner;
  FiniteGroupTable finite;
};

enum class BallSide { WholeGroup, Gamma0Only, ComplementOfGamma0 };

char const* ball_side_name(BallSide side);

//! Radius-bounded enumeration of a group (or of the distinguished subgroup,
//! or of its complement). Members are listed breadth-first by word length
//! over the declared enumeration generators, ties broken by generator list
//! order (g then g^{-1}); the radius-R list is a prefix of the radius-(R+1)
//! list.
struct Ball {
  BallSide side = BallSide::WholeGroup;
  int radius = 0;
  std::vector<Element> members;
  std::vector<int> member_level;  // word length (or box shell) per member

  //! Number of distinct word lengths among the members with index in
  //! [0, upto); upto = members.size() counts them all.
  int distinct_levels() const;
};

//! Word over named letters, e.g. parse_word("a b^-2") = {a^1, b^-2}.
struct RawWord {
  std::vector<std::pair<std::string, Int>> letters;
};

RawWord parse_word(std::string const& text);

//! A concrete group family together with its distinguished infinite abelian
//! subgroup: exact canonical-form arithmetic, membership, and ball
//! enumeration. Immutable after construction; all operations are pure and
//! safe to call concurrently.
class PairContext {
 public:
  using Spec = std::variant<FreeGroupSpec, AmalgamSpec, HnnSpec,
                            SemidirectSpec, Tri2Spec, Tri3Spec,
                            FreeProductSpec>;

  struct Options {
    std::map<std::string, Element> named_elements;
    std::vector<Element> gamma0_generators;  // defaults applied when empty
    std::vector<Element> gamma_generators;
    std::size_t ball_cap = 2'000'000;
    int refute_threshold = 8;
  };

  explicit PairContext(Spec spec);
  PairContext(Spec spec, Options options);

  Family family() const {
    return static_cast<Family>(_spec.index());
  }

  Spec const& spec() const {
    return _spec;
  }

  template <typename S>
  S const& spec_as() const {
    return std::get<S>(_spec);
  }

  Element identity() const;
  bool is_identity(Element const& x) const;

  //! Canonical product; both arguments must come from this context.
  Element mul(Element const& x, Element const& y) const;
  Element inv(Element const& x) const;
  Element pow(Element const& x, Int k) const;

  //! Membership in the distinguished subgroup Gamma_0.
  bool is_in_gamma0(Element const& x) const;

  //! Resolves a named letter (family generator or configured named element).
  Element letter(std::string const& name) const;
  bool has_letter(std::string const& name) const;

  //! Canonical element of a word over letters; idempotent.
  Element canonicalize(RawWord const& raw) const;
  Element canonicalize(std::string const& word) const;

  // Raw payload entry points for the matrix/pair families; these validate
  // the family's entry constraints (NotInGroup on violation).
  Element make_semidirect(std::vector<Int> v, Int k) const;
  Element make_tri2(Rat f, Rat x) const;
  Element make_tri3(Rat f1, Rat f2, Rat x, Rat y) const;

  std::vector<Element> const& gamma0_generators() const {
    return _gamma0_gens;
  }
  std::vector<Element> const& gamma_generators() const {
    return _gamma_gens;
  }
  std::map<std::string, Element> const& named_elements() const {
    return _named;
  }

  std::size_t ball_cap() const {
    return _ball_cap;
  }
  int refute_threshold() const {
    return _refute_threshold;
  }

  Ball enumerate_ball(BallSide side, int radius) const;

  //! Semidirect only: the box {(v, k) : |v|_inf <= v_bound, |k| <= k_bound},
  //! ordered by max-norm shells, then (k, v) lexicographically within a
  //! shell.
  Ball enumerate_box(Int const& v_bound, Int const& k_bound,
                     BallSide side) const;

  std::string to_word_string(Element const& x) const;

  //! Requires same family tag; elements carry no owner pointer, so this is
  //! the strongest cheap misuse check available.
  void check_family(Element const& x, char const* where) const;

 private:
  Spec _spec;
  std::map<std::string, Element> _named;
  std::map<std::string, Element> _letters;
  std::vector<Element> _gamma0_gens;
  std::vector<Element> _gamma_gens;
  std::size_t _ball_cap;
  int _refute_threshold;
  std::optional<Element> _cyclic_w;  // amalgam: gamma0 = <w> when set

 public:
  std::optional<Element> const& cyclic_gamma0_word() const {
    return _cyclic_w;
  }

 private:

  void build_letters();
  void apply_generator_defaults();
  void validate_generators() const;
};

// Factories with family-specific validation; these are what the config
// loader and the tests use.
PairContext make_free_group(int rank, int gamma0_index,
                            std::vector<std::string> names = {},
                            PairContext::Options options = {});
PairContext make_amalgam(AmalgamSpec spec, PairContext::Options options = {});
PairContext make_hnn(HnnSpec spec, PairContext::Options options = {});
PairContext make_baumslag_solitar(long m, long n,
                                  std::string base_name = "b",
                                  std::string stable_name = "a",
                                  PairContext::Options options = {});
PairContext make_semidirect_context(int dim, IntMatrix matrix,
                                    std::vector<std::string> names = {},
                                    PairContext::Options options = {});
PairContext make_tri2_context(std::optional<long> n,
                              PairContext::Options options = {});
PairContext make_tri3_context(long m, long n,
                              PairContext::Options options = {});
PairContext make_free_product(std::shared_ptr<PairContext const> inner,
                              FiniteGroupTable finite,
                              PairContext::Options options = {});

//! Lifts an element of the inner pair into the free product context.
Element lift_to_free_product(PairContext const& product, Element const& x);

//! F_n membership: the 2-adic valuation of f is a multiple of n (zero for
//! n = infinity). f must be nonzero.
bool in_fn(Rat const& f, std::optional<long> n);

}  // namespace pairmix

#endif  // PAIRMIX_PAIR_CONTEXT_HPP_
