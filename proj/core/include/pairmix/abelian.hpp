#ifndef PAIRMIX_ABELIAN_HPP_
#define PAIRMIX_ABELIAN_HPP_

#include <optional>
#include <string>
#include <vector>

#include "rational.hpp"

namespace pairmix {

//! Element of a finitely generated abelian group Z^r x Z/d_1 x ... x Z/d_s,
//! written additively. Coordinates: r free entries followed by s torsion
//! entries, the latter always normalized into [0, d_i).
struct AbelianVec {
  std::vector<Int> coords;

  bool operator==(AbelianVec const& o) const = default;
};

int cmp(AbelianVec const& a, AbelianVec const& b);

//! Concrete model of "infinite abelian group": free rank r plus finite
//! cyclic factors. Infinite iff r >= 1.
struct FGAbelianSpec {
  int free_rank = 0;
  std::vector<Int> torsion;        // orders of the finite cyclic factors, each >= 2
  std::vector<std::string> names;  // one per coordinate; defaulted if empty

  int dim() const {
    return free_rank + static_cast<int>(torsion.size());
  }

  bool is_infinite() const {
    return free_rank >= 1;
  }

  void validate_and_default_names(std::string const& what);

  AbelianVec zero() const;
  AbelianVec normalized(std::vector<Int> coords) const;
  AbelianVec add(AbelianVec const& a, AbelianVec const& b) const;
  AbelianVec neg(AbelianVec const& a) const;
  AbelianVec basis_element(int i) const;
  bool is_zero(AbelianVec const& a) const;

  //! Relator rows d_i * e_{r+i}, the lattice of vectors that represent the
  //! identity. Every subgroup lattice over this spec includes them.
  std::vector<std::vector<Int>> torsion_rows() const;

  //! Renders an element as a word over the coordinate names, e.g. "a^2 c".
  std::string to_word(AbelianVec const& a) const;
};

//! Integer lattice L in Z^n, stored as generator rows. Hermite normal form
//! is computed once, together with a full unimodular row transform, which
//! yields membership tests, canonical coset representatives, exact
//! coordinate solves and the relation (kernel) lattice of the generators.
class AbelianLattice {
 public:
  AbelianLattice() : _dim(0) {}
  AbelianLattice(int dim, std::vector<std::vector<Int>> generator_rows);

  int dim() const {
    return _dim;
  }
  int rank() const {
    return static_cast<int>(_hnf.size());
  }

  std::vector<std::vector<Int>> const& hnf_rows() const {
    return _hnf;
  }

  bool contains(std::vector<Int> const& v) const;

  //! Canonical representative of the coset v + L: reduce v at each pivot
  //! column into [0, pivot). Unique per coset, identity coset maps to 0.
  std::vector<Int> reduce(std::vector<Int> const& v) const;

  //! Coefficients c (over the generator rows as passed in) with c.G = v,
  //! or nullopt when v is not in the lattice.
  std::optional<std::vector<Int>> solve(std::vector<Int> const& v) const;

  //! Basis of the relation lattice {c : c.G = 0} of the generator rows.
  std::vector<std::vector<Int>> const& kernel() const {
    return _kernel;
  }

  bool contains_lattice(AbelianLattice const& other) const;
  bool equals_lattice(AbelianLattice const& other) const;

  static AbelianLattice intersect(AbelianLattice const& a,
                                  AbelianLattice const& b);

 private:
  int _dim;
  std::vector<std::vector<Int>> _gens;    // as passed in
  std::vector<std::vector<Int>> _hnf;     // echelon rows, pivots positive
  std::vector<int> _pivot_col;            // per hnf row
  std::vector<std::vector<Int>> _top;     // transform: _hnf[i] = _top[i] . gens
  std::vector<std::vector<Int>> _kernel;  // relations among generator rows
};

Int floor_div(Int const& a, Int const& b);

}  // namespace pairmix

#endif  // PAIRMIX_ABELIAN_HPP_
