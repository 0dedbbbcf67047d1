#ifndef PAIRMIX_FOURIER_HPP_
#define PAIRMIX_FOURIER_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pair_context.hpp"

namespace pairmix {

//! Finitely supported element of the group algebra, x = sum x(g) lambda(g)
//! with exact Gaussian-rational coefficients. Stored coefficients are never
//! zero and keys are canonical elements, so equality of operators is
//! equality of maps and ||x||_2^2 = sum |x(g)|^2 exactly.
struct GroupOperator {
  std::map<Element, ComplexRational, ElementLess> support;

  void add_term(Element const& g, ComplexRational const& c);
  bool is_zero() const {
    return support.empty();
  }
  Rat norm_sq() const;

  bool operator==(GroupOperator const& o) const {
    return support == o.support;
  }
};

//! lambda(g): the unitary attached to a group element.
GroupOperator lambda_op(Element const& g);

GroupOperator op_add(GroupOperator const& a, GroupOperator const& b);
GroupOperator op_sub(GroupOperator const& a, GroupOperator const& b);
GroupOperator op_scale(ComplexRational const& c, GroupOperator const& a);

//! (x * y)(g) = sum over g1 g2 = g of x(g1) y(g2), exact over the finite
//! supports.
GroupOperator convolve(PairContext const& ctx, GroupOperator const& x,
                       GroupOperator const& y);

//! x*(g) = conj(x(g^{-1})).
GroupOperator adjoint(PairContext const& ctx, GroupOperator const& x);

//! tau(x) = x(1), the coefficient of the identity.
ComplexRational trace(PairContext const& ctx, GroupOperator const& x);

//! Conditional expectation onto the subalgebra spanned by Gamma_0: restricts
//! the support to Gamma_0. Idempotent, trace-preserving, Gamma_0-bimodular.
GroupOperator project_onto_gamma0(PairContext const& ctx,
                                  GroupOperator const& x);

//! || E(x v y) - E(x) v E(y) ||_2^2 as an exact rational; v must be
//! supported in Gamma_0.
Rat mixing_defect(PairContext const& ctx, GroupOperator const& x,
                  GroupOperator const& v, GroupOperator const& y);

//! Exact squared defects indexed by gamma in a Gamma_0 ball (or by powers
//! t^k): the finite-scale sampling of the strong-mixing limit.
struct DefectCurve {
  struct Entry {
    std::string label;
    std::optional<Element> gamma;
    std::optional<long> k;
    Rat defect_sq;
  };
  std::vector<Entry> entries;
  std::string x_desc;
  std::string y_desc;
};

//! defect_sq(gamma) = mixing_defect(x, lambda(gamma), y) over the Gamma_0
//! ball. Each sample is additionally recomputed through the conjugation form
//! || E(v x v* y) - E(x) E(y) ||_2 with v* = lambda(gamma); the two exact
//! values must agree and a mismatch aborts.
DefectCurve strong_mixing_curve(PairContext const& ctx, GroupOperator const& x,
                                GroupOperator const& y, int radius);

//! First gamma in ball order whose worst pair defect over F x F is <= eps^2.
std::optional<Element> weak_mixing_witness(PairContext const& ctx,
                                           std::vector<GroupOperator> const& f,
                                           int radius, Rat const& eps_sq);

//! defect_sq(k) along powers t^k, |k| <= k_max; t must lie in Gamma_0.
DefectCurve ah_curve(PairContext const& ctx, GroupOperator const& x,
                     Element const& t, GroupOperator const& y, long k_max);

//! |x(s^{-1})|^2 = |tau(lambda(s) x)|^2 along the listed elements; for
//! finitely supported x this is eventually exactly zero.
std::vector<Rat> coefficient_decay(PairContext const& ctx,
                                   GroupOperator const& x,
                                   std::vector<Element> const& s);

//! Parses operator text: either a plain word ("b^3", meaning lambda of that
//! word) or a JSON array of [coefficient, word] pairs with exact
//! coefficients ("1/2", "0+1/1i", ...).
GroupOperator parse_operator(PairContext const& ctx, std::string const& text);

std::string operator_to_string(PairContext const& ctx,
                               GroupOperator const& x);

}  // namespace pairmix

#endif  // PAIRMIX_FOURIER_HPP_
