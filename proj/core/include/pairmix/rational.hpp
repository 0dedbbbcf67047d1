#ifndef PAIRMIX_RATIONAL_HPP_
#define PAIRMIX_RATIONAL_HPP_

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "errors.hpp"

namespace pairmix {

// Exact arithmetic only: no floating point enters any group computation.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(Rat const& q) {
  return boost::multiprecision::numerator(q);
}

inline Int rat_den(Rat const& q) {
  return boost::multiprecision::denominator(q);
}

//! 2-adic valuation of a nonzero rational (of its reduced form). Exactly one
//! of numerator/denominator is even, so the result is the signed exponent of
//! 2 in the numerator.
long v2(Rat const& q);

//! Gaussian rational, the coefficient field for group-algebra computations.
struct ComplexRational {
  Rat re;
  Rat im;

  ComplexRational() = default;
  ComplexRational(Rat r) : re(std::move(r)), im(0) {}
  ComplexRational(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const {
    return re == 0 && im == 0;
  }

  ComplexRational conj() const {
    return {re, -im};
  }

  //! |z|^2, an exact nonnegative rational.
  Rat norm_sq() const {
    return re * re + im * im;
  }

  friend bool operator==(ComplexRational const& a, ComplexRational const& b) {
    return a.re == b.re && a.im == b.im;
  }

  friend ComplexRational operator+(ComplexRational const& a,
                                   ComplexRational const& b) {
    return {a.re + b.re, a.im + b.im};
  }

  friend ComplexRational operator-(ComplexRational const& a,
                                   ComplexRational const& b) {
    return {a.re - b.re, a.im - b.im};
  }

  friend ComplexRational operator*(ComplexRational const& a,
                                   ComplexRational const& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }

  ComplexRational& operator+=(ComplexRational const& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
};

//! Renders a rational as "p/q" with q >= 1, e.g. "3/2", "-1/1", "0/1".
std::string rat_to_string(Rat const& q);

//! Parses "p", "p/q", with optional sign. Throws ParseError on junk.
Rat rat_from_string(std::string const& s);

//! Renders "p/q" for real values, "p/q+r/si" / "p/q-r/si" otherwise.
std::string complex_to_string(ComplexRational const& z);

//! Accepts everything rat_from_string does, plus "p/q+r/si", "p/q-r/si",
//! "r/si", "i", "-i".
ComplexRational complex_from_string(std::string const& s);

//! Decimal rendering of a nonnegative rational at `digits` significant
//! digits, computed by exact long division (defect curves are rational but a
//! decimal column is easier to eyeball).
std::string rat_to_decimal(Rat const& q, int digits = 12);

}  // namespace pairmix

#endif  // PAIRMIX_RATIONAL_HPP_
