#include "pairmix/rational.hpp"

#include <cctype>
#include <cstddef>
#include <sstream>

namespace pairmix {

long v2(Rat const& q) {
  if (q == 0) {
    throw_error(ErrorKind::InternalError, "v2 of zero is undefined");
  }
  Int n = rat_num(q);
  Int d = rat_den(q);
  long v = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++v;
  }
  while (d % 2 == 0) {
    d /= 2;
    --v;
  }
  return v;
}

std::string rat_to_string(Rat const& q) {
  return rat_num(q).str() + "/" + rat_den(q).str();
}

namespace {

// Parses a (possibly signed) integer starting at pos; advances pos.
Int parse_int_at(std::string const& s, std::size_t& pos) {
  std::size_t start = pos;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
    ++pos;
  }
  std::size_t digits = 0;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
    ++pos;
    ++digits;
  }
  if (digits == 0) {
    throw_error(ErrorKind::ParseError,
                "expected integer in \"" + s + "\" at position " +
                    std::to_string(start));
  }
  return Int(s.substr(start, pos - start));
}

// Parses "p" or "p/q" starting at pos; advances pos.
Rat parse_rat_at(std::string const& s, std::size_t& pos) {
  Int num = parse_int_at(s, pos);
  if (pos < s.size() && s[pos] == '/') {
    ++pos;
    Int den = parse_int_at(s, pos);
    if (den == 0) {
      throw_error(ErrorKind::ParseError, "zero denominator in \"" + s + "\"");
    }
    return Rat(num, den);
  }
  return Rat(num);
}

std::string strip_spaces(std::string const& s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      out += c;
    }
  }
  return out;
}

}  // namespace

Rat rat_from_string(std::string const& s) {
  std::string t = strip_spaces(s);
  std::size_t pos = 0;
  Rat q = parse_rat_at(t, pos);
  if (pos != t.size()) {
    throw_error(ErrorKind::ParseError, "trailing junk in rational \"" + s + "\"");
  }
  return q;
}

std::string complex_to_string(ComplexRational const& z) {
  if (z.im == 0) {
    return rat_to_string(z.re);
  }
  std::string im_part = rat_to_string(z.im >= 0 ? z.im : Rat(-z.im)) + "i";
  return rat_to_string(z.re) + (z.im >= 0 ? "+" : "-") + im_part;
}

ComplexRational complex_from_string(std::string const& s) {
  std::string t = strip_spaces(s);
  if (t.empty()) {
    throw_error(ErrorKind::ParseError, "empty coefficient");
  }
  if (t == "i") {
    return ComplexRational(Rat(0), Rat(1));
  }
  if (t == "-i" ) {
    return ComplexRational(Rat(0), Rat(-1));
  }
  std::size_t pos = 0;
  Rat first = parse_rat_at(t, pos);
  if (pos == t.size()) {
    return ComplexRational(first);
  }
  if (t[pos] == 'i' && pos + 1 == t.size()) {
    return ComplexRational(Rat(0), first);
  }
  if (t[pos] != '+' && t[pos] != '-') {
    throw_error(ErrorKind::ParseError, "bad coefficient \"" + s + "\"");
  }
  Rat second = parse_rat_at(t, pos);
  if (pos >= t.size() || t[pos] != 'i' || pos + 1 != t.size()) {
    throw_error(ErrorKind::ParseError,
                "imaginary part must end in 'i' in \"" + s + "\"");
  }
  return ComplexRational(first, second);
}

std::string rat_to_decimal(Rat const& q, int digits) {
  if (q == 0) {
    return "0";
  }
  bool neg = q < 0;
  Int n = rat_num(neg ? Rat(-q) : q);
  Int d = rat_den(neg ? Rat(-q) : q);
  Int whole = n / d;
  Int rem = n % d;
  std::ostringstream out;
  if (neg) {
    out << '-';
  }
  out << whole.str();
  int significant = whole == 0 ? 0 : static_cast<int>(whole.str().size());
  if (rem != 0 && significant < digits) {
    out << '.';
    while (rem != 0 && significant < digits) {
      rem *= 10;
      Int digit = rem / d;
      rem %= d;
      out << digit.str();
      if (significant > 0 || digit != 0) {
        ++significant;
      }
    }
  }
  return out.str();
}

}  // namespace pairmix
