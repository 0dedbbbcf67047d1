#include "pairmix/pair_context.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "pairmix/normal_forms.hpp"

namespace pairmix {

int Ball::distinct_levels() const {
  int count = 0;
  int last = -1;
  for (int level : member_level) {
    if (level != last) {
      ++count;
      last = level;
    }
  }
  return count;
}

char const* ball_side_name(BallSide side) {
  switch (side) {
    case BallSide::WholeGroup: return "whole-group";
    case BallSide::Gamma0Only: return "gamma0";
    case BallSide::ComplementOfGamma0: return "complement";
  }
  return "?";
}

// ---------------------------------------------------------------------
// Words
// ---------------------------------------------------------------------

RawWord parse_word(std::string const& text) {
  RawWord out;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    if (token == "1") {
      continue;  // identity token, allowed for readability
    }
    auto caret = token.find('^');
    std::string name = token.substr(0, caret);
    if (name.empty()) {
      throw_error(ErrorKind::ParseError, "empty generator name in word");
    }
    Int exp(1);
    if (caret != std::string::npos) {
      std::string e = token.substr(caret + 1);
      if (e.empty() ||
          (e.size() == 1 && !std::isdigit(static_cast<unsigned char>(e[0])))) {
        throw_error(ErrorKind::ParseError,
                    "bad exponent in token \"" + token + "\"");
      }
      try {
        exp = Int(e);
      } catch (std::exception const&) {
        throw_error(ErrorKind::ParseError,
                    "bad exponent in token \"" + token + "\"");
      }
    }
    out.letters.emplace_back(name, exp);
  }
  return out;
}

bool in_fn(Rat const& f, std::optional<long> n) {
  if (f == 0) {
    return false;
  }
  long v = v2(f);
  if (!n.has_value()) {
    return v == 0;  // F_infinity: odd numerator and denominator
  }
  return v % *n == 0;
}

// ---------------------------------------------------------------------
// Free words
// ---------------------------------------------------------------------

namespace {

void free_append(FreeWord& w, int gen, Int exp) {
  if (exp == 0) {
    return;
  }
  while (!w.runs.empty() && w.runs.back().first == gen) {
    exp += w.runs.back().second;
    w.runs.pop_back();
    if (exp == 0) {
      return;
    }
    break;
  }
  if (exp != 0) {
    w.runs.emplace_back(gen, std::move(exp));
  }
}

FreeWord free_mul(FreeWord const& a, FreeWord const& b) {
  FreeWord out = a;
  for (auto const& [gen, exp] : b.runs) {
    free_append(out, gen, exp);
  }
  return out;
}

FreeWord free_inv(FreeWord const& a) {
  FreeWord out;
  for (auto it = a.runs.rbegin(); it != a.runs.rend(); ++it) {
    out.runs.emplace_back(it->first, -it->second);
  }
  return out;
}

// ---------------------------------------------------------------------
// Free products
// ---------------------------------------------------------------------

bool fp_syllable_is_identity(FreeProductSpec const& spec,
                             FreeProdWord::Syllable const& s) {
  if (s.in_finite()) {
    return s.g == 0;
  }
  return spec.inner->is_identity(*s.inner);
}

void fp_push(FreeProductSpec const& spec, FreeProdWord& w,
             FreeProdWord::Syllable const& s) {
  if (fp_syllable_is_identity(spec, s)) {
    return;
  }
  if (!w.syls.empty() && w.syls.back().in_finite() == s.in_finite()) {
    FreeProdWord::Syllable merged;
    if (s.in_finite()) {
      merged.g = spec.finite.mul(w.syls.back().g, s.g);
    } else {
      merged.inner = std::make_shared<Element const>(
          spec.inner->mul(*w.syls.back().inner, *s.inner));
    }
    w.syls.pop_back();
    fp_push(spec, w, merged);
    return;
  }
  w.syls.push_back(s);
}

FreeProdWord fp_mul(FreeProductSpec const& spec, FreeProdWord const& a,
                    FreeProdWord const& b) {
  FreeProdWord out = a;
  for (auto const& s : b.syls) {
    fp_push(spec, out, s);
  }
  return out;
}

FreeProdWord fp_inv(FreeProductSpec const& spec, FreeProdWord const& a) {
  FreeProdWord out;
  for (auto it = a.syls.rbegin(); it != a.syls.rend(); ++it) {
    FreeProdWord::Syllable s;
    if (it->in_finite()) {
      s.g = spec.finite.inv(it->g);
    } else {
      s.inner = std::make_shared<Element const>(spec.inner->inv(*it->inner));
    }
    out.syls.push_back(std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------------
// HNN helpers
// ---------------------------------------------------------------------

std::vector<HnnLetter> hnn_to_letters(HnnForm const& f) {
  std::vector<HnnLetter> out;
  out.push_back(HnnLetter::base_elt(f.head));
  for (auto const& [sign, base] : f.letters) {
    out.push_back(HnnLetter::stable(sign));
    out.push_back(HnnLetter::base_elt(base));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------
// Construction and validation
// ---------------------------------------------------------------------

namespace {

std::vector<std::string> default_free_names(int rank) {
  if (rank > 26) {
    throw_error(ErrorKind::ConfigError,
                "free rank > 26 requires explicit generator names");
  }
  std::vector<std::string> names;
  for (int i = 0; i < rank; ++i) {
    names.push_back(std::string(1, static_cast<char>('a' + i)));
  }
  return names;
}

void validate_free(FreeGroupSpec& s) {
  if (s.rank < 1) {
    throw_error(ErrorKind::ConfigError, "free group rank must be >= 1");
  }
  if (s.names.empty()) {
    s.names = default_free_names(s.rank);
  }
  if (static_cast<int>(s.names.size()) != s.rank) {
    throw_error(ErrorKind::ConfigError, "free group needs one name per rank");
  }
  if (s.gamma0_index < 0 || s.gamma0_index >= s.rank) {
    throw_error(ErrorKind::ConfigError, "gamma0 generator index out of range");
  }
}

void validate_amalgam(AmalgamSpec& s) {
  s.gamma0.validate_and_default_names("amalgam abelian factor");
  s.gamma1.validate("amalgam finite factor");
  if (s.z_in_gamma0.size() != s.z_in_gamma1.size() || s.z_in_gamma0.empty()) {
    throw_error(ErrorKind::ConfigError,
                "Z must be listed as aligned nonempty element lists");
  }
  if (!s.gamma0.is_zero(s.z_in_gamma0[0]) || s.z_in_gamma1[0] != 0) {
    throw_error(ErrorKind::ConfigError, "Z element 0 must be the identity");
  }
  int zn = static_cast<int>(s.z_in_gamma0.size());
  for (int i = 0; i < zn; ++i) {
    for (int r = 0; r < s.gamma0.free_rank; ++r) {
      if (s.z_in_gamma0[i].coords[r] != 0) {
        throw_error(ErrorKind::ConfigError,
                    "Z must be finite: free coordinates of its elements "
                    "must vanish");
      }
    }
    s.z_in_gamma0[i] = s.gamma0.normalized(s.z_in_gamma0[i].coords);
    for (int j = 0; j < i; ++j) {
      if (s.z_in_gamma0[j] == s.z_in_gamma0[i] ||
          s.z_in_gamma1[j] == s.z_in_gamma1[i]) {
        throw_error(ErrorKind::ConfigError, "Z elements must be distinct");
      }
    }
  }
  if (s.gamma1.order() <= zn) {
    throw_error(ErrorKind::ConfigError,
                "the finite factor must properly contain Z");
  }
  // closure, inverses, and the isomorphism between the two copies of Z
  s.z_mul.assign(zn, std::vector<int>(zn, -1));
  s.z_inv.assign(zn, -1);
  auto z0_index = [&](AbelianVec const& v) {
    for (int i = 0; i < zn; ++i) {
      if (s.z_in_gamma0[i] == v) {
        return i;
      }
    }
    return -1;
  };
  for (int i = 0; i < zn; ++i) {
    for (int j = 0; j < zn; ++j) {
      int k = z0_index(s.gamma0.add(s.z_in_gamma0[i], s.z_in_gamma0[j]));
      if (k < 0) {
        throw_error(ErrorKind::ConfigError, "Z is not closed in the abelian "
                                            "factor");
      }
      if (s.gamma1.mul(s.z_in_gamma1[i], s.z_in_gamma1[j]) !=
          s.z_in_gamma1[k]) {
        throw_error(ErrorKind::ConfigError,
                    "the two copies of Z multiply differently; the embedding "
                    "is not a homomorphism");
      }
      s.z_mul[i][j] = k;
      if (k == 0) {
        s.z_inv[i] = j;
      }
    }
  }
  // coset representatives in the finite factor: least index in sZ
  int n = s.gamma1.order();
  s.g1_rep.assign(n, -1);
  s.g1_rem.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    int rep = x;
    for (int zi = 0; zi < zn; ++zi) {
      rep = std::min(rep, s.gamma1.mul(x, s.z_in_gamma1[zi]));
    }
    s.g1_rep[x] = rep;
    int need = s.gamma1.mul(s.gamma1.inv(rep), x);
    for (int zi = 0; zi < zn; ++zi) {
      if (s.z_in_gamma1[zi] == need) {
        s.g1_rem[x] = zi;
        break;
      }
    }
    if (s.g1_rem[x] < 0) {
      throw_error(ErrorKind::InternalError, "coset factorization failed");
    }
  }
}

void validate_hnn(HnnSpec& s) {
  s.base.validate_and_default_names("hnn base");
  for (auto const& name : s.base.names) {
    if (name == s.stable_name) {
      throw_error(ErrorKind::ConfigError,
                  "stable letter name collides with a base generator");
    }
  }
  if (s.h_gens.size() != s.phi_images.size()) {
    throw_error(ErrorKind::ConfigError,
                "phi needs exactly one image per H generator");
  }
  int dim = s.base.dim();
  auto rows_of = [&](std::vector<AbelianVec> const& gens) {
    std::vector<std::vector<Int>> rows;
    for (auto const& g : gens) {
      if (static_cast<int>(g.coords.size()) != dim) {
        throw_error(ErrorKind::ConfigError, "subgroup generator has wrong "
                                            "dimension");
      }
      rows.push_back(s.base.normalized(g.coords).coords);
    }
    for (auto const& t : s.base.torsion_rows()) {
      rows.push_back(t);
    }
    return rows;
  };
  s.h_lat = AbelianLattice(dim, rows_of(s.h_gens));
  s.k_lat = AbelianLattice(dim, rows_of(s.k_gens));
  s.h_solver = s.h_lat;  // same rows: h_gens then torsion relators
  std::vector<std::vector<Int>> img_rows;
  for (auto& img : s.phi_images) {
    img = s.base.normalized(img.coords);
    if (!s.k_lat.contains(img.coords)) {
      throw_error(ErrorKind::ConfigError, "phi image lies outside K");
    }
    img_rows.push_back(img.coords);
  }
  for (auto const& t : s.base.torsion_rows()) {
    img_rows.push_back(t);
  }
  s.phi_solver = AbelianLattice(dim, img_rows);

  auto combo_is_identity = [&](std::vector<Int> const& rel,
                               std::vector<AbelianVec> const& vecs) {
    std::vector<Int> acc(dim, Int(0));
    for (std::size_t i = 0; i < vecs.size(); ++i) {
      for (int j = 0; j < dim; ++j) {
        acc[j] += rel[i] * vecs[i].coords[j];
      }
    }
    return s.base.is_zero(s.base.normalized(std::move(acc)));
  };
  // well-defined: relations among the H generators map to the identity
  for (auto const& rel : s.h_solver.kernel()) {
    if (!combo_is_identity(rel, s.phi_images)) {
      throw_error(ErrorKind::ConfigError,
                  "phi is not well-defined on H (a relation among the H "
                  "generators has a nontrivial image)");
    }
  }
  // injective: relations among the images pull back to the identity
  for (auto const& rel : s.phi_solver.kernel()) {
    if (!combo_is_identity(rel, s.h_gens)) {
      throw_error(ErrorKind::ConfigError, "phi is not injective on H");
    }
  }
  // surjective onto K
  if (!s.phi_solver.equals_lattice(s.k_lat)) {
    throw_error(ErrorKind::ConfigError, "phi(H) differs from K");
  }
}

void validate_semidirect(SemidirectSpec& s) {
  if (s.dim < 1) {
    throw_error(ErrorKind::ConfigError, "semidirect dimension must be >= 1");
  }
  if (s.matrix.n != s.dim ||
      s.matrix.a.size() != static_cast<std::size_t>(s.dim) * s.dim) {
    throw_error(ErrorKind::ConfigError, "semidirect matrix has wrong shape");
  }
  s.inverse = s.matrix.inverse_unimodular();  // throws unless det = +-1
  if (s.names.empty()) {
    for (int i = 0; i < s.dim; ++i) {
      s.names.push_back("e" + std::to_string(i + 1));
    }
    s.names.push_back("t");
  }
  if (static_cast<int>(s.names.size()) != s.dim + 1) {
    throw_error(ErrorKind::ConfigError,
                "semidirect needs dim + 1 names (vector basis plus stable "
                "generator)");
  }
}

void validate_tri2(Tri2Spec& s) {
  if (s.n.has_value() && *s.n < 1) {
    throw_error(ErrorKind::ConfigError, "triangular2 parameter must be >= 1");
  }
}

void validate_tri3(Tri3Spec& s) {
  if (s.m < 1 || s.n < 1) {
    throw_error(ErrorKind::ConfigError, "triangular3 parameters must be >= 1");
  }
}

void validate_free_product(FreeProductSpec& s) {
  if (!s.inner) {
    throw_error(ErrorKind::ConfigError, "free product needs an inner pair");
  }
  s.finite.validate("free product finite factor");
  if (s.finite.order() < 2) {
    throw_error(ErrorKind::ConfigError,
                "free product finite factor must be nontrivial");
  }
}

}  // namespace

PairContext::PairContext(Spec spec) : PairContext(std::move(spec), Options{}) {}

PairContext::PairContext(Spec spec, Options options)
    : _spec(std::move(spec)),
      _named(std::move(options.named_elements)),
      _gamma0_gens(std::move(options.gamma0_generators)),
      _gamma_gens(std::move(options.gamma_generators)),
      _ball_cap(options.ball_cap),
      _refute_threshold(options.refute_threshold) {
  std::visit(
      [](auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FreeGroupSpec>) {
          validate_free(s);
        } else if constexpr (std::is_same_v<T, AmalgamSpec>) {
          validate_amalgam(s);
        } else if constexpr (std::is_same_v<T, HnnSpec>) {
          validate_hnn(s);
        } else if constexpr (std::is_same_v<T, SemidirectSpec>) {
          validate_semidirect(s);
        } else if constexpr (std::is_same_v<T, Tri2Spec>) {
          validate_tri2(s);
        } else if constexpr (std::is_same_v<T, Tri3Spec>) {
          validate_tri3(s);
        } else {
          validate_free_product(s);
        }
      },
      _spec);
  build_letters();
  if (family() == Family::Amalgam) {
    auto const& s = spec_as<AmalgamSpec>();
    if (s.cyclic_word.has_value()) {
      Element w = canonicalize(*s.cyclic_word);
      auto const& form = std::get<AmalgamForm>(w.payload);
      if (form.chain.size() < 2 ||
          form.chain.front().in_gamma1 == form.chain.back().in_gamma1) {
        throw_error(ErrorKind::ConfigError,
                    "cyclic gamma0 word must be cyclically reduced of "
                    "syllable length >= 2 (so that it has infinite order)");
      }
      _cyclic_w = std::move(w);
    } else if (!s.gamma0.is_infinite()) {
      throw_error(ErrorKind::ConfigError,
                  "gamma0 must be infinite: the abelian factor needs free "
                  "rank >= 1 (or configure a cyclic gamma0 word)");
    }
  }
  apply_generator_defaults();
  validate_generators();
}

void PairContext::build_letters() {
  auto add_letter = [&](std::string const& name, Element e) {
    if (!_letters.emplace(name, std::move(e)).second) {
      throw_error(ErrorKind::ConfigError, "duplicate letter \"" + name + "\"");
    }
  };
  switch (family()) {
    case Family::FreeGroup: {
      auto const& s = spec_as<FreeGroupSpec>();
      for (int i = 0; i < s.rank; ++i) {
        add_letter(s.names[i], Element{FreeWord{{{i, Int(1)}}}});
      }
      break;
    }
    case Family::Amalgam: {
      auto const& s = spec_as<AmalgamSpec>();
      for (int i = 0; i < s.gamma0.dim(); ++i) {
        add_letter(s.gamma0.names[i],
                   Element{amalgam_normalize(
                       s, {RawAmalgamSyllable(s.gamma0.basis_element(i))})});
      }
      for (int i = 0; i < s.gamma1.order(); ++i) {
        add_letter(s.gamma1.names[i],
                   Element{amalgam_normalize(s, {RawAmalgamSyllable(i)})});
      }
      break;
    }
    case Family::Hnn: {
      auto const& s = spec_as<HnnSpec>();
      for (int i = 0; i < s.base.dim(); ++i) {
        add_letter(s.base.names[i],
                   Element{HnnForm{s.base.basis_element(i), {}}});
      }
      add_letter(s.stable_name,
                 Element{HnnForm{s.base.zero(), {{1, s.base.zero()}}}});
      break;
    }
    case Family::Semidirect: {
      auto const& s = spec_as<SemidirectSpec>();
      for (int i = 0; i < s.dim; ++i) {
        std::vector<Int> v(s.dim, Int(0));
        v[i] = 1;
        add_letter(s.names[i], Element{SemidirectPair{std::move(v), Int(0)}});
      }
      add_letter(s.names[s.dim],
                 Element{SemidirectPair{std::vector<Int>(s.dim, Int(0)),
                                        Int(1)}});
      break;
    }
    case Family::RationalTriangular2:
    case Family::RationalTriangular3:
      break;  // only named elements from the configuration
    case Family::FreeProduct: {
      auto const& s = spec_as<FreeProductSpec>();
      for (auto const& [name, elt] : s.inner->_letters) {
        add_letter(name, lift_to_free_product(*this, elt));
      }
      for (int i = 1; i < s.finite.order(); ++i) {
        FreeProdWord w;
        w.syls.push_back(FreeProdWord::Syllable{nullptr, i});
        add_letter(s.finite.names[i], Element{std::move(w)});
      }
      break;
    }
  }
  for (auto const& [name, elt] : _named) {
    check_family(elt, "named element");
    add_letter(name, elt);
  }
}

void PairContext::apply_generator_defaults() {
  if (_gamma0_gens.empty()) {
    switch (family()) {
      case Family::FreeGroup:
        _gamma0_gens.push_back(
            letter(spec_as<FreeGroupSpec>().names
                       [spec_as<FreeGroupSpec>().gamma0_index]));
        break;
      case Family::Amalgam: {
        auto const& s = spec_as<AmalgamSpec>();
        if (_cyclic_w.has_value()) {
          _gamma0_gens.push_back(*_cyclic_w);
        } else {
          for (int i = 0; i < s.gamma0.dim(); ++i) {
            _gamma0_gens.push_back(letter(s.gamma0.names[i]));
          }
        }
        break;
      }
      case Family::Hnn:
        _gamma0_gens.push_back(letter(spec_as<HnnSpec>().stable_name));
        break;
      case Family::Semidirect:
        _gamma0_gens.push_back(
            letter(spec_as<SemidirectSpec>().names[spec_as<SemidirectSpec>()
                                                       .dim]));
        break;
      case Family::RationalTriangular2:
      case Family::RationalTriangular3:
        break;  // no canonical finite generating set; config must supply
      case Family::FreeProduct: {
        auto const& s = spec_as<FreeProductSpec>();
        for (auto const& g : s.inner->gamma0_generators()) {
          _gamma0_gens.push_back(lift_to_free_product(*this, g));
        }
        break;
      }
    }
  }
  if (_gamma_gens.empty()) {
    switch (family()) {
      case Family::FreeGroup: {
        auto const& s = spec_as<FreeGroupSpec>();
        for (auto const& n : s.names) {
          _gamma_gens.push_back(letter(n));
        }
        break;
      }
      case Family::Amalgam: {
        auto const& s = spec_as<AmalgamSpec>();
        for (int i = 0; i < s.gamma0.dim(); ++i) {
          _gamma_gens.push_back(letter(s.gamma0.names[i]));
        }
        for (int i = 1; i < s.gamma1.order(); ++i) {
          _gamma_gens.push_back(letter(s.gamma1.names[i]));
        }
        break;
      }
      case Family::Hnn: {
        auto const& s = spec_as<HnnSpec>();
        for (int i = 0; i < s.base.dim(); ++i) {
          _gamma_gens.push_back(letter(s.base.names[i]));
        }
        _gamma_gens.push_back(letter(s.stable_name));
        break;
      }
      case Family::Semidirect: {
        auto const& s = spec_as<SemidirectSpec>();
        for (auto const& n : s.names) {
          _gamma_gens.push_back(letter(n));
        }
        break;
      }
      case Family::RationalTriangular2:
      case Family::RationalTriangular3:
        break;
      case Family::FreeProduct: {
        auto const& s = spec_as<FreeProductSpec>();
        for (auto const& g : s.inner->gamma_generators()) {
          _gamma_gens.push_back(lift_to_free_product(*this, g));
        }
        for (int i = 1; i < s.finite.order(); ++i) {
          _gamma_gens.push_back(letter(s.finite.names[i]));
        }
        break;
      }
    }
  }
}

void PairContext::validate_generators() const {
  for (auto const& g : _gamma0_gens) {
    check_family(g, "gamma0 enumeration generator");
    if (is_identity(g)) {
      throw_error(ErrorKind::ConfigError,
                  "enumeration generators must not contain the identity");
    }
    if (!is_in_gamma0(g)) {
      throw_error(ErrorKind::ConfigError,
                  "a gamma0 enumeration generator fails the gamma0 "
                  "membership predicate");
    }
  }
  for (auto const& g : _gamma_gens) {
    check_family(g, "enumeration generator");
    if (is_identity(g)) {
      throw_error(ErrorKind::ConfigError,
                  "enumeration generators must not contain the identity");
    }
  }
}

void PairContext::check_family(Element const& x, char const* where) const {
  if (x.family() != family()) {
    throw_error(ErrorKind::FamilyMismatch,
                std::string(where) + ": element of family " +
                    family_name(x.family()) + " used with a " +
                    family_name(family()) + " context");
  }
}

// ---------------------------------------------------------------------
// Arithmetic
// ---------------------------------------------------------------------

Element PairContext::identity() const {
  switch (family()) {
    case Family::FreeGroup: return Element{FreeWord{}};
    case Family::Amalgam: return Element{AmalgamForm{}};
    case Family::Hnn:
      return Element{HnnForm{spec_as<HnnSpec>().base.zero(), {}}};
    case Family::Semidirect:
      return Element{SemidirectPair{
          std::vector<Int>(spec_as<SemidirectSpec>().dim, Int(0)), Int(0)}};
    case Family::RationalTriangular2:
      return Element{Tri2Matrix{Rat(1), Rat(0)}};
    case Family::RationalTriangular3:
      return Element{Tri3Matrix{Rat(1), Rat(1), Rat(0), Rat(0)}};
    case Family::FreeProduct: return Element{FreeProdWord{}};
  }
  throw_error(ErrorKind::InternalError, "unreachable");
}

bool PairContext::is_identity(Element const& x) const {
  return x == identity();
}

Element PairContext::mul(Element const& x, Element const& y) const {
  check_family(x, "mul");
  check_family(y, "mul");
  switch (family()) {
    case Family::FreeGroup:
      return Element{free_mul(std::get<FreeWord>(x.payload),
                              std::get<FreeWord>(y.payload))};
    case Family::Amalgam: {
      auto const& s = spec_as<AmalgamSpec>();
      auto const& a = std::get<AmalgamForm>(x.payload);
      auto const& b = std::get<AmalgamForm>(y.payload);
      AmalgamForm out = a;
      for (auto const& syl : b.chain) {
        if (syl.in_gamma1) {
          amalgam_rmul(s, out, RawAmalgamSyllable(syl.s));
        } else {
          amalgam_rmul(s, out, RawAmalgamSyllable(syl.r));
        }
      }
      if (b.tail != 0) {
        amalgam_rmul(s, out, RawAmalgamSyllable(s.z_in_gamma0[b.tail]));
      }
      return Element{std::move(out)};
    }
    case Family::Hnn: {
      auto const& s = spec_as<HnnSpec>();
      auto letters = hnn_to_letters(std::get<HnnForm>(x.payload));
      auto more = hnn_to_letters(std::get<HnnForm>(y.payload));
      letters.insert(letters.end(), more.begin(), more.end());
      return Element{britton_reduce(s, letters)};
    }
    case Family::Semidirect: {
      auto const& s = spec_as<SemidirectSpec>();
      auto const& a = std::get<SemidirectPair>(x.payload);
      auto const& b = std::get<SemidirectPair>(y.payload);
      auto moved = s.matrix.power(a.k).apply(b.v);
      std::vector<Int> v(s.dim);
      for (int i = 0; i < s.dim; ++i) {
        v[i] = a.v[i] + moved[i];
      }
      return Element{SemidirectPair{std::move(v), a.k + b.k}};
    }
    case Family::RationalTriangular2: {
      auto const& a = std::get<Tri2Matrix>(x.payload);
      auto const& b = std::get<Tri2Matrix>(y.payload);
      return Element{Tri2Matrix{a.f * b.f, a.f * b.x + a.x}};
    }
    case Family::RationalTriangular3: {
      auto const& a = std::get<Tri3Matrix>(x.payload);
      auto const& b = std::get<Tri3Matrix>(y.payload);
      return Element{Tri3Matrix{a.f1 * b.f1, a.f2 * b.f2, b.x + a.x * b.f1,
                                b.y + a.y * b.f2}};
    }
    case Family::FreeProduct:
      return Element{fp_mul(spec_as<FreeProductSpec>(),
                            std::get<FreeProdWord>(x.payload),
                            std::get<FreeProdWord>(y.payload))};
  }
  throw_error(ErrorKind::InternalError, "unreachable");
}

Element PairContext::inv(Element const& x) const {
  check_family(x, "inv");
  switch (family()) {
    case Family::FreeGroup:
      return Element{free_inv(std::get<FreeWord>(x.payload))};
    case Family::Amalgam: {
      auto const& s = spec_as<AmalgamSpec>();
      auto const& a = std::get<AmalgamForm>(x.payload);
      std::vector<RawAmalgamSyllable> raw;
      if (a.tail != 0) {
        raw.emplace_back(s.z_in_gamma0[s.z_inv[a.tail]]);
      }
      for (auto it = a.chain.rbegin(); it != a.chain.rend(); ++it) {
        if (it->in_gamma1) {
          raw.emplace_back(s.gamma1.inv(it->s));
        } else {
          raw.emplace_back(s.gamma0.neg(it->r));
        }
      }
      return Element{amalgam_normalize(s, raw)};
    }
    case Family::Hnn: {
      auto const& s = spec_as<HnnSpec>();
      auto const& f = std::get<HnnForm>(x.payload);
      std::vector<HnnLetter> letters;
      for (std::size_t i = f.letters.size(); i-- > 0;) {
        letters.push_back(
            HnnLetter::base_elt(s.base.neg(f.letters[i].second)));
        letters.push_back(HnnLetter::stable(-f.letters[i].first));
      }
      letters.push_back(HnnLetter::base_elt(s.base.neg(f.head)));
      return Element{britton_reduce(s, letters)};
    }
    case Family::Semidirect: {
      auto const& s = spec_as<SemidirectSpec>();
      auto const& a = std::get<SemidirectPair>(x.payload);
      auto moved = s.matrix.power(-a.k).apply(a.v);
      for (auto& c : moved) {
        c = -c;
      }
      return Element{SemidirectPair{std::move(moved), -a.k}};
    }
    case Family::RationalTriangular2: {
      auto const& a = std::get<Tri2Matrix>(x.payload);
      return Element{Tri2Matrix{1 / a.f, -a.x / a.f}};
    }
    case Family::RationalTriangular3: {
      auto const& a = std::get<Tri3Matrix>(x.payload);
      return Element{
          Tri3Matrix{1 / a.f1, 1 / a.f2, -a.x / a.f1, -a.y / a.f2}};
    }
    case Family::FreeProduct:
      return Element{fp_inv(spec_as<FreeProductSpec>(),
                            std::get<FreeProdWord>(x.payload))};
  }
  throw_error(ErrorKind::InternalError, "unreachable");
}

Element PairContext::pow(Element const& x, Int k) const {
  Element base = k < 0 ? inv(x) : x;
  if (k < 0) {
    k = -k;
  }
  Element out = identity();
  while (k > 0) {
    if (k % 2 == 1) {
      out = mul(out, base);
    }
    k /= 2;
    if (k > 0) {
      base = mul(base, base);
    }
  }
  return out;
}

bool PairContext::is_in_gamma0(Element const& x) const {
  check_family(x, "is_in_gamma0");
  switch (family()) {
    case Family::FreeGroup: {
      auto const& w = std::get<FreeWord>(x.payload);
      return w.runs.empty() ||
             (w.runs.size() == 1 &&
              w.runs[0].first == spec_as<FreeGroupSpec>().gamma0_index);
    }
    case Family::Amalgam: {
      auto const& form = std::get<AmalgamForm>(x.payload);
      if (!_cyclic_w.has_value()) {
        // membership in the abelian factor: no finite-factor syllable
        return form.chain.empty() ||
               (form.chain.size() == 1 && !form.chain[0].in_gamma1);
      }
      // membership in <w>: syllable length grows linearly in the power, so
      // there is exactly one candidate exponent per sign
      auto const& wform = std::get<AmalgamForm>(_cyclic_w->payload);
      std::size_t period = wform.chain.size();
      if (form.chain.empty()) {
        return form.tail == 0;
      }
      if (form.chain.size() % period != 0) {
        return false;
      }
      Int k(form.chain.size() / period);
      return x == pow(*_cyclic_w, k) || x == pow(*_cyclic_w, -k);
    }
    case Family::Hnn: {
      auto const& f = std::get<HnnForm>(x.payload);
      auto const& s = spec_as<HnnSpec>();
      if (!s.base.is_zero(f.head)) {
        return false;
      }
      for (auto const& [sign, base] : f.letters) {
        if (sign != f.letters[0].first || !s.base.is_zero(base)) {
          return false;
        }
      }
      return true;
    }
    case Family::Semidirect: {
      auto const& p = std::get<SemidirectPair>(x.payload);
      return std::all_of(p.v.begin(), p.v.end(),
                         [](Int const& c) { return c == 0; });
    }
    case Family::RationalTriangular2:
      return std::get<Tri2Matrix>(x.payload).x == 0;
    case Family::RationalTriangular3: {
      auto const& m = std::get<Tri3Matrix>(x.payload);
      return m.x == 0 && m.y == 0;
    }
    case Family::FreeProduct: {
      auto const& w = std::get<FreeProdWord>(x.payload);
      if (w.syls.empty()) {
        return true;
      }
      return w.syls.size() == 1 && !w.syls[0].in_finite() &&
             spec_as<FreeProductSpec>().inner->is_in_gamma0(*w.syls[0].inner);
    }
  }
  throw_error(ErrorKind::InternalError, "unreachable");
}

// ---------------------------------------------------------------------
// Letters and canonicalization
// ---------------------------------------------------------------------

bool PairContext::has_letter(std::string const& name) const {
  return _letters.count(name) > 0;
}

Element PairContext::letter(std::string const& name) const {
  auto it = _letters.find(name);
  if (it == _letters.end()) {
    throw_error(ErrorKind::UnknownGenerator,
                "unknown generator or named element \"" + name + "\"");
  }
  return it->second;
}

Element PairContext::canonicalize(RawWord const& raw) const {
  Element out = identity();
  for (auto const& [name, exp] : raw.letters) {
    out = mul(out, pow(letter(name), exp));
  }
  return out;
}

Element PairContext::canonicalize(std::string const& word) const {
  return canonicalize(parse_word(word));
}

Element PairContext::make_semidirect(std::vector<Int> v, Int k) const {
  auto const& s = spec_as<SemidirectSpec>();
  if (static_cast<int>(v.size()) != s.dim) {
    throw_error(ErrorKind::NotInGroup, "vector has wrong dimension");
  }
  return Element{SemidirectPair{std::move(v), std::move(k)}};
}

Element PairContext::make_tri2(Rat f, Rat x) const {
  auto const& s = spec_as<Tri2Spec>();
  if (f == 0 || !in_fn(f, s.n)) {
    throw_error(ErrorKind::NotInGroup,
                "diagonal entry " + rat_to_string(f) + " is not in F_n");
  }
  return Element{Tri2Matrix{std::move(f), std::move(x)}};
}

Element PairContext::make_tri3(Rat f1, Rat f2, Rat x, Rat y) const {
  auto const& s = spec_as<Tri3Spec>();
  if (f1 == 0 || !in_fn(f1, s.m)) {
    throw_error(ErrorKind::NotInGroup,
                "entry f1 = " + rat_to_string(f1) + " is not in F_m");
  }
  if (f2 == 0 || !in_fn(f2, s.n)) {
    throw_error(ErrorKind::NotInGroup,
                "entry f2 = " + rat_to_string(f2) + " is not in F_n");
  }
  return Element{
      Tri3Matrix{std::move(f1), std::move(f2), std::move(x), std::move(y)}};
}

// ---------------------------------------------------------------------
// Balls
// ---------------------------------------------------------------------

Ball PairContext::enumerate_ball(BallSide side, int radius) const {
  if (radius < 0) {
    throw_error(ErrorKind::ConfigError, "ball radius must be >= 0");
  }
  auto const& gens =
      side == BallSide::Gamma0Only ? _gamma0_gens : _gamma_gens;
  if (gens.empty()) {
    throw_error(ErrorKind::ConfigError,
                "no enumeration generators configured for side " +
                    std::string(ball_side_name(side)));
  }
  std::vector<Element> steps;
  for (auto const& g : gens) {
    steps.push_back(g);
    steps.push_back(inv(g));
  }

  std::vector<Element> order{identity()};
  std::vector<int> order_level{0};
  std::set<Element, ElementLess> seen{identity()};
  std::size_t level_begin = 0;
  for (int level = 1; level <= radius; ++level) {
    std::size_t level_end = order.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (auto const& s : steps) {
        Element y = mul(order[i], s);
        if (seen.insert(y).second) {
          order.push_back(std::move(y));
          order_level.push_back(level);
          if (order.size() > _ball_cap) {
            throw_error(ErrorKind::BallTooLarge,
                        "ball exceeded the member cap of " +
                            std::to_string(_ball_cap) +
                            "; lower the radius or raise the cap");
          }
        }
      }
    }
    level_begin = level_end;
  }

  Ball ball;
  ball.side = side;
  ball.radius = radius;
  for (std::size_t i = 0; i < order.size(); ++i) {
    bool in0 = side == BallSide::WholeGroup ? false : is_in_gamma0(order[i]);
    if (side == BallSide::WholeGroup ||
        (side == BallSide::Gamma0Only && in0) ||
        (side == BallSide::ComplementOfGamma0 && !in0)) {
      ball.members.push_back(std::move(order[i]));
      ball.member_level.push_back(order_level[i]);
    }
  }
  return ball;
}

Ball PairContext::enumerate_box(Int const& v_bound, Int const& k_bound,
                                BallSide side) const {
  if (family() != Family::Semidirect) {
    throw_error(ErrorKind::FamilyMismatch,
                "box enumeration is only defined for the semidirect family");
  }
  if (v_bound < 0 || k_bound < 0) {
    throw_error(ErrorKind::ConfigError, "box bounds must be >= 0");
  }
  auto const& s = spec_as<SemidirectSpec>();
  Int volume = (2 * k_bound + 1);
  for (int i = 0; i < s.dim; ++i) {
    volume *= 2 * v_bound + 1;
  }
  if (volume > Int(static_cast<unsigned long long>(_ball_cap))) {
    throw_error(ErrorKind::BallTooLarge,
                "box exceeds the member cap; shrink the bounds");
  }

  Int shells = v_bound > k_bound ? v_bound : k_bound;
  std::vector<std::vector<Element>> by_shell;
  by_shell.resize(static_cast<std::size_t>(static_cast<long>(shells)) + 1);

  std::vector<Int> v(s.dim, -v_bound);
  for (Int k = -k_bound; k <= k_bound; ++k) {
    // odometer over the vector box, lexicographic ascending
    std::fill(v.begin(), v.end(), -v_bound);
    while (true) {
      Int shell = k < 0 ? Int(-k) : k;
      for (auto const& c : v) {
        Int ac = c < 0 ? Int(-c) : c;
        if (ac > shell) {
          shell = ac;
        }
      }
      by_shell[static_cast<std::size_t>(static_cast<long>(shell))].push_back(
          Element{SemidirectPair{v, k}});
      int pos = s.dim - 1;
      while (pos >= 0) {
        if (v[pos] < v_bound) {
          ++v[pos];
          break;
        }
        v[pos] = -v_bound;
        --pos;
      }
      if (pos < 0) {
        break;
      }
    }
  }

  Ball ball;
  ball.side = side;
  ball.radius = static_cast<int>(static_cast<long>(shells));
  for (std::size_t shell = 0; shell < by_shell.size(); ++shell) {
    for (auto& x : by_shell[shell]) {
      bool in0 = is_in_gamma0(x);
      if (side == BallSide::WholeGroup ||
          (side == BallSide::Gamma0Only && in0) ||
          (side == BallSide::ComplementOfGamma0 && !in0)) {
        ball.members.push_back(std::move(x));
        ball.member_level.push_back(static_cast<int>(shell));
      }
    }
  }
  return ball;
}

// ---------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------

std::string PairContext::to_word_string(Element const& x) const {
  check_family(x, "to_word_string");
  switch (family()) {
    case Family::FreeGroup: {
      auto const& s = spec_as<FreeGroupSpec>();
      auto const& w = std::get<FreeWord>(x.payload);
      if (w.runs.empty()) {
        return "1";
      }
      std::string out;
      for (auto const& [gen, exp] : w.runs) {
        if (!out.empty()) {
          out += ' ';
        }
        out += s.names[gen];
        if (exp != 1) {
          out += '^' + exp.str();
        }
      }
      return out;
    }
    case Family::Amalgam: {
      auto const& s = spec_as<AmalgamSpec>();
      auto const& form = std::get<AmalgamForm>(x.payload);
      std::string out;
      for (auto const& syl : form.chain) {
        if (!out.empty()) {
          out += ' ';
        }
        out += syl.in_gamma1 ? s.gamma1.names[syl.s] : s.gamma0.to_word(syl.r);
      }
      if (form.tail != 0) {
        if (!out.empty()) {
          out += ' ';
        }
        out += s.gamma0.to_word(s.z_in_gamma0[form.tail]);
      }
      return out.empty() ? "1" : out;
    }
    case Family::Hnn: {
      auto const& s = spec_as<HnnSpec>();
      auto const& f = std::get<HnnForm>(x.payload);
      std::string out;
      if (!s.base.is_zero(f.head)) {
        out += s.base.to_word(f.head);
      }
      for (auto const& [sign, base] : f.letters) {
        if (!out.empty()) {
          out += ' ';
        }
        out += s.stable_name;
        if (sign < 0) {
          out += "^-1";
        }
        if (!s.base.is_zero(base)) {
          out += ' ' + s.base.to_word(base);
        }
      }
      return out.empty() ? "1" : out;
    }
    case Family::Semidirect: {
      auto const& s = spec_as<SemidirectSpec>();
      auto const& p = std::get<SemidirectPair>(x.payload);
      std::string out;
      for (int i = 0; i < s.dim; ++i) {
        if (p.v[i] == 0) {
          continue;
        }
        if (!out.empty()) {
          out += ' ';
        }
        out += s.names[i];
        if (p.v[i] != 1) {
          out += '^' + p.v[i].str();
        }
      }
      if (p.k != 0) {
        if (!out.empty()) {
          out += ' ';
        }
        out += s.names[s.dim];
        if (p.k != 1) {
          out += '^' + p.k.str();
        }
      }
      return out.empty() ? "1" : out;
    }
    case Family::RationalTriangular2: {
      auto const& m = std::get<Tri2Matrix>(x.payload);
      return "[f=" + rat_to_string(m.f) + " x=" + rat_to_string(m.x) + "]";
    }
    case Family::RationalTriangular3: {
      auto const& m = std::get<Tri3Matrix>(x.payload);
      return "[f1=" + rat_to_string(m.f1) + " f2=" + rat_to_string(m.f2) +
             " x=" + rat_to_string(m.x) + " y=" + rat_to_string(m.y) + "]";
    }
    case Family::FreeProduct: {
      auto const& s = spec_as<FreeProductSpec>();
      auto const& w = std::get<FreeProdWord>(x.payload);
      if (w.syls.empty()) {
        return "1";
      }
      std::string out;
      for (auto const& syl : w.syls) {
        if (!out.empty()) {
          out += ' ';
        }
        if (syl.in_finite()) {
          out += s.finite.names[syl.g];
        } else {
          std::string part = s.inner->to_word_string(*syl.inner);
          if (part.find(' ') != std::string::npos) {
            out += '(' + part + ')';
          } else {
            out += part;
          }
        }
      }
      return out;
    }
  }
  throw_error(ErrorKind::InternalError, "unreachable");
}

// ---------------------------------------------------------------------
// Factories
// ---------------------------------------------------------------------

PairContext make_free_group(int rank, int gamma0_index,
                            std::vector<std::string> names,
                            PairContext::Options options) {
  return PairContext(FreeGroupSpec{rank, gamma0_index, std::move(names)},
                     std::move(options));
}

PairContext make_amalgam(AmalgamSpec spec, PairContext::Options options) {
  return PairContext(std::move(spec), std::move(options));
}

PairContext make_hnn(HnnSpec spec, PairContext::Options options) {
  return PairContext(std::move(spec), std::move(options));
}

PairContext make_baumslag_solitar(long m, long n, std::string base_name,
                                  std::string stable_name,
                                  PairContext::Options options) {
  if (m == 0 || n == 0) {
    throw_error(ErrorKind::ConfigError, "BS(m, n) needs m, n nonzero");
  }
  HnnSpec spec;
  spec.base.free_rank = 1;
  spec.base.names = {std::move(base_name)};
  spec.stable_name = std::move(stable_name);
  spec.h_gens = {AbelianVec{{Int(n)}}};
  spec.k_gens = {AbelianVec{{Int(m)}}};
  spec.phi_images = {AbelianVec{{Int(m)}}};
  return PairContext(std::move(spec), std::move(options));
}

PairContext make_semidirect_context(int dim, IntMatrix matrix,
                                    std::vector<std::string> names,
                                    PairContext::Options options) {
  SemidirectSpec spec;
  spec.dim = dim;
  spec.matrix = std::move(matrix);
  spec.names = std::move(names);
  return PairContext(std::move(spec), std::move(options));
}

PairContext make_tri2_context(std::optional<long> n,
                              PairContext::Options options) {
  return PairContext(Tri2Spec{n}, std::move(options));
}

PairContext make_tri3_context(long m, long n, PairContext::Options options) {
  return PairContext(Tri3Spec{m, n}, std::move(options));
}

PairContext make_free_product(std::shared_ptr<PairContext const> inner,
                              FiniteGroupTable finite,
                              PairContext::Options options) {
  return PairContext(FreeProductSpec{std::move(inner), std::move(finite)},
                     std::move(options));
}

Element lift_to_free_product(PairContext const& product, Element const& x) {
  auto const& s = product.spec_as<FreeProductSpec>();
  s.inner->check_family(x, "lift_to_free_product");
  FreeProdWord w;
  if (!s.inner->is_identity(x)) {
    w.syls.push_back(
        FreeProdWord::Syllable{std::make_shared<Element const>(x), 0});
  }
  return Element{std::move(w)};
}

}  // namespace pairmix
