#include "pairmix/normal_forms.hpp"

#include <algorithm>

namespace pairmix {

// ---------------------------------------------------------------------
// Transversals
// ---------------------------------------------------------------------

std::optional<int> TransversalTable::z_index_of_gamma0(
    AbelianVec const& g) const {
  for (std::size_t i = 0; i < spec.z_in_gamma0.size(); ++i) {
    if (spec.z_in_gamma0[i] == g) {
      return static_cast<int>(i);
    }
  }
  return std::nullopt;
}

std::optional<int> TransversalTable::z_index_of_gamma1(int s) const {
  for (std::size_t i = 0; i < spec.z_in_gamma1.size(); ++i) {
    if (spec.z_in_gamma1[i] == s) {
      return static_cast<int>(i);
    }
  }
  return std::nullopt;
}

std::pair<AbelianVec, int> TransversalTable::factor_gamma0(
    AbelianVec const& g) const {
  // candidates g * z^{-1} are pairwise distinct, so the minimum is unique
  AbelianVec best;
  int best_z = -1;
  for (std::size_t zi = 0; zi < spec.z_in_gamma0.size(); ++zi) {
    AbelianVec cand =
        spec.gamma0.add(g, spec.gamma0.neg(spec.z_in_gamma0[zi]));
    if (best_z < 0 || cmp(cand, best) < 0) {
      best = cand;
      best_z = static_cast<int>(zi);
    }
  }
  return {best, best_z};
}

std::pair<int, int> TransversalTable::factor_gamma1(int s) const {
  return {spec.g1_rep[s], spec.g1_rem[s]};
}

// ---------------------------------------------------------------------
// Amalgam normalization
// ---------------------------------------------------------------------

void amalgam_rmul(AmalgamSpec const& spec, AmalgamForm& form,
                  RawAmalgamSyllable const& factor) {
  TransversalTable table{spec};
  if (std::holds_alternative<AbelianVec>(factor)) {
    // absorb the current tail into the incoming abelian-factor element
    AbelianVec g =
        spec.gamma0.add(spec.z_in_gamma0[form.tail],
                        std::get<AbelianVec>(factor));
    if (!form.chain.empty() && !form.chain.back().in_gamma1) {
      AbelianVec merged = spec.gamma0.add(form.chain.back().r, g);
      form.chain.pop_back();
      form.tail = 0;
      amalgam_rmul(spec, form, RawAmalgamSyllable(std::move(merged)));
      return;
    }
    if (auto zi = table.z_index_of_gamma0(g)) {
      form.tail = *zi;
      return;
    }
    auto [rep, zi] = table.factor_gamma0(g);
    form.chain.push_back(AmalgamForm::Syllable{false, std::move(rep), 0});
    form.tail = zi;
  } else {
    int s = spec.gamma1.mul(spec.z_in_gamma1[form.tail],
                            std::get<int>(factor));
    if (!form.chain.empty() && form.chain.back().in_gamma1) {
      int merged = spec.gamma1.mul(form.chain.back().s, s);
      form.chain.pop_back();
      form.tail = 0;
      amalgam_rmul(spec, form, RawAmalgamSyllable(merged));
      return;
    }
    if (auto zi = table.z_index_of_gamma1(s)) {
      form.tail = *zi;
      return;
    }
    auto [rep, zi] = table.factor_gamma1(s);
    form.chain.push_back(AmalgamForm::Syllable{true, {}, rep});
    form.tail = zi;
  }
}

AmalgamForm amalgam_normalize(AmalgamSpec const& spec,
                              std::vector<RawAmalgamSyllable> const& raw) {
  AmalgamForm form;
  for (auto const& syl : raw) {
    amalgam_rmul(spec, form, syl);
  }
  return form;
}

// ---------------------------------------------------------------------
// HNN: phi and Britton reduction
// ---------------------------------------------------------------------

bool hnn_in_h(HnnSpec const& spec, AbelianVec const& v) {
  return spec.h_lat.contains(v.coords);
}

bool hnn_in_k(HnnSpec const& spec, AbelianVec const& v) {
  return spec.k_lat.contains(v.coords);
}

AbelianVec hnn_phi(HnnSpec const& spec, AbelianVec const& h) {
  auto coeffs = spec.h_solver.solve(h.coords);
  if (!coeffs) {
    throw_error(ErrorKind::InternalError, "phi applied outside H");
  }
  std::vector<Int> out(spec.base.dim(), Int(0));
  for (std::size_t i = 0; i < spec.h_gens.size(); ++i) {
    for (int j = 0; j < spec.base.dim(); ++j) {
      out[j] += (*coeffs)[i] * spec.phi_images[i].coords[j];
    }
  }
  return spec.base.normalized(std::move(out));
}

AbelianVec hnn_phi_inverse(HnnSpec const& spec, AbelianVec const& k) {
  auto coeffs = spec.phi_solver.solve(k.coords);
  if (!coeffs) {
    throw_error(ErrorKind::InternalError, "phi^{-1} applied outside K");
  }
  std::vector<Int> out(spec.base.dim(), Int(0));
  for (std::size_t i = 0; i < spec.h_gens.size(); ++i) {
    for (int j = 0; j < spec.base.dim(); ++j) {
      out[j] += (*coeffs)[i] * spec.h_gens[i].coords[j];
    }
  }
  return spec.base.normalized(std::move(out));
}

HnnForm britton_reduce(HnnSpec const& spec, std::vector<HnnLetter> const& raw) {
  std::vector<AbelianVec> bases;
  std::vector<int> signs;
  bases.push_back(spec.base.zero());
  for (auto const& letter : raw) {
    if (letter.is_stable) {
      signs.push_back(letter.sign);
      bases.push_back(spec.base.zero());
    } else {
      bases.back() = spec.base.add(bases.back(), letter.base);
    }
  }

  // pinch leftmost-innermost until no t^{-1} h t (h in H) or t k t^{-1}
  // (k in K) remains
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < signs.size(); ++i) {
      bool pinch_phi = signs[i] == -1 && signs[i + 1] == 1 &&
                       hnn_in_h(spec, bases[i + 1]);
      bool pinch_inv = signs[i] == 1 && signs[i + 1] == -1 &&
                       hnn_in_k(spec, bases[i + 1]);
      if (!pinch_phi && !pinch_inv) {
        continue;
      }
      AbelianVec mid = pinch_phi ? hnn_phi(spec, bases[i + 1])
                                 : hnn_phi_inverse(spec, bases[i + 1]);
      bases[i] = spec.base.add(spec.base.add(bases[i], mid), bases[i + 2]);
      bases.erase(bases.begin() + i + 1, bases.begin() + i + 3);
      signs.erase(signs.begin() + i, signs.begin() + i + 2);
      changed = true;
      break;
    }
  }

  // transversal normalization, sliding remainders to the right:
  // h t = t phi(h) and k t^{-1} = t^{-1} phi^{-1}(k)
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (signs[i] == 1) {
      auto rep = spec.base.normalized(spec.h_lat.reduce(bases[i].coords));
      AbelianVec rem = spec.base.add(bases[i], spec.base.neg(rep));
      bases[i] = rep;
      bases[i + 1] = spec.base.add(hnn_phi(spec, rem), bases[i + 1]);
    } else {
      auto rep = spec.base.normalized(spec.k_lat.reduce(bases[i].coords));
      AbelianVec rem = spec.base.add(bases[i], spec.base.neg(rep));
      bases[i] = rep;
      bases[i + 1] = spec.base.add(hnn_phi_inverse(spec, rem), bases[i + 1]);
    }
  }

  HnnForm form;
  form.head = bases[0];
  for (std::size_t i = 0; i < signs.size(); ++i) {
    form.letters.emplace_back(signs[i], bases[i + 1]);
  }
  return form;
}

// ---------------------------------------------------------------------
// Dom chains
// ---------------------------------------------------------------------

namespace {

// {lambda in H : phi(lambda) in X}; X must contain the torsion lattice.
AbelianLattice phi_preimage(HnnSpec const& spec, AbelianLattice const& x) {
  int dim = spec.base.dim();
  std::vector<std::vector<Int>> domain_rows;
  std::vector<std::vector<Int>> image_rows;
  for (std::size_t i = 0; i < spec.h_gens.size(); ++i) {
    domain_rows.push_back(spec.h_gens[i].coords);
    image_rows.push_back(spec.phi_images[i].coords);
  }
  for (auto const& row : spec.base.torsion_rows()) {
    domain_rows.push_back(row);
    image_rows.push_back(row);
  }

  std::vector<std::vector<Int>> stacked = image_rows;
  for (auto const& row : x.hnf_rows()) {
    stacked.push_back(row);
  }
  AbelianLattice joint(dim, stacked);

  std::vector<std::vector<Int>> gens;
  for (auto const& rel : joint.kernel()) {
    std::vector<Int> v(dim, Int(0));
    for (std::size_t i = 0; i < domain_rows.size(); ++i) {
      for (int j = 0; j < dim; ++j) {
        v[j] += rel[i] * domain_rows[i][j];
      }
    }
    gens.push_back(std::move(v));
  }
  return AbelianLattice(dim, gens);
}

std::string lattice_description(FGAbelianSpec const& base,
                                AbelianLattice const& lat) {
  std::string out = "<";
  bool first = true;
  for (auto const& row : lat.hnf_rows()) {
    bool is_torsion_relator = false;
    for (std::size_t i = 0; i < base.torsion.size(); ++i) {
      std::vector<Int> relator(base.dim(), Int(0));
      relator[base.free_rank + static_cast<int>(i)] = base.torsion[i];
      if (row == relator) {
        is_torsion_relator = true;
      }
    }
    if (is_torsion_relator) {
      continue;  // implicit in the group, noise in a description
    }
    if (!first) {
      out += ", ";
    }
    out += base.to_word(AbelianVec{row});
    first = false;
  }
  if (first) {
    out += "1";
  }
  out += ">";
  return out;
}

}  // namespace

bool DomChain::strictly_descending() const {
  for (std::size_t j = 0; j + 1 < doms.size(); ++j) {
    if (!doms[j].contains_lattice(doms[j + 1])) {
      return false;  // not even a chain; defensive, should be impossible
    }
    if (doms[j + 1].contains_lattice(doms[j])) {
      return false;  // stabilized at this step
    }
  }
  return true;
}

bool DomChain::member(int j, AbelianVec const& v) const {
  return doms[j - 1].contains(v.coords);
}

DomChain dom_chain(HnnSpec const& spec, int jmax) {
  if (jmax < 1) {
    throw_error(ErrorKind::ConfigError, "dom_chain requires jmax >= 1");
  }
  DomChain chain;
  chain.jmax = jmax;
  chain.doms.push_back(spec.h_lat);
  for (int j = 2; j <= jmax; ++j) {
    AbelianLattice cut =
        AbelianLattice::intersect(chain.doms.back(), spec.k_lat);
    chain.doms.push_back(phi_preimage(spec, cut));
  }
  for (auto const& d : chain.doms) {
    chain.descriptions.push_back(lattice_description(spec.base, d));
  }
  return chain;
}

std::optional<int> escape_index(HnnSpec const& spec, DomChain const& chain,
                                AbelianVec const& lambda) {
  if (spec.base.is_zero(lambda)) {
    throw_error(ErrorKind::IdentityInput,
                "the identity never escapes the domain chain");
  }
  for (int j = 1; j <= chain.jmax; ++j) {
    if (!chain.member(j, lambda)) {
      return j;
    }
  }
  return std::nullopt;
}

}  // namespace pairmix
