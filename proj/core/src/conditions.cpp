#include "pairmix/conditions.hpp"

#include <algorithm>
#include <set>

#include "pairmix/parallel.hpp"

namespace pairmix {

char const* certificate_source_name(CertificateSource s) {
  switch (s) {
    case CertificateSource::AmalgamFormula: return "amalgam-formula";
    case CertificateSource::MalnormalBound: return "malnormal-bound";
    case CertificateSource::SemidirectConstruction:
      return "semidirect-construction";
    case CertificateSource::DomChainEscape: return "dom-chain-escape";
  }
  return "?";
}

std::string certificate_kind_name(CertificateKind const& k) {
  if (std::holds_alternative<RefutedInfinite>(k)) {
    return "refuted-infinite";
  }
  if (std::holds_alternative<BoundedVerified>(k)) {
    return "bounded-verified";
  }
  return "certified-finite";
}

char const* family_verdict_name(FamilyCertificate::Verdict v) {
  switch (v) {
    case FamilyCertificate::Verdict::Certified: return "certified";
    case FamilyCertificate::Verdict::Refuted: return "refuted";
    case FamilyCertificate::Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

struct AbelianVecLess {
  bool operator()(AbelianVec const& a, AbelianVec const& b) const {
    return cmp(a, b) < 0;
  }
};

Element landing(PairContext const& ctx, Element const& g, Element const& gamma,
                Element const& h) {
  return ctx.mul(ctx.mul(g, gamma), h);
}

std::vector<Element> sorted_unique(std::vector<Element> v) {
  std::sort(v.begin(), v.end(), ElementLess{});
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// ------------------------------------------------------------------
// Gamma(m, n): certified-infinite exceptional families
// ------------------------------------------------------------------

// The landing coordinates of g * diag-family(f) * h are affine functions of
// f, so membership in Gamma_0 at two distinct values of f proves membership
// at every f. Checks the diag(1,f,1) family (f in F_m) and the diag(1,1,f)
// family (f in F_n).
std::optional<std::string> tri3_infinite_family(PairContext const& ctx,
                                                Element const& g,
                                                Element const& h) {
  auto const& s = ctx.spec_as<Tri3Spec>();
  auto lands_for_all = [&](bool first_slot) {
    long step = first_slot ? s.m : s.n;
    for (long e = 1; e <= 2; ++e) {
      Rat f = Rat(Int(1) << static_cast<unsigned>(step * e));
      Element d = first_slot ? ctx.make_tri3(f, Rat(1), Rat(0), Rat(0))
                             : ctx.make_tri3(Rat(1), f, Rat(0), Rat(0));
      if (!ctx.is_in_gamma0(landing(ctx, g, d, h))) {
        return false;
      }
    }
    return true;
  };
  if (lands_for_all(true)) {
    return "g diag(1,f,1) h lies in Gamma_0 for every f in F_m";
  }
  if (lands_for_all(false)) {
    return "g diag(1,1,f) h lies in Gamma_0 for every f in F_n";
  }
  return std::nullopt;
}

// ------------------------------------------------------------------
// Amalgam: Cor-4.5-style malnormality of <w> in a free product
// ------------------------------------------------------------------

bool amalgam_cyclic_malnormal(PairContext const& ctx) {
  auto const& s = ctx.spec_as<AmalgamSpec>();
  if (!ctx.cyclic_gamma0_word().has_value() || s.z_in_gamma0.size() != 1) {
    return false;  // the criterion is for honest free products
  }
  auto const& form =
      std::get<AmalgamForm>(ctx.cyclic_gamma0_word()->payload);
  if (form.chain.size() != 2) {
    return false;
  }
  // w = a b with a, b nontrivial in their factors; malnormal once one of
  // them has order >= 3
  auto syllable_order = [&](AmalgamForm::Syllable const& syl) -> long {
    if (syl.in_gamma1) {
      return s.gamma1.element_order(syl.s);
    }
    for (int i = 0; i < s.gamma0.free_rank; ++i) {
      if (syl.r.coords[i] != 0) {
        return -1;  // infinite order
      }
    }
    AbelianVec x = syl.r;
    long order = 1;
    while (!s.gamma0.is_zero(x)) {
      x = s.gamma0.add(x, syl.r);
      ++order;
    }
    return order;
  };
  long o1 = syllable_order(form.chain[0]);
  long o2 = syllable_order(form.chain[1]);
  return o1 < 0 || o2 < 0 || o1 >= 3 || o2 >= 3;
}

bool members_suggest_infinite(PairContext const& ctx, Ball const& ball,
                              std::vector<std::size_t> const& member_index,
                              int radius) {
  if (static_cast<int>(member_index.size()) < ctx.refute_threshold()) {
    return false;
  }
  std::set<int> levels;
  int max_level = 0;
  for (auto i : member_index) {
    levels.insert(ball.member_level[i]);
    max_level = std::max(max_level, ball.member_level[i]);
  }
  return static_cast<int>(levels.size()) >= 4 && max_level >= radius - 1;
}

CertificateKind structural_verdict(PairContext const& ctx, Element const& g,
                                   Element const& h,
                                   std::vector<Element> const& gammas,
                                   Ball const& ball,
                                   std::vector<std::size_t> const& member_index,
                                   int radius) {
  switch (ctx.family()) {
    case Family::FreeGroup:
      // the cyclic subgroup generated by a free generator is malnormal
      return CertifiedFinite{gammas, CertificateSource::MalnormalBound};
    case Family::Amalgam:
      if (!ctx.cyclic_gamma0_word().has_value()) {
        return CertifiedFinite{amalgam_st_certificate(ctx, g, h),
                               CertificateSource::AmalgamFormula};
      }
      if (amalgam_cyclic_malnormal(ctx)) {
        return CertifiedFinite{gammas, CertificateSource::MalnormalBound};
      }
      break;
    case Family::Hnn: {
      auto cert = hnn_malnormal_certificate(ctx, 4, 8);
      if (cert.certified) {
        return CertifiedFinite{gammas, CertificateSource::DomChainEscape};
      }
      break;
    }
    case Family::Semidirect: {
      try {
        auto cert = semidirect_st_certificate(ctx, {g, h}, 64);
        if (cert.certified) {
          return CertifiedFinite{cert.e,
                                 CertificateSource::SemidirectConstruction};
        }
      } catch (Error const& e) {
        if (e.kind() != ErrorKind::FixedPointExists) {
          throw;
        }
      }
      break;
    }
    case Family::RationalTriangular2:
      break;
    case Family::RationalTriangular3:
      if (auto family = tri3_infinite_family(ctx, g, h)) {
        return RefutedInfinite{*family, gammas};
      }
      break;
    case Family::FreeProduct: {
      auto const& s = ctx.spec_as<FreeProductSpec>();
      auto const& wg = std::get<FreeProdWord>(g.payload);
      auto const& wh = std::get<FreeProdWord>(h.payload);
      // pure inner elements: E(g, h) is computed inside the inner pair, so
      // its verdict transfers verbatim
      if (wg.syls.size() == 1 && !wg.syls[0].in_finite() &&
          wh.syls.size() == 1 && !wh.syls[0].in_finite()) {
        auto inner_report = exceptional_set(*s.inner, *wg.syls[0].inner,
                                            *wh.syls[0].inner, radius);
        if (auto const* cf =
                std::get_if<CertifiedFinite>(&inner_report.verdict)) {
          std::vector<Element> lifted;
          for (auto const& e : cf->e) {
            lifted.push_back(lift_to_free_product(ctx, e));
          }
          return CertifiedFinite{std::move(lifted), cf->source};
        }
        if (auto const* ri =
                std::get_if<RefutedInfinite>(&inner_report.verdict)) {
          std::vector<Element> lifted;
          for (auto const& e : ri->witnesses) {
            lifted.push_back(lift_to_free_product(ctx, e));
          }
          return RefutedInfinite{ri->witness_family, std::move(lifted)};
        }
      }
      break;
    }
  }
  if (members_suggest_infinite(ctx, ball, member_index, radius)) {
    return RefutedInfinite{
        "members found at every scale up to the search boundary", gammas};
  }
  return BoundedVerified{radius};
}

}  // namespace

// ------------------------------------------------------------------
// Exceptional sets
// ------------------------------------------------------------------

ExceptionalSetReport exceptional_set(PairContext const& ctx, Element const& g,
                                     Element const& h, int radius) {
  ctx.check_family(g, "exceptional_set");
  ctx.check_family(h, "exceptional_set");
  if (ctx.is_in_gamma0(g) || ctx.is_in_gamma0(h)) {
    throw_error(ErrorKind::NotInComplement,
                "E(g, h) is trivially infinite when g or h lies in Gamma_0; "
                "exceptional sets are only computed for g, h outside it");
  }
  Ball ball = ctx.enumerate_ball(BallSide::Gamma0Only, radius);

  std::vector<char> hit(ball.members.size(), 0);
  std::vector<Element> products(ball.members.size());
  parallel_for(ball.members.size(), [&](std::size_t i) {
    Element p = landing(ctx, g, ball.members[i], h);
    if (ctx.is_in_gamma0(p)) {
      hit[i] = 1;
      products[i] = std::move(p);
    }
  });

  ExceptionalSetReport report;
  report.g = g;
  report.h = h;
  report.search_radius = radius;
  std::vector<Element> gammas;
  std::vector<std::size_t> member_index;
  for (std::size_t i = 0; i < ball.members.size(); ++i) {
    if (hit[i]) {
      report.members.emplace_back(ball.members[i], products[i]);
      gammas.push_back(ball.members[i]);
      member_index.push_back(i);
    }
  }
  report.verdict =
      structural_verdict(ctx, g, h, gammas, ball, member_index, radius);
  return report;
}

std::optional<Element> ss_witness(PairContext const& ctx,
                                  std::vector<Element> const& c, int radius,
                                  bool exclude_identity) {
  if (c.empty()) {
    throw_error(ErrorKind::BadC, "C must be nonempty");
  }
  for (auto const& x : c) {
    ctx.check_family(x, "ss_witness");
    if (ctx.is_in_gamma0(x)) {
      throw_error(ErrorKind::BadC,
                  "C must avoid Gamma_0 (offending element: " +
                      ctx.to_word_string(x) + ")");
    }
  }
  Ball ball = ctx.enumerate_ball(BallSide::Gamma0Only, radius);
  for (auto const& gamma : ball.members) {
    if (exclude_identity && ctx.is_identity(gamma)) {
      continue;
    }
    bool good = true;
    for (auto const& g : c) {
      for (auto const& h : c) {
        if (ctx.is_in_gamma0(landing(ctx, g, gamma, h))) {
          good = false;
          break;
        }
      }
      if (!good) {
        break;
      }
    }
    if (good) {
      return gamma;
    }
  }
  return std::nullopt;
}

StCheckResult st_check(PairContext const& ctx, std::vector<Element> const& c,
                       int radius) {
  if (c.empty()) {
    throw_error(ErrorKind::BadC, "C must be nonempty");
  }
  StCheckResult result;
  std::set<Element, ElementLess> aggregated;
  std::size_t weakest = 2;
  for (auto const& g : c) {
    for (auto const& h : c) {
      auto report = exceptional_set(ctx, g, h, radius);
      if (auto const* cf = std::get_if<CertifiedFinite>(&report.verdict)) {
        for (auto const& e : cf->e) {
          aggregated.insert(e);
        }
      } else {
        for (auto const& [gamma, product] : report.members) {
          aggregated.insert(gamma);
        }
      }
      weakest = std::min(weakest, report.verdict.index());
      result.pairs.push_back(std::move(report));
    }
  }
  result.aggregated_e.assign(aggregated.begin(), aggregated.end());
  // overall verdict: the weakest kind seen, carrying the aggregated set
  if (weakest == 0) {
    std::string family;
    std::vector<Element> witnesses;
    for (auto const& p : result.pairs) {
      if (auto const* ri = std::get_if<RefutedInfinite>(&p.verdict)) {
        family = ri->witness_family;
        for (auto const& w : ri->witnesses) {
          witnesses.push_back(w);
        }
      }
    }
    result.overall = RefutedInfinite{family, sorted_unique(witnesses)};
  } else if (weakest == 1) {
    result.overall = BoundedVerified{radius};
  } else {
    // every pair certified; the union of supersets is again a superset
    CertificateSource source =
        std::get<CertifiedFinite>(result.pairs.front().verdict).source;
    result.overall = CertifiedFinite{result.aggregated_e, source};
  }
  return result;
}

MalnormalReport malnormal_scan(PairContext const& ctx, int g_radius,
                               int gamma_radius) {
  if (g_radius < 1 || gamma_radius < 1) {
    throw_error(ErrorKind::ConfigError, "malnormal scan radii must be >= 1");
  }
  Ball gball = ctx.enumerate_ball(BallSide::ComplementOfGamma0, g_radius);
  Ball zball = ctx.enumerate_ball(BallSide::Gamma0Only, gamma_radius);

  MalnormalReport report;
  report.g_radius = g_radius;
  report.gamma_radius = gamma_radius;

  std::vector<std::vector<MalnormalReport::Violation>> found(
      gball.members.size());
  parallel_for(gball.members.size(), [&](std::size_t i) {
    Element const& g = gball.members[i];
    Element ginv = ctx.inv(g);
    for (auto const& gamma : zball.members) {
      if (ctx.is_identity(gamma)) {
        continue;
      }
      Element p = ctx.mul(ctx.mul(g, gamma), ginv);
      if (!ctx.is_identity(p) && ctx.is_in_gamma0(p)) {
        found[i].push_back(MalnormalReport::Violation{g, gamma, p});
      }
    }
  });
  for (auto& bucket : found) {
    for (auto& v : bucket) {
      report.violations.push_back(std::move(v));
    }
  }
  return report;
}

// ------------------------------------------------------------------
// Structural certificates
// ------------------------------------------------------------------

std::vector<Element> amalgam_st_certificate(PairContext const& ctx,
                                            Element const& g,
                                            Element const& h) {
  if (ctx.family() != Family::Amalgam) {
    throw_error(ErrorKind::FamilyMismatch,
                "the amalgam certificate needs the amalgam family");
  }
  if (ctx.cyclic_gamma0_word().has_value()) {
    throw_error(ErrorKind::FamilyMismatch,
                "the amalgam certificate applies when Gamma_0 is the abelian "
                "factor, not a cyclic word subgroup");
  }
  if (ctx.is_in_gamma0(g) || ctx.is_in_gamma0(h)) {
    throw_error(ErrorKind::NotInComplement,
                "certificate requires g, h outside Gamma_0");
  }
  auto const& s = ctx.spec_as<AmalgamSpec>();
  auto const& gf = std::get<AmalgamForm>(g.payload);
  auto const& hf = std::get<AmalgamForm>(h.payload);

  // u1: leading abelian-factor syllable of h (identity when h starts in the
  // finite factor)
  AbelianVec u1 = s.gamma0.zero();
  if (!hf.chain.empty() && !hf.chain.front().in_gamma1) {
    u1 = hf.chain.front().r;
  }
  // shift: u1^{-1} when g ends with a finite-factor syllable, otherwise
  // (r_l u1)^{-1}
  AbelianVec shift;
  if (gf.chain.back().in_gamma1) {
    shift = s.gamma0.neg(u1);
  } else {
    shift = s.gamma0.neg(s.gamma0.add(gf.chain.back().r, u1));
  }

  std::vector<Element> e;
  for (std::size_t zi = 0; zi < s.z_in_gamma0.size(); ++zi) {
    e.push_back(Element{AmalgamForm{{}, static_cast<int>(zi)}});
    AbelianVec shifted = s.gamma0.add(shift, s.z_in_gamma0[zi]);
    e.push_back(
        Element{amalgam_normalize(s, {RawAmalgamSyllable(shifted)})});
  }
  return sorted_unique(std::move(e));
}

SemidirectCertificate semidirect_st_certificate(PairContext const& ctx,
                                                std::vector<Element> const& c,
                                                long k_bound) {
  if (ctx.family() != Family::Semidirect) {
    throw_error(ErrorKind::FamilyMismatch,
                "the semidirect certificate needs the semidirect family");
  }
  if (c.empty()) {
    throw_error(ErrorKind::BadC, "C must be nonempty");
  }
  auto const& s = ctx.spec_as<SemidirectSpec>();

  // decompose C inside C1 x C2
  std::set<std::vector<Int>> c1;
  std::set<Int> c2;
  for (auto const& x : c) {
    ctx.check_family(x, "semidirect_st_certificate");
    auto const& p = std::get<SemidirectPair>(x.payload);
    if (ctx.is_in_gamma0(x)) {
      throw_error(ErrorKind::BadC, "C must avoid Gamma_0");
    }
    c1.insert(p.v);
    c2.insert(p.k);
  }
  std::set<std::vector<Int>> f = c1;
  for (auto const& v : c1) {
    std::vector<Int> neg(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      neg[i] = -v[i];
    }
    f.insert(std::move(neg));
  }
  auto inf_norm = [](std::vector<Int> const& v) {
    Int m(0);
    for (auto const& c_ : v) {
      Int a = c_ < 0 ? Int(-c_) : c_;
      if (a > m) {
        m = a;
      }
    }
    return m;
  };
  Int max_f_norm(0);
  for (auto const& v : f) {
    max_f_norm = std::max(max_f_norm, inf_norm(v));
  }

  // 2x2 hyperbolic case: x_{k+2} = tr(g) x_{k+1} - det(g) x_k, so once the
  // norm stops decreasing it at least doubles every step and the orbit never
  // returns to the box holding F. Norms are positive integers, so the
  // decreasing prefix is finite and the scan provably terminates.
  Int trace(0);
  for (int i = 0; i < s.dim; ++i) {
    trace += s.matrix.at(i, i);
  }
  bool certifiable = s.dim == 2 && (trace >= 3 || trace <= -3);

  std::set<Int> e1{Int(0)};
  bool complete_pos = false;
  bool complete_neg = false;
  auto scan_direction = [&](IntMatrix const& step, int direction,
                            bool& complete) {
    std::vector<std::vector<Int>> start(f.begin(), f.end());
    std::vector<std::vector<Int>> orbit = start;
    std::vector<Int> prev_norm;
    std::vector<char> alive(orbit.size(), 1);
    for (auto const& v : orbit) {
      prev_norm.push_back(inf_norm(v));
    }
    for (long k = 1; k <= k_bound; ++k) {
      bool any_alive = false;
      for (std::size_t i = 0; i < orbit.size(); ++i) {
        if (!alive[i]) {
          continue;
        }
        orbit[i] = step.apply(orbit[i]);
        Int norm = inf_norm(orbit[i]);
        if (f.count(orbit[i])) {
          e1.insert(Int(direction * k));
          if (orbit[i] == start[i]) {
            throw_error(ErrorKind::FixedPointExists,
                        "alpha_" + std::to_string(direction * k) +
                            " fixes a member of F; the fixed-point-free "
                            "hypothesis fails for this C");
          }
        }
        if (certifiable && norm >= prev_norm[i] && norm > max_f_norm) {
          alive[i] = 0;  // escaped for good
        } else {
          any_alive = true;
        }
        prev_norm[i] = norm;
      }
      if (!any_alive) {
        complete = true;
        return;
      }
    }
    complete = false;
  };
  scan_direction(s.matrix, 1, complete_pos);
  scan_direction(s.inverse, -1, complete_neg);

  SemidirectCertificate cert;
  cert.e1.assign(e1.begin(), e1.end());
  cert.certified = certifiable && complete_pos && complete_neg;
  if (!certifiable) {
    cert.note =
        "escape is only certified for 2x2 actions with |trace| >= 3; the "
        "scanned E1 is reported without a completeness guarantee";
  } else if (!cert.certified) {
    cert.note = "orbit escape not confirmed within the scan bound";
  } else {
    cert.note = "orbit norms escape monotonically; E1 is complete";
  }

  std::set<Element, ElementLess> e;
  for (auto const& gamma : c2) {
    for (auto const& k : cert.e1) {
      e.insert(ctx.make_semidirect(std::vector<Int>(s.dim, Int(0)),
                                   k - gamma));
    }
  }
  cert.e.assign(e.begin(), e.end());
  return cert;
}

std::vector<AbelianVec> hnn_base_ball(HnnSpec const& spec, int radius) {
  std::vector<AbelianVec> order{spec.base.zero()};
  std::set<AbelianVec, AbelianVecLess> seen{spec.base.zero()};
  std::size_t level_begin = 0;
  for (int level = 1; level <= radius; ++level) {
    std::size_t level_end = order.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (int b = 0; b < spec.base.dim(); ++b) {
        for (int sign : {1, -1}) {
          AbelianVec step = spec.base.basis_element(b);
          if (sign < 0) {
            step = spec.base.neg(step);
          }
          AbelianVec y = spec.base.add(order[i], step);
          if (seen.insert(y).second) {
            order.push_back(std::move(y));
          }
        }
      }
    }
    level_begin = level_end;
  }
  return order;
}

namespace {

bool hnn_chain_certifies(HnnSpec const& spec, DomChain const& chain,
                         int ball_radius, std::string& note) {
  for (auto const& lambda : hnn_base_ball(spec, ball_radius)) {
    if (spec.base.is_zero(lambda)) {
      continue;
    }
    if (!escape_index(spec, chain, lambda).has_value()) {
      note = "base element " + spec.base.to_word(lambda) +
             " stays in every computed Dom(phi^j)";
      return false;
    }
  }
  AbelianLattice trivial(spec.base.dim(), spec.base.torsion_rows());
  if (chain.doms.back().equals_lattice(trivial)) {
    note = "Dom(phi^" + std::to_string(chain.jmax) +
           ") is trivial, so every nontrivial base element escapes";
    return true;
  }
  if (spec.base.free_rank == 1 && spec.base.torsion.empty() &&
      chain.jmax >= 3 && chain.strictly_descending()) {
    note = "domain chain strictly descends (indices diverge), so every "
           "nonzero base element escapes";
    return true;
  }
  note = "domain chain neither reaches the trivial subgroup nor strictly "
         "descends";
  return false;
}

}  // namespace

HnnCertificate hnn_malnormal_certificate(PairContext const& ctx,
                                         int ball_radius, int jmax) {
  if (ctx.family() != Family::Hnn) {
    throw_error(ErrorKind::FamilyMismatch,
                "the dom-chain certificate needs the hnn family");
  }
  auto const& spec = ctx.spec_as<HnnSpec>();
  HnnCertificate cert;
  cert.chain = dom_chain(spec, jmax);
  std::string note;
  if (hnn_chain_certifies(spec, cert.chain, ball_radius, note)) {
    cert.certified = true;
    cert.note = note;
    return cert;
  }
  cert.note = note;

  // replacing t by t^{-1} swaps H and K and inverts phi without changing
  // Gamma_0 = <t>; a chain that certifies there certifies malnormality here
  HnnSpec inverted;
  inverted.base = spec.base;
  inverted.stable_name = spec.stable_name;
  inverted.h_gens = spec.k_gens;
  inverted.k_gens = spec.h_gens;
  for (auto const& k : spec.k_gens) {
    inverted.phi_images.push_back(hnn_phi_inverse(spec, k));
  }
  PairContext inverted_ctx{PairContext::Spec(std::move(inverted))};
  auto const& ispec = inverted_ctx.spec_as<HnnSpec>();
  DomChain ichain = dom_chain(ispec, jmax);
  std::string inote;
  if (hnn_chain_certifies(ispec, ichain, ball_radius, inote)) {
    cert.certified = true;
    cert.inverted = true;
    cert.chain = std::move(ichain);
    cert.note = "after inverting the stable letter: " + inote;
  }
  return cert;
}

FixedPointReport hnn_fixed_point_check(PairContext const& ctx, int jmax,
                                       int ball_radius) {
  if (ctx.family() != Family::Hnn) {
    throw_error(ErrorKind::FamilyMismatch,
                "the fixed-point check needs the hnn family");
  }
  auto const& spec = ctx.spec_as<HnnSpec>();
  FixedPointReport report;
  report.jmax = jmax;
  report.ball_radius = ball_radius;
  for (auto const& lambda : hnn_base_ball(spec, ball_radius)) {
    if (spec.base.is_zero(lambda)) {
      continue;
    }
    AbelianVec x = lambda;
    for (int j = 1; j <= jmax; ++j) {
      if (!hnn_in_h(spec, x)) {
        break;
      }
      x = hnn_phi(spec, x);
      if (x == lambda) {
        report.violations.push_back(FixedPointReport::Violation{lambda, j});
        break;
      }
    }
  }
  return report;
}

// ------------------------------------------------------------------
// Family-level summary
// ------------------------------------------------------------------

FamilyCertificate certify_family(PairContext const& ctx, int ball_radius,
                                 int jmax, long k_bound) {
  FamilyCertificate out;
  using Verdict = FamilyCertificate::Verdict;
  switch (ctx.family()) {
    case Family::FreeGroup: {
      out.verdict = Verdict::Certified;
      out.notes.push_back(
          "the cyclic subgroup generated by a free generator is malnormal; "
          "every exceptional set has at most one element");
      break;
    }
    case Family::Amalgam: {
      auto const& s = ctx.spec_as<AmalgamSpec>();
      if (ctx.cyclic_gamma0_word().has_value()) {
        if (amalgam_cyclic_malnormal(ctx)) {
          out.verdict = Verdict::Certified;
          out.notes.push_back(
              "Gamma_0 = <w> with w a length-2 alternating word in a free "
              "product and one syllable of order >= 3: malnormal, so every "
              "exceptional set has at most one element");
        } else {
          out.verdict = Verdict::Inconclusive;
          out.notes.push_back(
              "no structural certificate for this cyclic subgroup; scans "
              "are bounded-only");
        }
        break;
      }
      out.verdict = Verdict::Certified;
      out.notes.push_back(
          "normal-form certificate: every exceptional set is contained in "
          "an explicit set of size <= 2|Z| = " +
          std::to_string(2 * s.z_in_gamma0.size()));
      if (s.z_in_gamma0.size() > 1) {
        for (int x = 0; x < s.gamma1.order(); ++x) {
          bool in_z = false;
          for (int zi : s.z_in_gamma1) {
            if (zi == x) {
              in_z = true;
            }
          }
          if (in_z) {
            continue;
          }
          bool commutes = true;
          for (int zi : s.z_in_gamma1) {
            if (s.gamma1.mul(x, zi) != s.gamma1.mul(zi, x)) {
              commutes = false;
              break;
            }
          }
          if (commutes) {
            out.notes.push_back(
                "(*) fails: " + s.gamma1.names[x] +
                " commutes with Z, so its conjugate of Gamma_0 meets "
                "Gamma_0 in all of Z");
            break;
          }
        }
      }
      break;
    }
    case Family::Hnn: {
      out.hnn = hnn_malnormal_certificate(ctx, ball_radius, jmax);
      out.hnn_fixed_points = hnn_fixed_point_check(ctx, jmax, ball_radius * 4);
      if (out.hnn->certified) {
        out.verdict = Verdict::Certified;
        out.notes.push_back("Gamma_0 = <t> is malnormal: " + out.hnn->note);
      } else {
        out.verdict = Verdict::Inconclusive;
        out.notes.push_back(out.hnn->note);
      }
      if (!out.hnn_fixed_points->violations.empty()) {
        auto const& v = out.hnn_fixed_points->violations.front();
        out.notes.push_back(
            "phi^" + std::to_string(v.j) + " fixes " +
            ctx.spec_as<HnnSpec>().base.to_word(v.h) +
            "; the fixed-point-free route is unavailable");
      }
      break;
    }
    case Family::Semidirect: {
      auto const& s = ctx.spec_as<SemidirectSpec>();
      bool zero_det = false;
      for (long k = 1; k <= 12 && !zero_det; ++k) {
        for (long sign : {1L, -1L}) {
          IntMatrix p = s.matrix.power(Int(sign * k));
          for (int i = 0; i < s.dim; ++i) {
            p.at(i, i) -= 1;
          }
          Int d = p.det();
          if (d == 0) {
            // a fixed vector of g^k makes E((v,0), (v,0)^{-1}) infinite
            std::vector<std::vector<Int>> cols;
            for (int j = 0; j < s.dim; ++j) {
              std::vector<Int> col(s.dim);
              for (int i = 0; i < s.dim; ++i) {
                col[i] = p.at(i, j);
              }
              cols.push_back(std::move(col));
            }
            AbelianLattice by_cols(s.dim, cols);
            std::string witness = "g^" + std::to_string(sign * k) +
                                  " has a nontrivial fixed vector";
            if (!by_cols.kernel().empty()) {
              witness += " (e.g. " +
                         [&] {
                           std::string w;
                           for (auto const& c : by_cols.kernel().front()) {
                             w += (w.empty() ? "" : ",") + c.str();
                           }
                           return w;
                         }() +
                         ")";
            }
            out.notes.push_back(witness +
                                "; conjugation by it fixes infinitely many "
                                "powers of t, so the pair fails (ST)");
            zero_det = true;
            break;
          }
        }
      }
      if (zero_det) {
        out.verdict = Verdict::Refuted;
        break;
      }
      out.notes.push_back(
          "det(g^k - 1) is nonzero for 1 <= |k| <= 12 (exact)");
      Int trace(0);
      for (int i = 0; i < s.dim; ++i) {
        trace += s.matrix.at(i, i);
      }
      if (s.dim == 2 && (trace >= 3 || trace <= -3)) {
        out.verdict = Verdict::Certified;
        out.notes.push_back(
            "2x2 action with |trace| >= 3: orbits escape every box, so the "
            "constructed exceptional sets are complete");
        // exercise the construction once so that inconsistencies surface
        std::vector<Element> probe{
            ctx.canonicalize(ctx.spec_as<SemidirectSpec>().names[0])};
        auto cert = semidirect_st_certificate(ctx, probe, k_bound);
        if (!cert.certified) {
          out.verdict = Verdict::Inconclusive;
          out.notes.push_back(cert.note);
        }
      } else {
        out.verdict = Verdict::Inconclusive;
        out.notes.push_back(
            "no escape certificate for this matrix class; scans are "
            "bounded-only");
      }
      break;
    }
    case Family::RationalTriangular2: {
      out.verdict = Verdict::Inconclusive;
      out.notes.push_back(
          "no structural certificate is available for Gamma(n); scans are "
          "bounded-only");
      break;
    }
    case Family::RationalTriangular3: {
      Element u = ctx.make_tri3(Rat(1), Rat(1), Rat(0), Rat(1));
      auto family = tri3_infinite_family(ctx, u, ctx.inv(u));
      if (family.has_value()) {
        out.verdict = Verdict::Refuted;
        out.notes.push_back(
            "conjugation by the y-unipotent fixes the whole diag(1,f,1) "
            "family: " +
            *family);
      } else {
        out.verdict = Verdict::Inconclusive;
        out.notes.push_back("expected refutation identity did not verify");
      }
      break;
    }
    case Family::FreeProduct: {
      auto const& s = ctx.spec_as<FreeProductSpec>();
      FamilyCertificate inner =
          certify_family(*s.inner, ball_radius, jmax, k_bound);
      out.verdict = inner.verdict;
      out.notes.push_back(
          "free product with a finite group preserves the inner verdict on "
          "lifted sets");
      for (auto const& n : inner.notes) {
        out.notes.push_back("inner pair: " + n);
      }
      break;
    }
  }
  return out;
}

}  // namespace pairmix
