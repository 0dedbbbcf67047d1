#ifndef PAIRMIX_CONDITIONS_HPP_
#define PAIRMIX_CONDITIONS_HPP_

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "normal_forms.hpp"
#include "pair_context.hpp"

namespace pairmix {

enum class CertificateSource {
  AmalgamFormula,         // E = Z u u1^{-1}Z (or Z u (r_l u1)^{-1}Z)
  MalnormalBound,         // gamma0 malnormal, so |E(g,h)| <= 1
  SemidirectConstruction, // E = union over C2 of gamma^{-1} E1
  DomChainEscape,         // every base element escapes Dom(phi^j)
};

char const* certificate_source_name(CertificateSource s);

//! The exceptional set was found to be infinite: a witness family plus the
//! members actually seen in the scan.
struct RefutedInfinite {
  std::string witness_family;
  std::vector<Element> witnesses;
};

//! Nothing structural applies; the listed members are exhaustive within the
//! scanned radius and that is all we claim.
struct BoundedVerified {
  int radius = 0;
};

//! A structural certificate provides a finite superset E of the whole
//! exceptional set. For the bound-type sources (MalnormalBound,
//! DomChainEscape) E lists the members found so far, and the structure
//! guarantees there is at most one in total.
struct CertifiedFinite {
  std::vector<Element> e;
  CertificateSource source;
};

// Ordered weakest-first so that variant index comparison aggregates
// conservatively.
using CertificateKind =
    std::variant<RefutedInfinite, BoundedVerified, CertifiedFinite>;

std::string certificate_kind_name(CertificateKind const& k);

//! E(g, h) = {gamma in Gamma_0 : g gamma h in Gamma_0} restricted to the
//! gamma0 ball of the given radius. members pair each gamma with the landing
//! product g gamma h.
struct ExceptionalSetReport {
  Element g;
  Element h;
  int search_radius = 0;
  std::vector<std::pair<Element, Element>> members;
  CertificateKind verdict;
};

ExceptionalSetReport exceptional_set(PairContext const& ctx, Element const& g,
                                     Element const& h, int radius);

//! First gamma in ball order with g gamma h outside Gamma_0 for all g, h in
//! C (ordered pairs, including g = h), or nullopt.
std::optional<Element> ss_witness(PairContext const& ctx,
                                  std::vector<Element> const& c, int radius,
                                  bool exclude_identity = false);

struct StCheckResult {
  std::vector<ExceptionalSetReport> pairs;  // ordered pairs of C x C
  std::vector<Element> aggregated_e;        // union of per-pair E's / members
  CertificateKind overall;                  // weakest per-pair verdict
};

StCheckResult st_check(PairContext const& ctx, std::vector<Element> const& c,
                       int radius);

struct MalnormalReport {
  int g_radius = 0;
  int gamma_radius = 0;
  struct Violation {
    Element g;
    Element gamma;
    Element product;  // g gamma g^{-1}, in Gamma_0 and nontrivial
  };
  std::vector<Violation> violations;
};

//! Exhaustive scan for (*)-violations: g outside Gamma_0 in the g-ball,
//! gamma != 1 in the gamma0-ball, g gamma g^{-1} a nontrivial element of
//! Gamma_0.
MalnormalReport malnormal_scan(PairContext const& ctx, int g_radius,
                               int gamma_radius);

//! Superset of E(g, h) read off the normal forms of g and h; applies to the
//! amalgam family with the abelian factor as distinguished subgroup.
//! |E| <= 2 |Z|.
std::vector<Element> amalgam_st_certificate(PairContext const& ctx,
                                            Element const& g,
                                            Element const& h);

struct SemidirectCertificate {
  bool certified = false;       // scan provably exhaustive
  std::vector<Int> e1;          // {k : g^k(F) cap F nonempty}
  std::vector<Element> e;       // union over gamma in C2 of gamma^{-1} E1
  std::string note;
};

//! Builds the exceptional superset E = union gamma^{-1} E1 from the escape
//! set E1 of F = C1 u C1^{-1}. Certification is restricted to 2x2 matrices
//! with |trace| >= 3 and det = +-1, where orbit norms provably escape after
//! a computable burn-in; anything else is reported inconclusive with the
//! scanned data.
SemidirectCertificate semidirect_st_certificate(PairContext const& ctx,
                                                std::vector<Element> const& c,
                                                long k_bound);

struct HnnCertificate {
  bool certified = false;
  bool inverted = false;  // certified after replacing t by t^{-1}
  DomChain chain;
  std::string note;
};

//! Malnormality of <t> via domain-chain escape: certified when every
//! nontrivial base element of the ball escapes by jmax and the escape
//! generalizes structurally (rank-1 torsion-free base with a strictly
//! descending chain, or a chain that reaches the trivial subgroup). When the
//! direct orientation fails, the check is repeated with the stable letter
//! inverted, which generates the same Gamma_0.
HnnCertificate hnn_malnormal_certificate(PairContext const& ctx,
                                         int ball_radius, int jmax);

struct FixedPointReport {
  int jmax = 0;
  int ball_radius = 0;
  struct Violation {
    AbelianVec h;
    int j;
  };
  std::vector<Violation> violations;  // phi^j(h) = h with h != 1
};

//! Scans base-ball elements h in Dom(phi^j) for phi^j(h) = h, j <= jmax.
FixedPointReport hnn_fixed_point_check(PairContext const& ctx, int jmax,
                                       int ball_radius);

//! Family-level structural summary used by the `certify` command.
struct FamilyCertificate {
  enum class Verdict { Certified, Refuted, Inconclusive };
  Verdict verdict = Verdict::Inconclusive;
  std::vector<std::string> notes;
  std::optional<HnnCertificate> hnn;
  std::optional<FixedPointReport> hnn_fixed_points;
};

char const* family_verdict_name(FamilyCertificate::Verdict v);

FamilyCertificate certify_family(PairContext const& ctx, int ball_radius = 6,
                                 int jmax = 8, long k_bound = 64);

//! Ball of base elements of an HNN context (word-length over the base
//! coordinate generators).
std::vector<AbelianVec> hnn_base_ball(HnnSpec const& spec, int radius);

}  // namespace pairmix

#endif  // PAIRMIX_CONDITIONS_HPP_
