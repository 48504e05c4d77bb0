#pragma once

// Lifting classification for smoothings of the two families: the Milnor
// numbers of a smoothing, the Euler-characteristic equality a finite cover
// must satisfy, and the lifting verdict with its supporting isotropic
// subgroup data.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "singlat/cusp.hpp"
#include "singlat/numeric.hpp"
#include "singlat/quadratic.hpp"
#include "singlat/resolution.hpp"

namespace singlat {

struct MilnorInvariants {
  Int mu0;
  Int mu_plus;
  Int mu_minus;

  friend bool operator==(const MilnorInvariants&, const MilnorInvariants&) = default;
};

// mu0 = b1 of the resolution, mu+ = 2p - mu0, mu- = 10p + K^2 - b1 + b2.
// Defined only when the necessary smoothability bound holds; mu- would be
// negative otherwise.
inline MilnorInvariants milnor_invariants(const ResolutionGraph& g) {
  const ResolutionInvariants inv = invariants(g);
  if (!inv.smoothable_necessary)
    throw domain_error("not smoothable: Milnor fiber invariants are undefined");
  MilnorInvariants m;
  m.mu0 = inv.b1;
  m.mu_plus = 2 * inv.p - inv.b1;
  m.mu_minus = 10 * inv.p + inv.k_sq - inv.b1 + inv.b2;
  return m;
}

// chi + K^2 + 12: an n-fold cover multiplies this quantity by n.
inline Int permissibility_lhs(const ResolutionGraph& g) {
  const ResolutionInvariants inv = invariants(g);
  return inv.chi + inv.k_sq + 12;
}

inline bool check_cover_permissible(const ResolutionGraph& x,
                                    const ResolutionGraph& y, const Int& n) {
  if (n < 1) throw usage_error("cover degree must be at least 1");
  return n * permissibility_lhs(x) == permissibility_lhs(y);
}

namespace detail {

inline Int pow_by(const Int& base, const Int& exp) {
  Int out = 1;
  for (long long e = to_int64(exp); e > 0; --e) out *= base;
  return out;
}

}  // namespace detail

struct SmoothingDatum {
  Subgroup I;
  Subgroup I_perp;
  FinQuadFunction induced;  // the form on I_perp / I
  Int cover_group_order;    // |torsion / I_perp|
  Int component_count;      // |I|^mu0
  bool permissible;
  std::string note;

  friend bool operator==(const SmoothingDatum&, const SmoothingDatum&) = default;
};

enum class Lifting { trivial, cover, none, not_smoothable };

struct CoverInfo {
  Int group_order;
  ResolutionGraph cover;

  friend bool operator==(const CoverInfo&, const CoverInfo&) = default;
};

struct LiftingReport {
  LiftingReport(ResolutionGraph g, ResolutionInvariants i)
      : graph(std::move(g)), inv(std::move(i)) {}

  ResolutionGraph graph;
  ResolutionInvariants inv;
  std::optional<MilnorInvariants> milnor;  // absent when not smoothable
  std::optional<LinkHomology> link;        // absent for single-entry cycles
  std::vector<SmoothingDatum> data;
  Lifting lifting = Lifting::none;
  std::optional<CoverInfo> cover;          // present exactly when lifting is cover
  std::optional<Int> total_components;     // empty means unknown
  std::vector<std::string> notes;

  friend bool operator==(const LiftingReport&, const LiftingReport&) = default;
};

inline Int count_components(const ResolutionGraph& g,
                            const std::vector<Subgroup>& permissible) {
  const MilnorInvariants mu = milnor_invariants(g);
  Int total = 0;
  for (const Subgroup& i : permissible)
    total += detail::pow_by(i.order(), mu.mu0);
  return total;
}

inline LiftingReport classify_elliptic(const Int& d) {
  if (d < 1) throw usage_error("degree must be at least 1");
  const ResolutionGraph g = ResolutionGraph::simple_elliptic(d);
  LiftingReport r(g, invariants(g));
  if (!r.inv.smoothable_necessary) {
    r.lifting = Lifting::not_smoothable;
    r.total_components = 0;
    r.notes.push_back("degree " + d.str() + " exceeds 9: no smoothing exists");
    return r;
  }
  const MilnorInvariants mu = milnor_invariants(g);
  r.milnor = mu;
  r.link = link_homology(g);
  const FinQuadFunction& q = r.link->torsion;
  const Int torsion = q.group().torsion_order();
  Int total = 0;
  std::optional<CoverInfo> found;
  for (const Subgroup& I : isotropic_subgroups(q)) {
    const Subgroup ip = perp(q, I);
    const Int n = torsion / ip.order();
    SmoothingDatum datum{I,
                         ip,
                         induced_form(q, I),
                         n,
                         detail::pow_by(I.order(), mu.mu0),
                         false,
                         ""};
    if (I.order() == 1) {
      datum.permissible = mu.mu_minus > 0 || q.group().is_trivial();
      if (!datum.permissible)
        datum.note = "mu- = 0 with a nontrivial discriminant forces I = I-perp";
    } else {
      const Int d_y = 12 - n * (12 - d);
      bool ok = d_y >= 1 &&
                check_cover_permissible(
                    g, ResolutionGraph::simple_elliptic(d_y), n) &&
                (mu.mu_minus != 0 || ip == I);
      datum.permissible = ok;
      if (ok) {
        datum.note = "degree-" + n.str() + " cover of degree " + d_y.str();
        if (d_y <= 4 && !found)
          found = CoverInfo{n, ResolutionGraph::simple_elliptic(d_y)};
      }
    }
    if (datum.permissible) total += datum.component_count;
    r.data.push_back(std::move(datum));
  }
  r.total_components = total;
  if (r.inv.is_lci) {
    r.lifting = Lifting::trivial;
  } else if (found) {
    r.lifting = Lifting::cover;
    r.cover = found;
    r.notes.push_back("degree convention: pi_* pi^!(x) = n x with n = " +
                      found->group_order.str());
    if (found->group_order == 2)
      r.notes.push_back(
          "the covering group H1(L)/I-perp has order 2; an alternative "
          "reading giving order 4 contradicts the defining exact sequence "
          "and is not used");
  } else {
    r.lifting = Lifting::none;
    r.notes.push_back("smoothable, but no permissible isotropic subgroup "
                      "reaches an lci cover");
  }
  if (d <= 7)
    r.notes.push_back(
        "component counts follow |I|^mu0; realization of each permissible "
        "subgroup by an actual component is certified only for degrees 8 "
        "and 9");
  return r;
}

inline LiftingReport classify_cusp(const std::vector<Int>& seq) {
  const ResolutionGraph g = ResolutionGraph::cusp_cycle(seq);
  require_valid(g);
  const CuspMonodromy m = monodromy(seq);
  if (m.t < 3)
    throw domain_error("degenerate cusp: monodromy trace below 3");
  LiftingReport r(g, invariants(g));
  if (seq.size() >= 2) {
    r.link = link_homology(g);
    const FinQuadFunction& q = r.link->torsion;
    for (const Subgroup& I : isotropic_subgroups(q)) {
      if (I.order() == 1) continue;
      const Subgroup ip = perp(q, I);
      r.data.push_back(SmoothingDatum{
          I, ip, induced_form(q, I),
          q.group().torsion_order() / ip.order(), I.order(), false,
          "candidate only: the cover cycle for this subgroup is not "
          "determined"});
    }
  }
  if (!r.inv.smoothable_necessary) {
    r.lifting = Lifting::not_smoothable;
    r.total_components = 0;
    r.notes.push_back("no smoothing exists: mu- would be negative");
    return r;
  }
  r.milnor = milnor_invariants(g);
  if (r.inv.is_lci) {
    r.lifting = Lifting::trivial;
    return r;
  }
  if (r.inv.emb_dim <= 7) {
    r.lifting = Lifting::none;
    r.notes.push_back("emb_dim = " + r.inv.emb_dim.str() +
                      " <= 7 forces pi_1(M) trivial; no nontrivial cover "
                      "can arise");
    return r;
  }
  const LciCover cov = lci_cover(seq);
  const ResolutionGraph cover_graph = ResolutionGraph::cusp_cycle(cov.cover_seq);
  const bool equality_ok =
      check_cover_permissible(g, cover_graph, cov.group_order);
  const bool pi1_ok = r.inv.emb_dim >= 9 ||
                      (r.inv.emb_dim == 8 && cov.group_order <= 2);
  if (!cov.a_nonneg)
    r.notes.push_back(
        "monodromy entry a is negative; the cyclic cover is taken through "
        "the dual cycle and the group-order claim is conditional");
  if (equality_ok && pi1_ok) {
    r.lifting = Lifting::cover;
    r.cover = CoverInfo{cov.group_order, cover_graph};
    r.notes.push_back("degree convention: pi_* pi^!(x) = n x with n = " +
                      cov.group_order.str());
  } else {
    r.lifting = Lifting::none;
    if (!equality_ok)
      r.notes.push_back(
          "the Euler-characteristic equality fails for the degree-" +
          cov.group_order.str() + " cover by the cycle " +
          cycle_string(cov.cover_seq));
    if (!pi1_ok)
      r.notes.push_back("emb_dim = " + r.inv.emb_dim.str() +
                        " admits a cover group of order at most 2, but the "
                        "cyclic cover has order " + cov.group_order.str());
  }
  return r;
}

// Hypothesis-recording stub for quotients asserted to satisfy
// pi_1(M) = H1(L): no cycle computation is attempted, the assertion is
// recorded together with the universal-abelian-cover route.
struct QuotientHypothesis {
  FinAbGroup h1;
  std::string note;
};

inline QuotientHypothesis lifting_by_hypothesis(FinAbGroup h1) {
  if (!h1.is_finite())
    throw usage_error("the hypothesis route needs a finite H1");
  return QuotientHypothesis{
      std::move(h1),
      "assuming pi_1(M) = H1(L), the universal abelian cover carries the "
      "lifting; recorded as a hypothesis, no cycle is computed"};
}

}  // namespace singlat
