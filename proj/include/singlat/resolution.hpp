#pragma once

// Resolution data for the two singularity families handled here: a single
// elliptic curve of self-intersection -d, or a cycle of rational curves with
// self-intersections -d_i.  Provides the exceptional intersection lattice
// with its adjunction characteristic vector, the numerical invariants of the
// singularity, the homology of the link, and the text encoding used by the
// command line tool.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "singlat/abelian.hpp"
#include "singlat/lattice.hpp"
#include "singlat/matrix.hpp"
#include "singlat/numeric.hpp"
#include "singlat/quadratic.hpp"

namespace singlat {

enum class GraphKind { simple_elliptic, cusp_cycle };

class ResolutionGraph {
 public:
  static ResolutionGraph simple_elliptic(Int d) {
    if (d < 1) throw usage_error("degree must be at least 1");
    ResolutionGraph g;
    g.kind_ = GraphKind::simple_elliptic;
    g.d_ = std::move(d);
    return g;
  }

  static ResolutionGraph cusp_cycle(std::vector<Int> seq) {
    if (seq.empty()) throw usage_error("cycle must have at least one entry");
    for (const Int& d : seq)
      if (d < 1) throw usage_error("cycle entries must be at least 1");
    ResolutionGraph g;
    g.kind_ = GraphKind::cusp_cycle;
    g.seq_ = std::move(seq);
    return g;
  }

  GraphKind kind() const { return kind_; }

  const Int& degree() const {
    if (kind_ != GraphKind::simple_elliptic)
      throw usage_error("degree() on a cusp cycle");
    return d_;
  }

  const std::vector<Int>& cycle() const {
    if (kind_ != GraphKind::cusp_cycle)
      throw usage_error("cycle() on a simple elliptic graph");
    return seq_;
  }

  std::size_t curve_count() const {
    return kind_ == GraphKind::simple_elliptic ? 1 : seq_.size();
  }

  friend bool operator==(const ResolutionGraph&, const ResolutionGraph&) = default;

 private:
  ResolutionGraph() = default;

  GraphKind kind_ = GraphKind::simple_elliptic;
  Int d_ = 0;
  std::vector<Int> seq_;
};

// E_i . E_j.  A cycle of length two meets in two points, so the off-diagonal
// entry is 2; length one is a rational curve with one node.
inline IntMatrix intersection_gram(const ResolutionGraph& g) {
  if (g.kind() == GraphKind::simple_elliptic) return IntMatrix{{-g.degree()}};
  const std::vector<Int>& d = g.cycle();
  const std::size_t r = d.size();
  IntMatrix m(r, r);
  for (std::size_t i = 0; i < r; ++i) m(i, i) = -d[i];
  if (r == 2) {
    m(0, 1) = 2;
    m(1, 0) = 2;
  } else if (r >= 3) {
    for (std::size_t i = 0; i < r; ++i) {
      const std::size_t j = (i + 1) % r;
      m(i, j) = 1;
      m(j, i) = 1;
    }
  }
  return m;
}

// K . E_i = 2 g_a(E_i) - 2 - E_i^2.  The elliptic curve and the nodal curve
// both have arithmetic genus one; the curves in a longer cycle are smooth
// rational.
inline std::vector<Int> adjunction_char(const ResolutionGraph& g) {
  if (g.kind() == GraphKind::simple_elliptic) return {g.degree()};
  const std::vector<Int>& d = g.cycle();
  if (d.size() == 1) return {d[0]};
  std::vector<Int> k(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) k[i] = d[i] - 2;
  return k;
}

inline bool is_valid(const ResolutionGraph& g) {
  return is_negative_definite_matrix(intersection_gram(g));
}

inline void require_valid(const ResolutionGraph& g) {
  if (!is_valid(g))
    throw not_negative_definite(
        "intersection matrix is not negative definite, so the graph is not a "
        "resolution graph (Artin's criterion)");
}

inline QuadLattice intersection_lattice(const ResolutionGraph& g) {
  require_valid(g);
  return QuadLattice(intersection_gram(g), adjunction_char(g));
}

struct ResolutionInvariants {
  Int genus;     // total genus of the exceptional curves
  Int loops;     // independent loops of the dual graph
  Int b1;        // 2 genus + loops
  Int b2;        // number of exceptional curves
  Int chi;       // topological Euler characteristic of the exceptional set
  Int k_sq;      // K . K
  Int emb_dim;   // max(3, -K.K)
  Int p;         // geometric genus; 1 for both families
  bool is_lci;
  bool smoothable_necessary;

  friend bool operator==(const ResolutionInvariants&,
                         const ResolutionInvariants&) = default;
};

inline ResolutionInvariants invariants(const ResolutionGraph& g) {
  require_valid(g);
  ResolutionInvariants out;
  out.p = 1;
  if (g.kind() == GraphKind::simple_elliptic) {
    const Int& d = g.degree();
    out.genus = 1;
    out.loops = 0;
    out.b2 = 1;
    out.chi = 0;  // one torus, no intersection points
    out.k_sq = -d;
    out.smoothable_necessary = (d <= 9);
  } else {
    const std::vector<Int>& d = g.cycle();
    const std::size_t r = d.size();
    out.genus = 0;
    out.loops = 1;
    out.b2 = Int(r);
    if (r == 1) {
      out.chi = 1;  // sphere with two points identified
      out.k_sq = -d[0];
      out.smoothable_necessary = (d[0] <= 10);
    } else {
      out.chi = Int(r);  // r spheres minus r intersection points
      Int shift = 0;
      for (const Int& di : d) shift += di - 2;
      out.k_sq = -shift;
      Int slack = 0;
      for (const Int& di : d) slack += di - 3;
      out.smoothable_necessary = (slack <= 9);
    }
  }
  out.b1 = 2 * out.genus + out.loops;
  const Int neg = -out.k_sq;
  out.emb_dim = neg < 3 ? Int(3) : neg;
  out.is_lci = (neg <= 4);
  return out;
}

struct LinkHomology {
  FinAbGroup h1;            // Z^{b1} plus the torsion below
  FinQuadFunction torsion;  // discriminant function on the torsion part

  friend bool operator==(const LinkHomology&, const LinkHomology&) = default;
};

inline LinkHomology link_homology(const ResolutionGraph& g) {
  require_valid(g);
  if (g.kind() == GraphKind::cusp_cycle && g.cycle().size() == 1)
    throw domain_error(
        "the nodal-curve lattice does not present the link torsion; use the "
        "monodromy route");
  const ResolutionInvariants inv = invariants(g);
  Dqf d = dqf(intersection_lattice(g));
  FinAbGroup h1(static_cast<std::size_t>(to_int64(inv.b1)),
                d.group.torsion_invariants());
  return LinkHomology{std::move(h1), std::move(d.form)};
}

inline bool is_numerically_gorenstein(const ResolutionGraph& g) {
  require_valid(g);
  return solve_integer(intersection_gram(g), adjunction_char(g)).has_value();
}

inline std::vector<Int> parse_cycle(const std::string& text) {
  if (text.empty()) throw usage_error("empty cycle");
  std::vector<Int> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(int_from_string(
        text.substr(start, comma == std::string::npos ? std::string::npos
                                                      : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

inline std::string cycle_string(const std::vector<Int>& seq) {
  std::string out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) out += ',';
    out += seq[i].str();
  }
  return out;
}

inline std::string graph_encoding(const ResolutionGraph& g) {
  if (g.kind() == GraphKind::simple_elliptic)
    return "elliptic:d=" + g.degree().str();
  return "cusp:" + cycle_string(g.cycle());
}

inline ResolutionGraph parse_graph(const std::string& s) {
  const std::string elliptic = "elliptic:d=";
  const std::string cusp = "cusp:";
  if (s.rfind(elliptic, 0) == 0)
    return ResolutionGraph::simple_elliptic(int_from_string(s.substr(elliptic.size())));
  if (s.rfind(cusp, 0) == 0)
    return ResolutionGraph::cusp_cycle(parse_cycle(s.substr(cusp.size())));
  throw usage_error("unrecognized graph encoding: " + s);
}

}  // namespace singlat
