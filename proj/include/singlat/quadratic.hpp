#pragma once

// Q/Z-valued quadratic functions on finite abelian groups: evaluation via
// generator expansion, radical, exhaustive isotropic-subgroup enumeration,
// perps, and the induced function on perp(I)/I.

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "singlat/abelian.hpp"
#include "singlat/numeric.hpp"

namespace singlat {

class FinQuadFunction {
 public:
  // q_gen[i] = q(g_i); b(i,j) = b(g_i, g_j) for the standard generators g_i.
  // Well-definedness is established here, not deferred: every b(g_i, g_j)
  // must die under multiplication by the generator orders, and q must vanish
  // at d_i * g_i when expanded through q(ax) = a q(x) + (a(a-1)/2) b(x,x).
  FinQuadFunction(FinAbGroup group, std::vector<QmodZ> q_gen, Matrix<QmodZ> b)
      : group_(std::move(group)), q_gen_(std::move(q_gen)), b_(std::move(b)) {
    if (!group_.is_finite())
      throw usage_error("quadratic functions require a finite group");
    const std::size_t m = group_.torsion_count();
    if (q_gen_.size() != m || b_.rows() != m || b_.cols() != m)
      throw usage_error("generator value count does not match the group");
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        if (!(b_(i, j) == b_(j, i)))
          throw domain_error("bilinear matrix is not symmetric");
        if (!b_(i, j).times(group_.torsion_invariants()[i]).is_zero())
          throw domain_error("bilinear value incompatible with generator order");
      }
    for (std::size_t i = 0; i < m; ++i) {
      const Int& d = group_.torsion_invariants()[i];
      QmodZ at_dg = q_gen_[i].times(d) + b_(i, i).times(d * (d - 1) / 2);
      if (!at_dg.is_zero())
        throw domain_error("quadratic value incompatible with generator order");
    }
  }

  const FinAbGroup& group() const { return group_; }
  const std::vector<QmodZ>& q_gen() const { return q_gen_; }
  const Matrix<QmodZ>& b_matrix() const { return b_; }

  bool operator==(const FinQuadFunction&) const = default;

  // q(sum c_i g_i) expanded through the polarization identities; the result
  // is independent of the expansion order.
  QmodZ evaluate(const GroupElement& x) const {
    check_member(x);
    QmodZ v;
    const std::size_t m = group_.torsion_count();
    for (std::size_t i = 0; i < m; ++i) {
      const Int& c = x.torsion_coords[i];
      v = v + q_gen_[i].times(c) + b_(i, i).times(c * (c - 1) / 2);
      for (std::size_t j = i + 1; j < m; ++j)
        v = v + b_(i, j).times(c * x.torsion_coords[j]);
    }
    return v;
  }

  QmodZ bilinear(const GroupElement& x, const GroupElement& y) const {
    check_member(x);
    check_member(y);
    QmodZ v;
    const std::size_t m = group_.torsion_count();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        v = v + b_(i, j).times(x.torsion_coords[i] * y.torsion_coords[j]);
    return v;
  }

  // linear part k(x) = 2q(x) - b(x,x); q is a quadratic form iff k vanishes.
  QmodZ linear_part(const GroupElement& x) const {
    QmodZ q = evaluate(x);
    return q + q - bilinear(x, x);
  }

  bool is_form() const {
    for (std::size_t i = 0; i < group_.torsion_count(); ++i) {
      GroupElement g = generator(i);
      if (!linear_part(g).is_zero()) return false;
    }
    return true;
  }

  GroupElement generator(std::size_t i) const {
    std::vector<Int> c(group_.torsion_count(), 0);
    c[i] = 1;
    return GroupElement{group_, {}, std::move(c)};
  }

  bool is_isotropic(const Subgroup& I) const {
    if (!(I.ambient() == group_))
      throw usage_error("subgroup of a different group");
    for (const GroupElement& e : I.elements())
      if (!evaluate(e).is_zero()) return false;
    return true;
  }

 private:
  void check_member(const GroupElement& x) const {
    if (!(x.group == group_))
      throw usage_error("element from a different group");
  }

  FinAbGroup group_;
  std::vector<QmodZ> q_gen_;
  Matrix<QmodZ> b_;
};

// {x : b(x, y) = 0 for all y} — kernel of the adjoint, tested on generators.
inline Subgroup radical(const FinQuadFunction& q) {
  std::set<std::vector<Int>> seen;
  for (const GroupElement& x : all_elements(q.group())) {
    bool in = true;
    for (std::size_t j = 0; j < q.group().torsion_count() && in; ++j)
      in = q.bilinear(x, q.generator(j)).is_zero();
    if (in) seen.insert(x.torsion_coords);
  }
  return Subgroup::from_closed_set(q.group(), std::move(seen));
}

// All subgroups I with q identically zero on I, found by closing isotropic
// cyclic subgroups under join (every subgroup of an isotropic subgroup is
// isotropic, so the restricted search is exhaustive). Sorted; {0} first.
inline std::vector<Subgroup> isotropic_subgroups(const FinQuadFunction& q) {
  require_enumerable(q.group());
  // each element's q-value is consulted many times across candidates, so
  // decide all of them once up front
  std::map<std::vector<Int>, bool> vanishes;
  for (const GroupElement& e : all_elements(q.group()))
    vanishes[e.torsion_coords] = q.evaluate(e).is_zero();
  auto isotropic = [&](const Subgroup& s) {
    for (const GroupElement& e : s.elements())
      if (!vanishes.at(e.torsion_coords)) return false;
    return true;
  };

  std::vector<Subgroup> cyclic;
  for (const GroupElement& e : all_elements(q.group())) {
    if (!vanishes.at(e.torsion_coords)) continue;
    Subgroup c = Subgroup::from_generators(q.group(), {e});
    if (!isotropic(c)) continue;
    if (std::find(cyclic.begin(), cyclic.end(), c) == cyclic.end())
      cyclic.push_back(std::move(c));
  }
  std::vector<Subgroup> seen;
  std::queue<std::size_t> work;
  seen.push_back(Subgroup::trivial(q.group()));
  work.push(0);
  while (!work.empty()) {
    Subgroup cur = seen[work.front()];
    work.pop();
    for (const Subgroup& c : cyclic) {
      Subgroup next = cur;
      for (const GroupElement& gen : c.generators()) next = join(next, gen);
      if (!isotropic(next)) continue;
      if (std::find(seen.begin(), seen.end(), next) == seen.end()) {
        seen.push_back(next);
        work.push(seen.size() - 1);
      }
    }
  }
  std::sort(seen.begin(), seen.end());
  return seen;
}

// I^perp = {x : b(x, y) = 0 for all y in I}; requires I isotropic.
inline Subgroup perp(const FinQuadFunction& q, const Subgroup& I) {
  if (!q.is_isotropic(I))
    throw domain_error("perp requires an isotropic subgroup");
  std::set<std::vector<Int>> seen;
  for (const GroupElement& x : all_elements(q.group())) {
    bool in = true;
    for (const GroupElement& g : I.generators())
      if (!q.bilinear(x, g).is_zero()) {
        in = false;
        break;
      }
    if (in) seen.insert(x.torsion_coords);
  }
  return Subgroup::from_closed_set(q.group(), std::move(seen));
}

// The induced quadratic function q_I on perp(I)/I. Generator lifts come from
// the quotient of the preimage lattices, so evaluation involves no choices;
// the constructor of the result re-verifies well-definedness.
inline FinQuadFunction induced_form(const FinQuadFunction& q, const Subgroup& I) {
  Subgroup p = perp(q, I);  // also enforces isotropy
  const std::size_t m = q.group().torsion_count();
  auto preimage_basis = [&](const Subgroup& s) {
    IntMatrix cols(m, s.generators().size() + m);
    for (std::size_t j = 0; j < s.generators().size(); ++j)
      for (std::size_t i = 0; i < m; ++i)
        cols(i, j) = s.generators()[j].torsion_coords[i];
    for (std::size_t i = 0; i < m; ++i)
      cols(i, s.generators().size() + i) = q.group().torsion_invariants()[i];
    return lattice_basis(cols);
  };
  QuotientStructure qs = lattice_quotient(preimage_basis(p), preimage_basis(I));
  FinAbGroup quotient(0, qs.invariants);
  std::vector<GroupElement> reps;
  for (std::size_t j = 0; j < qs.invariants.size(); ++j) {
    std::vector<Int> c(m);
    for (std::size_t i = 0; i < m; ++i) c[i] = qs.lifts(i, j);
    reps.push_back(torsion_element(q.group(), std::move(c)));
  }
  std::vector<QmodZ> q_gen;
  Matrix<QmodZ> b(reps.size(), reps.size());
  for (std::size_t i = 0; i < reps.size(); ++i) {
    q_gen.push_back(q.evaluate(reps[i]));
    for (std::size_t j = 0; j < reps.size(); ++j)
      b(i, j) = q.bilinear(reps[i], reps[j]);
  }
  return FinQuadFunction(std::move(quotient), std::move(q_gen), std::move(b));
}

}  // namespace singlat
