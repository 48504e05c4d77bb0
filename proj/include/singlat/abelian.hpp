#pragma once

// Finitely generated abelian groups in invariant-factor form, their elements,
// subgroups (canonical element sets), exhaustive subgroup enumeration, and
// quotient structure with explicit generator lifts.

#include <algorithm>
#include <cstddef>
#include <queue>
#include <set>
#include <utility>
#include <vector>

#include "singlat/matrix.hpp"
#include "singlat/numeric.hpp"

namespace singlat {

// Exhaustive element/subgroup enumeration refuses groups larger than this.
inline const Int kEnumerationGuard = Int(1000000);

class FinAbGroup {
 public:
  FinAbGroup() = default;  // trivial group

  FinAbGroup(std::size_t free_rank, std::vector<Int> torsion)
      : free_rank_(free_rank), torsion_(std::move(torsion)) {
    for (std::size_t i = 0; i < torsion_.size(); ++i) {
      if (torsion_[i] < 2)
        throw usage_error("torsion invariant below 2");
      if (i + 1 < torsion_.size() && torsion_[i + 1] % torsion_[i] != 0)
        throw usage_error("torsion invariants must form a divisibility chain");
    }
  }

  // Z^n / (rels * Z^m), rels an n-row matrix of relation columns.
  static FinAbGroup from_presentation(std::size_t n, const IntMatrix& rels) {
    if (rels.rows() != n) throw usage_error("relation matrix must have n rows");
    std::vector<Int> d = snf(rels).d;
    std::vector<Int> torsion;
    std::size_t zero_count = 0;
    for (const Int& x : d) {
      if (x == 0)
        ++zero_count;
      else if (x > 1)
        torsion.push_back(x);
    }
    std::size_t rank = n - (d.size() - zero_count);
    return FinAbGroup(rank, std::move(torsion));
  }

  std::size_t free_rank() const { return free_rank_; }
  const std::vector<Int>& torsion_invariants() const { return torsion_; }
  std::size_t torsion_count() const { return torsion_.size(); }
  Int torsion_order() const {
    Int o = 1;
    for (const Int& d : torsion_) o *= d;
    return o;
  }
  bool is_finite() const { return free_rank_ == 0; }
  bool is_trivial() const { return free_rank_ == 0 && torsion_.empty(); }

  bool operator==(const FinAbGroup&) const = default;

 private:
  std::size_t free_rank_ = 0;
  std::vector<Int> torsion_;
};

struct GroupElement {
  FinAbGroup group;
  std::vector<Int> free_coords;
  std::vector<Int> torsion_coords;  // each reduced into [0, d_i)

  bool operator==(const GroupElement&) const = default;
  bool is_zero() const {
    for (const Int& c : free_coords)
      if (c != 0) return false;
    for (const Int& c : torsion_coords)
      if (c != 0) return false;
    return true;
  }
};

namespace detail {
inline Int mod_into(const Int& c, const Int& d) {
  Int r = c % d;
  if (r < 0) r += d;
  return r;
}
// lexicographic order on (free, torsion) coordinates
inline bool coords_less(const GroupElement& a, const GroupElement& b) {
  if (a.free_coords != b.free_coords)
    return std::lexicographical_compare(a.free_coords.begin(), a.free_coords.end(),
                                        b.free_coords.begin(), b.free_coords.end());
  return std::lexicographical_compare(
      a.torsion_coords.begin(), a.torsion_coords.end(),
      b.torsion_coords.begin(), b.torsion_coords.end());
}
}  // namespace detail

inline GroupElement make_element(const FinAbGroup& g, std::vector<Int> free,
                                 std::vector<Int> torsion) {
  if (free.size() != g.free_rank() || torsion.size() != g.torsion_count())
    throw usage_error("element coordinate count does not match the group");
  for (std::size_t i = 0; i < torsion.size(); ++i)
    torsion[i] = detail::mod_into(torsion[i], g.torsion_invariants()[i]);
  return GroupElement{g, std::move(free), std::move(torsion)};
}

inline GroupElement torsion_element(const FinAbGroup& g, std::vector<Int> torsion) {
  return make_element(g, std::vector<Int>(g.free_rank(), 0), std::move(torsion));
}

inline GroupElement zero_element(const FinAbGroup& g) {
  return GroupElement{g, std::vector<Int>(g.free_rank(), 0),
                      std::vector<Int>(g.torsion_count(), 0)};
}

inline void require_same_group(const GroupElement& x, const GroupElement& y) {
  if (!(x.group == y.group))
    throw usage_error("elements belong to different groups");
}

inline GroupElement add(const GroupElement& x, const GroupElement& y) {
  require_same_group(x, y);
  GroupElement z = x;
  for (std::size_t i = 0; i < z.free_coords.size(); ++i)
    z.free_coords[i] += y.free_coords[i];
  for (std::size_t i = 0; i < z.torsion_coords.size(); ++i)
    z.torsion_coords[i] = detail::mod_into(
        z.torsion_coords[i] + y.torsion_coords[i],
        x.group.torsion_invariants()[i]);
  return z;
}

inline GroupElement negate(const GroupElement& x) {
  GroupElement z = x;
  for (auto& c : z.free_coords) c = -c;
  for (std::size_t i = 0; i < z.torsion_coords.size(); ++i)
    z.torsion_coords[i] = detail::mod_into(-z.torsion_coords[i],
                                           x.group.torsion_invariants()[i]);
  return z;
}

inline GroupElement scale(const Int& n, const GroupElement& x) {
  GroupElement z = x;
  for (auto& c : z.free_coords) c *= n;
  for (std::size_t i = 0; i < z.torsion_coords.size(); ++i)
    z.torsion_coords[i] = detail::mod_into(n * z.torsion_coords[i],
                                           x.group.torsion_invariants()[i]);
  return z;
}

inline Int element_order(const GroupElement& x) {
  for (const Int& c : x.free_coords)
    if (c != 0) throw domain_error("element of infinite order");
  Int o = 1;
  for (std::size_t i = 0; i < x.torsion_coords.size(); ++i) {
    const Int& d = x.group.torsion_invariants()[i];
    Int k = d / gcd(x.torsion_coords[i], d);  // gcd(0, d) = d
    o = o / gcd(o, k) * k;                    // lcm
  }
  return o;
}

inline void require_enumerable(const FinAbGroup& g) {
  if (!g.is_finite())
    throw usage_error("enumeration requires a finite group");
  if (g.torsion_order() > kEnumerationGuard)
    throw bound_error("group order exceeds the enumeration guard (10^6)");
}

// All elements, torsion coordinates in odometer (lexicographic) order.
inline std::vector<GroupElement> all_elements(const FinAbGroup& g) {
  require_enumerable(g);
  std::vector<GroupElement> out;
  std::vector<Int> c(g.torsion_count(), 0);
  for (;;) {
    out.push_back(GroupElement{g, {}, c});
    std::size_t i = g.torsion_count();
    while (i-- > 0) {
      if (++c[i] < g.torsion_invariants()[i]) break;
      c[i] = 0;
      if (i == 0) return out;
    }
    if (g.torsion_count() == 0) return out;
  }
}

class Subgroup {
 public:
  static Subgroup from_generators(const FinAbGroup& ambient,
                                  std::vector<GroupElement> gens) {
    check_ambient(ambient, gens);
    std::set<std::vector<Int>> seen;
    std::queue<std::vector<Int>> work;
    seen.insert(std::vector<Int>(ambient.torsion_count(), 0));
    work.push(*seen.begin());
    while (!work.empty()) {
      GroupElement cur{ambient, {}, work.front()};
      work.pop();
      for (const GroupElement& g : gens) {
        std::vector<Int> next = add(cur, g).torsion_coords;
        if (seen.insert(next).second) work.push(std::move(next));
      }
    }
    return Subgroup(ambient, std::move(gens), set_to_elements(ambient, seen));
  }

  // Validates that the given set really is a subgroup.
  static Subgroup from_elements(const FinAbGroup& ambient,
                                std::vector<GroupElement> elems) {
    check_ambient(ambient, elems);
    std::set<std::vector<Int>> seen;
    for (const GroupElement& e : elems) seen.insert(e.torsion_coords);
    if (!seen.count(std::vector<Int>(ambient.torsion_count(), 0)))
      throw usage_error("element set lacks the identity");
    for (const GroupElement& a : elems)
      for (const GroupElement& b : elems)
        if (!seen.count(add(a, b).torsion_coords))
          throw usage_error("element set is not closed under addition");
    return from_closed_set(ambient, std::move(seen));
  }

  // Precondition: `seen` is already a subgroup's element set.
  static Subgroup from_closed_set(const FinAbGroup& ambient,
                                  std::set<std::vector<Int>> seen) {
    std::vector<GroupElement> elems = set_to_elements(ambient, seen);
    // greedy minimal generating set, deterministic via the sorted order
    std::vector<GroupElement> gens;
    std::set<std::vector<Int>> span;
    span.insert(std::vector<Int>(ambient.torsion_count(), 0));
    for (const GroupElement& e : elems) {
      if (span.count(e.torsion_coords)) continue;
      gens.push_back(e);
      // extend span by all multiples of e added to current span
      std::vector<std::vector<Int>> base(span.begin(), span.end());
      GroupElement step = zero_element(ambient);
      Int ord = element_order(e);
      for (Int k = 1; k < ord; ++k) {
        step = add(step, e);
        for (const auto& s : base)
          span.insert(add(GroupElement{ambient, {}, s}, step).torsion_coords);
      }
    }
    return Subgroup(ambient, std::move(gens), std::move(elems));
  }

  static Subgroup trivial(const FinAbGroup& ambient) {
    return from_generators(ambient, {});
  }

  const FinAbGroup& ambient() const { return ambient_; }
  const std::vector<GroupElement>& generators() const { return gens_; }
  const std::vector<GroupElement>& elements() const { return elems_; }
  Int order() const { return Int(elems_.size()); }

  bool contains(const GroupElement& x) const {
    if (!(x.group == ambient_)) return false;
    return std::binary_search(elems_.begin(), elems_.end(), x,
                              detail::coords_less);
  }

  // Invariant factors (each >= 2) of the subgroup as an abstract group:
  // the preimage lattice of the subgroup in Z^m, modulo diag(d) Z^m.
  std::vector<Int> abstract_type() const;

  bool operator==(const Subgroup& o) const {
    return ambient_ == o.ambient_ && elems_ == o.elems_;
  }
  // deterministic ordering: by order, then by the sorted element list
  bool operator<(const Subgroup& o) const {
    if (elems_.size() != o.elems_.size()) return elems_.size() < o.elems_.size();
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      if (elems_[i].torsion_coords != o.elems_[i].torsion_coords)
        return detail::coords_less(elems_[i], o.elems_[i]);
    }
    return false;
  }

 private:
  Subgroup(FinAbGroup ambient, std::vector<GroupElement> gens,
           std::vector<GroupElement> elems)
      : ambient_(std::move(ambient)), gens_(std::move(gens)),
        elems_(std::move(elems)) {}

  static void check_ambient(const FinAbGroup& ambient,
                            const std::vector<GroupElement>& xs) {
    if (!ambient.is_finite())
      throw usage_error("subgroups are supported in the finite part only");
    for (const GroupElement& x : xs)
      if (!(x.group == ambient))
        throw usage_error("generator from a different group");
  }

  static std::vector<GroupElement> set_to_elements(
      const FinAbGroup& ambient, const std::set<std::vector<Int>>& seen) {
    std::vector<GroupElement> out;
    out.reserve(seen.size());
    for (const auto& c : seen) out.push_back(GroupElement{ambient, {}, c});
    std::sort(out.begin(), out.end(), detail::coords_less);
    return out;
  }

  FinAbGroup ambient_;
  std::vector<GroupElement> gens_;
  std::vector<GroupElement> elems_;
};

// Subgroup generated by s together with x: the union of cosets s + k x.
inline Subgroup join(const Subgroup& s, const GroupElement& x) {
  if (!(x.group == s.ambient()))
    throw usage_error("join element from a different group");
  std::set<std::vector<Int>> seen;
  Int ord = element_order(x);
  GroupElement shift = zero_element(s.ambient());
  for (Int k = 0; k < ord; ++k) {
    for (const GroupElement& e : s.elements())
      seen.insert(add(e, shift).torsion_coords);
    shift = add(shift, x);
  }
  return Subgroup::from_closed_set(s.ambient(), std::move(seen));
}

// Exhaustive subgroup enumeration: all cyclic subgroups, closed under join.
// Sorted by (order, element set) — the trivial subgroup comes first.
inline std::vector<Subgroup> all_subgroups(const FinAbGroup& g) {
  require_enumerable(g);
  std::vector<GroupElement> elems = all_elements(g);
  std::vector<Subgroup> cyclic;
  for (const GroupElement& e : elems) {
    Subgroup c = Subgroup::from_generators(g, {e});
    if (std::find(cyclic.begin(), cyclic.end(), c) == cyclic.end())
      cyclic.push_back(std::move(c));
  }
  std::vector<Subgroup> seen;
  std::queue<std::size_t> work;
  seen.push_back(Subgroup::trivial(g));
  work.push(0);
  while (!work.empty()) {
    Subgroup cur = seen[work.front()];
    work.pop();
    for (const Subgroup& c : cyclic) {
      Subgroup next = cur;
      for (const GroupElement& gen : c.generators()) next = join(next, gen);
      if (std::find(seen.begin(), seen.end(), next) == seen.end()) {
        seen.push_back(next);
        work.push(seen.size() - 1);
      }
    }
  }
  std::sort(seen.begin(), seen.end());
  return seen;
}

// Structure of L_big / L_small for full-rank integer column bases with
// L_small contained in L_big: invariant factors (units dropped) plus lift
// columns expressing generators of each cyclic factor in ambient coordinates.
struct QuotientStructure {
  std::vector<Int> invariants;
  IntMatrix lifts;  // one column per invariant
};

inline QuotientStructure lattice_quotient(const IntMatrix& basis_big,
                                          const IntMatrix& basis_small) {
  if (basis_big.rows() != basis_small.rows() ||
      basis_big.rows() != basis_big.cols() ||
      basis_small.rows() != basis_small.cols())
    throw usage_error("lattice bases must be square and co-dimensional");
  const std::size_t m = basis_big.rows();
  RatMatrix c_rat = mul(rational_inverse(basis_big), to_rational(basis_small));
  IntMatrix c(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (!is_integral(c_rat(i, j)))
        throw usage_error("second lattice is not a sublattice of the first");
      c(i, j) = numerator(c_rat(i, j));
    }
  SnfResult s = snf(c);
  for (const Int& d : s.d)
    if (d == 0) throw usage_error("sublattice is not finite-index");
  IntMatrix p = mul(basis_big, integer_inverse(s.U));
  QuotientStructure out;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < s.d.size(); ++i)
    if (s.d[i] > 1) {
      out.invariants.push_back(s.d[i]);
      keep.push_back(i);
    }
  out.lifts = IntMatrix(m, keep.size());
  for (std::size_t j = 0; j < keep.size(); ++j)
    for (std::size_t i = 0; i < m; ++i) out.lifts(i, j) = p(i, keep[j]);
  return out;
}

inline std::vector<Int> Subgroup::abstract_type() const {
  const std::size_t m = ambient_.torsion_count();
  IntMatrix gen_cols(m, gens_.size() + m);
  for (std::size_t j = 0; j < gens_.size(); ++j)
    for (std::size_t i = 0; i < m; ++i)
      gen_cols(i, j) = gens_[j].torsion_coords[i];
  for (std::size_t i = 0; i < m; ++i)
    gen_cols(i, gens_.size() + i) = ambient_.torsion_invariants()[i];
  IntMatrix big = lattice_basis(gen_cols);
  IntMatrix small(m, m);
  for (std::size_t i = 0; i < m; ++i)
    small(i, i) = ambient_.torsion_invariants()[i];
  return lattice_quotient(big, small).invariants;
}

}  // namespace singlat
