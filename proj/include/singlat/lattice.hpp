#pragma once

// Integer quadratic lattices (N, Q) with Q(x) = (B(x,x) + K(x))/2: parity
// checking, definiteness, the discriminant quadratic function on N^#/N with
// explicit dual lifts, and enumeration of Q-integral overlattices.

#include <map>
#include <queue>
#include <utility>
#include <vector>

#include "singlat/abelian.hpp"
#include "singlat/matrix.hpp"
#include "singlat/numeric.hpp"
#include "singlat/quadratic.hpp"

namespace singlat {

inline const Int kDefaultOverlatticeBound = Int(10000);

class QuadLattice {
 public:
  QuadLattice(IntMatrix gram, std::vector<Int> char_form)
      : gram_(std::move(gram)), k_(std::move(char_form)) {
    if (!is_symmetric(gram_)) throw usage_error("gram matrix must be symmetric");
    if (k_.size() != gram_.rows())
      throw usage_error("characteristic vector length must match the rank");
    for (std::size_t i = 0; i < k_.size(); ++i)
      if ((gram_(i, i) + k_[i]) % 2 != 0)
        throw domain_error(
            "parity violated: B(e_i,e_i) + K(e_i) must be even for every i");
  }

  const IntMatrix& gram() const { return gram_; }
  const std::vector<Int>& char_form() const { return k_; }
  std::size_t rank() const { return gram_.rows(); }

  // Q extended to N tensor Q; integral on N itself by the parity constraint.
  Rational q_rational(const std::vector<Rational>& x) const {
    if (x.size() != rank()) throw usage_error("vector length must match rank");
    Rational s = 0;
    for (std::size_t i = 0; i < rank(); ++i) {
      s += Rational(k_[i]) * x[i];
      for (std::size_t j = 0; j < rank(); ++j)
        s += x[i] * Rational(gram_(i, j)) * x[j];
    }
    return s / 2;
  }

  Int q_integer(const std::vector<Int>& x) const {
    std::vector<Rational> rx(x.begin(), x.end());
    Rational v = q_rational(rx);
    return numerator(v);  // denominator is 1 by parity
  }

  bool operator==(const QuadLattice&) const = default;

 private:
  IntMatrix gram_;
  std::vector<Int> k_;
};

inline bool is_negative_definite(const QuadLattice& l) {
  return is_negative_definite_matrix(l.gram());
}

inline bool is_even_form(const QuadLattice& l) {
  for (const Int& k : l.char_form())
    if (k != 0) return false;
  for (std::size_t i = 0; i < l.rank(); ++i)
    if (l.gram()(i, i) % 2 != 0) return false;
  return true;
}

// The discriminant quadratic function on N^#/N, with the rational dual-vector
// lift of each group generator kept alongside (columns of `lifts`), so that
// evaluation and overlattice construction involve no further choices.
struct Dqf {
  FinAbGroup group;
  FinQuadFunction form;
  RatMatrix lifts;  // rank x (number of generators)
};

inline Dqf dqf(const QuadLattice& l) {
  const std::size_t n = l.rank();
  SnfResult s = snf(l.gram());
  for (const Int& d : s.d)
    if (d == 0) throw singular_error("discriminant of a singular lattice");

  // N^#/N is Z^n / (gram Z^n); with U B V = D the i-th cyclic factor Z_{d_i}
  // is generated by the class of U^{-1} e_i, whose dual-vector lift is
  // B^{-1} U^{-1} e_i = V D^{-1} e_i, i.e. column i of V divided by d_i.
  std::vector<std::size_t> keep;
  std::vector<Int> invariants;
  for (std::size_t i = 0; i < s.d.size(); ++i)
    if (s.d[i] > 1) {
      keep.push_back(i);
      invariants.push_back(s.d[i]);
    }
  FinAbGroup group(0, invariants);

  RatMatrix lifts(n, keep.size());
  for (std::size_t j = 0; j < keep.size(); ++j)
    for (std::size_t i = 0; i < n; ++i)
      lifts(i, j) = Rational(s.V(i, keep[j]), s.d[keep[j]]);

  std::vector<QmodZ> q_gen;
  Matrix<QmodZ> b(keep.size(), keep.size());
  for (std::size_t j = 0; j < keep.size(); ++j) {
    std::vector<Rational> xj(n);
    for (std::size_t i = 0; i < n; ++i) xj[i] = lifts(i, j);
    q_gen.push_back(QmodZ(l.q_rational(xj)));
    for (std::size_t k = 0; k < keep.size(); ++k) {
      Rational pair = 0;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t c = 0; c < n; ++c)
          pair += lifts(a, j) * Rational(l.gram()(a, c)) * lifts(c, k);
      b(j, k) = QmodZ(pair);
    }
  }
  return Dqf{group, FinQuadFunction(group, std::move(q_gen), std::move(b)),
             std::move(lifts)};
}

// One intermediate lattice N <= N1 <= N^# on which Q stays Z-valued: a
// rational column basis in the original coordinates, and its image in N^#/N.
struct Overlattice {
  RatMatrix basis;
  Subgroup image;
};

// Rational dual-vector lift of a group element through the dqf lift columns.
inline std::vector<Rational> lift_element(const Dqf& d, const GroupElement& x) {
  std::vector<Rational> out(d.lifts.rows());
  for (std::size_t j = 0; j < d.lifts.cols(); ++j)
    for (std::size_t i = 0; i < d.lifts.rows(); ++i)
      out[i] += Rational(x.torsion_coords[j]) * d.lifts(i, j);
  return out;
}

// All overlattices, found by lifting subgroups of N^#/N and testing
// Q-integrality elementwise (Q(x+v) - Q(x) is an integer for v in N, so the
// verdict does not depend on the chosen representatives). Candidates are
// grown by joining the cyclic subgroups that pass: any subgroup on which Q
// lifts integrally is the join of its own cyclic subgroups, all of which
// pass too, so nothing is missed without walking the full subgroup lattice.
// This is the lattice route; isotropic_subgroups(dqf) is the
// quadratic-function route, and the two are in bijection.
inline std::vector<Overlattice> overlattices(
    const QuadLattice& l, const Int& max_det = kDefaultOverlatticeBound) {
  Int determinant = det(l.gram());
  if (determinant == 0) throw singular_error("overlattices of a singular lattice");
  if (abs(determinant) > max_det)
    throw bound_error("lattice determinant exceeds the enumeration bound " +
                      max_det.str());
  const std::size_t n = l.rank();
  Dqf d = dqf(l);

  // Each element's verdict is needed many times across candidates, so decide
  // all of them once up front. Scaling lifts by the group exponent D turns
  // the test into a congruence: Q(y/D) is an integer iff
  // y^T B y + D K.y = 0 mod 2 D^2.
  const Int D =
      d.group.torsion_count() ? d.group.torsion_invariants().back() : Int(1);
  IntMatrix scaled(n, d.lifts.cols());
  for (std::size_t j = 0; j < d.lifts.cols(); ++j)
    for (std::size_t i = 0; i < n; ++i)
      scaled(i, j) = numerator(d.lifts(i, j) * Rational(D));
  const Int modulus = 2 * D * D;
  std::map<std::vector<Int>, bool> integral;
  for (const GroupElement& e : all_elements(d.group)) {
    std::vector<Int> y = mul(scaled, e.torsion_coords);
    Int s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      s += D * l.char_form()[i] * y[i];
      for (std::size_t j = 0; j < n; ++j) s += y[i] * l.gram()(i, j) * y[j];
    }
    integral[e.torsion_coords] = (s % modulus == 0);
  }
  auto integral_on = [&](const Subgroup& s) {
    for (const GroupElement& e : s.elements())
      if (!integral.at(e.torsion_coords)) return false;
    return true;
  };

  std::vector<Subgroup> cyclic;
  for (const GroupElement& e : all_elements(d.group)) {
    if (!integral.at(e.torsion_coords)) continue;
    Subgroup c = Subgroup::from_generators(d.group, {e});
    if (!integral_on(c)) continue;
    if (std::find(cyclic.begin(), cyclic.end(), c) == cyclic.end())
      cyclic.push_back(std::move(c));
  }
  std::vector<Subgroup> keep;
  std::queue<std::size_t> work;
  keep.push_back(Subgroup::trivial(d.group));
  work.push(0);
  while (!work.empty()) {
    Subgroup cur = keep[work.front()];
    work.pop();
    for (const Subgroup& c : cyclic) {
      Subgroup next = cur;
      for (const GroupElement& gen : c.generators()) next = join(next, gen);
      if (!integral_on(next)) continue;
      if (std::find(keep.begin(), keep.end(), next) == keep.end()) {
        keep.push_back(next);
        work.push(keep.size() - 1);
      }
    }
  }
  std::sort(keep.begin(), keep.end());

  std::vector<Overlattice> out;
  for (const Subgroup& s : keep) {
    // survivors are few: re-verify each one in plain rational arithmetic
    for (const GroupElement& e : s.elements())
      if (!is_integral(l.q_rational(lift_element(d, e))))
        throw error("overlattice survivor failed rational re-verification");

    // basis of N1 = N + sum Z lift(gen): clear denominators, take the column
    // lattice basis, scale back
    Int denom = 1;
    std::vector<std::vector<Rational>> gen_lifts;
    for (const GroupElement& g : s.generators()) {
      gen_lifts.push_back(lift_element(d, g));
      for (const Rational& c : gen_lifts.back()) {
        Int q = denominator(c);
        denom = denom / gcd(denom, q) * q;
      }
    }
    IntMatrix cols(n, gen_lifts.size() + n);
    for (std::size_t j = 0; j < gen_lifts.size(); ++j)
      for (std::size_t i = 0; i < n; ++i)
        cols(i, j) = numerator(gen_lifts[j][i] * Rational(denom));
    for (std::size_t i = 0; i < n; ++i) cols(i, gen_lifts.size() + i) = denom;
    IntMatrix scaled = lattice_basis(cols);
    RatMatrix basis(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        basis(i, j) = Rational(scaled(i, j)) / Rational(denom);
    out.push_back(Overlattice{std::move(basis), s});
  }
  return out;
}

// Gram matrix and characteristic vector of an overlattice in its own basis;
// entries are integral because Q is Z-valued there.
inline QuadLattice overlattice_form(const QuadLattice& l, const Overlattice& o) {
  const std::size_t n = l.rank();
  IntMatrix gram(n, n);
  std::vector<Int> k(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> bi(n), q_terms;
    for (std::size_t a = 0; a < n; ++a) bi[a] = o.basis(a, i);
    for (std::size_t j = 0; j < n; ++j) {
      Rational pair = 0;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t c = 0; c < n; ++c)
          pair += o.basis(a, i) * Rational(l.gram()(a, c)) * o.basis(c, j);
      if (!is_integral(pair))
        throw domain_error("overlattice pairing failed to be integral");
      gram(i, j) = numerator(pair);
    }
    Rational qv = l.q_rational(bi);
    if (!is_integral(qv))
      throw domain_error("overlattice quadratic value failed to be integral");
    k[i] = 2 * numerator(qv) - gram(i, i);
  }
  return QuadLattice(std::move(gram), std::move(k));
}

}  // namespace singlat
