#pragma once

// Independent reference implementations used to validate the library. Each
// oracle takes a deliberately different route from the production code:
//   - invariant factors by naive diagonalization + pairwise gcd/lcm
//     stabilization (no pivot strategy, no chain enforcement during
//     elimination), and separately by determinantal divisors;
//   - determinants by cofactor expansion;
//   - inertia by leading-principal-minor signs (Jacobi), where applicable.

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <set>
#include <vector>

#include "singlat/lattice.hpp"
#include "singlat/matrix.hpp"

namespace oracle {

using singlat::Int;
using singlat::IntMatrix;

inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

// Diagonalize by row/col gcd reduction: Euclid on the pivot cross (column t
// and row t) with floor-division remainders; no divisibility bookkeeping. If
// the cross is zero the matrix splits off a zero block and the stage ends.
inline std::vector<Int> naive_diagonal(IntMatrix a) {
  const std::size_t bound = std::min(a.rows(), a.cols());
  std::vector<Int> diag;
  for (std::size_t t = 0; t < bound; ++t) {
    for (;;) {
      // smallest nonzero |entry| on the cross
      std::size_t bi = t, bj = t;
      bool have = false;
      for (std::size_t i = t; i < a.rows(); ++i)
        if (a(i, t) != 0 && (!have || abs(a(i, t)) < abs(a(bi, bj)))) {
          bi = i;
          bj = t;
          have = true;
        }
      for (std::size_t j = t; j < a.cols(); ++j)
        if (a(t, j) != 0 && (!have || abs(a(t, j)) < abs(a(bi, bj)))) {
          bi = t;
          bj = j;
          have = true;
        }
      if (!have) break;  // cross is zero: diagonal entry 0, rest is a block
      a.swap_rows(t, bi);
      a.swap_cols(t, bj);
      bool clean = true;
      for (std::size_t i = t + 1; i < a.rows(); ++i)
        if (a(i, t) != 0) {
          a.add_row(i, t, -floor_div(a(i, t), a(t, t)));
          if (a(i, t) != 0) clean = false;
        }
      for (std::size_t j = t + 1; j < a.cols(); ++j)
        if (a(t, j) != 0) {
          a.add_col(j, t, -floor_div(a(t, j), a(t, t)));
          if (a(t, j) != 0) clean = false;
        }
      if (clean) break;
    }
    diag.push_back(a(t, t));
  }
  return diag;
}

// If A is equivalent to diag(a_1..a_k), the invariant factors follow from
// pairwise gcd/lcm stabilization: diag(a,b) ~ diag(gcd(a,b), lcm(a,b)).
inline std::vector<Int> oracle_snf(const IntMatrix& a) {
  std::vector<Int> d = naive_diagonal(a);
  for (Int& x : d) x = abs(x);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < d.size(); ++i)
      for (std::size_t j = i + 1; j < d.size(); ++j) {
        if (d[i] == 0 && d[j] == 0) continue;
        Int g = gcd(d[i], d[j]);
        Int l = (g == 0) ? Int(0) : d[i] / g * d[j];
        if (d[i] != g || d[j] != l) {
          d[i] = g;
          d[j] = l;
          changed = true;
        }
      }
  }
  // zeros (if any) belong at the tail; gcd/lcm already sends them there,
  // but be explicit for the all-zero row case
  std::stable_sort(d.begin(), d.end(),
                   [](const Int& x, const Int& y) { return (x != 0) && (y == 0); });
  return d;
}

inline Int oracle_det(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Int total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m(0, c) == 0) continue;
    IntMatrix sub(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t jj = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == c) continue;
        sub(i - 1, jj++) = m(i, j);
      }
    }
    Int term = m(0, c) * oracle_det(sub);
    total += (c % 2 == 0) ? term : -term;
  }
  return total;
}

// k-th determinantal divisor: gcd of all k x k minors. Invariant factors are
// successive quotients d_k / d_{k-1}. Exponential in size; use on small input.
inline std::vector<Int> oracle_snf_minors(const IntMatrix& m) {
  const std::size_t bound = std::min(m.rows(), m.cols());
  std::vector<std::vector<std::size_t>> rowsets, colsets;
  std::vector<Int> divisors;  // divisors[k-1] = gcd of k x k minors
  for (std::size_t k = 1; k <= bound; ++k) {
    Int g = 0;
    std::vector<std::size_t> rs(k), cs(k);
    // enumerate k-subsets with odometer increments
    auto next_subset = [](std::vector<std::size_t>& s, std::size_t n) {
      std::size_t k = s.size();
      std::size_t i = k;
      while (i-- > 0) {
        if (s[i] + 1 <= n - (k - i)) {
          ++s[i];
          for (std::size_t j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
          return true;
        }
      }
      return false;
    };
    for (std::size_t i = 0; i < k; ++i) rs[i] = i;
    do {
      for (std::size_t i = 0; i < k; ++i) cs[i] = i;
      do {
        IntMatrix sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(rs[i], cs[j]);
        g = gcd(g, oracle_det(sub));
      } while (next_subset(cs, m.cols()));
    } while (next_subset(rs, m.rows()));
    divisors.push_back(abs(g));
  }
  std::vector<Int> factors(bound);
  Int prev = 1;
  for (std::size_t k = 0; k < bound; ++k) {
    if (divisors[k] == 0) {
      factors[k] = 0;  // all k x k minors vanish; rank reached
    } else {
      factors[k] = divisors[k] / prev;
      prev = divisors[k];
    }
  }
  return factors;
}

// Jacobi: with all leading principal minors nonzero, mu_minus equals the
// number of sign changes in 1, D_1, ..., D_n. Returns nullopt when a leading
// minor vanishes (method not applicable).
inline std::optional<singlat::Inertia> oracle_inertia(const IntMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<Int> minors(n + 1);
  minors[0] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    IntMatrix sub(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(i, j);
    minors[k] = oracle_det(sub);
    if (minors[k] == 0) return std::nullopt;
  }
  singlat::Inertia out;
  for (std::size_t k = 1; k <= n; ++k)
    if ((minors[k - 1] > 0) != (minors[k] > 0))
      ++out.mu_minus;
  out.mu_plus = n - out.mu_minus;
  return out;
}

// ---- overlattice brute force -----------------------------------------------
// Independent of the production route end to end: dual classes are found by
// scanning the (1/|det|)-grid for vectors with integral pairing (no normal
// form, no generator lifts), subgroups are closed over raw coordinate
// vectors, and Q-integrality is decided in pure integer arithmetic.

using ClassSet = std::set<std::vector<Int>>;  // coords scaled by |det|, in [0,|det|)

inline std::set<ClassSet> oracle_overlattices(const singlat::QuadLattice& l) {
  const std::size_t n = l.rank();
  const Int det_big = abs(oracle_det(l.gram()));
  if (det_big == 0) throw singlat::singular_error("oracle on singular lattice");

  // the scan visits |det|^n cells; machine integers suffice (and to_int64
  // throws rather than wrap if a caller ever exceeds them)
  const long long d = singlat::to_int64(det_big);
  std::vector<std::vector<long long>> g(n, std::vector<long long>(n));
  std::vector<long long> k(n);
  long long entry_peak = 0;
  for (std::size_t i = 0; i < n; ++i) {
    k[i] = singlat::to_int64(l.char_form()[i]);
    entry_peak = std::max(entry_peak, std::llabs(k[i]));
    for (std::size_t j = 0; j < n; ++j) {
      g[i][j] = singlat::to_int64(l.gram()(i, j));
      entry_peak = std::max(entry_peak, std::llabs(g[i][j]));
    }
  }
  if (d > 100000 || entry_peak > 100000 || n > 4)
    throw singlat::bound_error("oracle: grid scan out of its design range");

  using Vec = std::vector<long long>;
  auto grid_add = [&](const Vec& a, const Vec& b) {
    Vec c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = (a[i] + b[i]) % d;
    return c;
  };

  // all dual classes: c/|det| pairs integrally with the whole lattice
  std::vector<Vec> classes;
  Vec c(n, 0);
  for (;;) {
    bool dual = true;
    for (std::size_t i = 0; i < n && dual; ++i) {
      long long s = 0;
      for (std::size_t j = 0; j < n; ++j) s += g[i][j] * c[j];
      dual = (s % d == 0);
    }
    if (dual) classes.push_back(c);
    std::size_t i = n;
    bool done = (n == 0);
    while (i-- > 0) {
      if (++c[i] < d) break;
      c[i] = 0;
      if (i == 0) done = true;
    }
    if (done) break;
  }
  if (static_cast<long long>(classes.size()) != d)
    throw singlat::error("oracle: dual class count != |det|");

  // Q(c/|det|) = (c^T B c + |det| K.c) / (2 |det|^2)
  auto q_integral = [&](const Vec& cc) {
    long long quad = 0, lin = 0;
    for (std::size_t i = 0; i < n; ++i) {
      lin += k[i] * cc[i];
      for (std::size_t j = 0; j < n; ++j) quad += cc[i] * g[i][j] * cc[j];
    }
    return (quad + d * lin) % (2 * d * d) == 0;
  };

  const Vec zero(n, 0);
  // subgroups of the class group: close each seen set with each class via
  // coset unions, then verify closure pairwise
  using LocalSet = std::set<Vec>;
  std::set<LocalSet> seen;
  std::vector<LocalSet> work;
  LocalSet triv;
  triv.insert(zero);
  seen.insert(triv);
  work.push_back(triv);
  while (!work.empty()) {
    LocalSet cur = work.back();
    work.pop_back();
    for (const Vec& gen : classes) {
      LocalSet next;
      Vec shift = zero;
      do {
        for (const Vec& e : cur) next.insert(grid_add(e, shift));
        shift = grid_add(shift, gen);
      } while (shift != zero);
      if (seen.insert(next).second) {
        for (const Vec& a : next)
          for (const Vec& b : next)
            if (!next.count(grid_add(a, b)))
              throw singlat::error("oracle: class set not closed");
        work.push_back(std::move(next));
      }
    }
  }

  std::set<ClassSet> out;
  for (const LocalSet& s : seen) {
    bool integral = true;
    for (const Vec& e : s)
      if (!q_integral(e)) {
        integral = false;
        break;
      }
    if (!integral) continue;
    ClassSet lifted;
    for (const Vec& e : s) lifted.insert(std::vector<Int>(e.begin(), e.end()));
    out.insert(std::move(lifted));
  }
  return out;
}

// Map a subgroup of N^#/N (production representation) onto grid classes so
// it can be compared with the oracle's answer.
inline ClassSet classes_of_subgroup(const singlat::Dqf& d,
                                    const singlat::Subgroup& s,
                                    const Int& det_abs) {
  ClassSet out;
  for (const singlat::GroupElement& e : s.elements()) {
    std::vector<singlat::Rational> x = lift_element(d, e);
    std::vector<Int> cc(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      singlat::Rational scaled = x[i] * singlat::Rational(det_abs);
      if (!singlat::is_integral(scaled))
        throw singlat::error("lift does not live on the (1/det) grid");
      cc[i] = ((numerator(scaled) % det_abs) + det_abs) % det_abs;
    }
    out.insert(std::move(cc));
  }
  return out;
}

}  // namespace oracle
