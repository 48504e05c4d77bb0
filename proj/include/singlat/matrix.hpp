#pragma once

// Dense exact matrices and the integer normal-form toolkit: Smith normal form
// with unimodular transforms, Bareiss determinants, integral linear solves,
// Sylvester inertia over Q, and column-lattice bases.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

#include "singlat/numeric.hpp"

namespace singlat {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    a_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw usage_error("ragged matrix literal");
      a_.insert(a_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }

  bool operator==(const Matrix&) const = default;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < cols_; ++k)
      std::swap((*this)(i, k), (*this)(j, k));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < rows_; ++k)
      std::swap((*this)(k, i), (*this)(k, j));
  }
  // row[i] += c * row[j]
  void add_row(std::size_t i, std::size_t j, const T& c) {
    for (std::size_t k = 0; k < cols_; ++k)
      (*this)(i, k) += c * (*this)(j, k);
  }
  // col[i] += c * col[j]
  void add_col(std::size_t i, std::size_t j, const T& c) {
    for (std::size_t k = 0; k < rows_; ++k)
      (*this)(k, i) += c * (*this)(k, j);
  }
  void negate_row(std::size_t i) {
    for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) = -(*this)(i, k);
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> a_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rational>;

template <class T>
Matrix<T> mul(const Matrix<T>& x, const Matrix<T>& y) {
  if (x.cols() != y.rows()) throw usage_error("matrix product shape mismatch");
  Matrix<T> z(x.rows(), y.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t k = 0; k < x.cols(); ++k) {
      if (x(i, k) == 0) continue;
      for (std::size_t j = 0; j < y.cols(); ++j)
        z(i, j) += x(i, k) * y(k, j);
    }
  return z;
}

template <class T>
std::vector<T> mul(const Matrix<T>& x, const std::vector<T>& v) {
  if (x.cols() != v.size()) throw usage_error("matrix-vector shape mismatch");
  std::vector<T> out(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) out[i] += x(i, j) * v[j];
  return out;
}

template <class T>
Matrix<T> transpose(const Matrix<T>& x) {
  Matrix<T> z(x.cols(), x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) z(j, i) = x(i, j);
  return z;
}

inline RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

inline bool is_symmetric(const IntMatrix& m) {
  if (m.rows() != m.cols()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

struct SnfResult {
  std::vector<Int> d;  // invariant factors, d1 | d2 | ..., zeros trailing
  IntMatrix U, V;      // unimodular, U * M * V = diag(d)
};

// Smith normal form. Pivot rule: smallest nonzero |entry| in the remaining
// submatrix, ties broken by lowest (row, col) — deterministic for fixed input.
inline SnfResult snf(const IntMatrix& m) {
  IntMatrix a = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  IntMatrix v = IntMatrix::identity(m.cols());
  const std::size_t bound = std::min(m.rows(), m.cols());

  for (std::size_t t = 0; t < bound; ++t) {
    for (;;) {
      // Deterministic pivot: min |a(i,j)| over the submatrix, first in
      // row-major order among ties.
      std::size_t pi = 0, pj = 0;
      bool have = false;
      for (std::size_t i = t; i < a.rows(); ++i)
        for (std::size_t j = t; j < a.cols(); ++j) {
          if (a(i, j) == 0) continue;
          if (!have || abs(a(i, j)) < abs(a(pi, pj))) {
            pi = i;
            pj = j;
            have = true;
          }
        }
      if (!have) goto done;  // remaining submatrix is zero
      a.swap_rows(t, pi);
      u.swap_rows(t, pi);
      a.swap_cols(t, pj);
      v.swap_cols(t, pj);

      bool remainder = false;
      for (std::size_t i = t + 1; i < a.rows(); ++i) {
        if (a(i, t) == 0) continue;
        Int q = a(i, t) / a(t, t);  // truncated: |a(i,t) - q*pivot| < |pivot|
        if (q != 0) {
          a.add_row(i, t, -q);
          u.add_row(i, t, -q);
        }
        if (a(i, t) != 0) remainder = true;
      }
      for (std::size_t j = t + 1; j < a.cols(); ++j) {
        if (a(t, j) == 0) continue;
        Int q = a(t, j) / a(t, t);
        if (q != 0) {
          a.add_col(j, t, -q);
          v.add_col(j, t, -q);
        }
        if (a(t, j) != 0) remainder = true;
      }
      if (remainder) continue;  // strictly smaller entries exist; re-pivot

      // Row and column are clear; enforce the divisibility chain by dragging
      // any non-divisible entry into row t.
      bool fixed = true;
      for (std::size_t i = t + 1; i < a.rows() && fixed; ++i)
        for (std::size_t j = t + 1; j < a.cols() && fixed; ++j)
          if (a(i, j) % a(t, t) != 0) {
            a.add_row(t, i, 1);
            u.add_row(t, i, 1);
            fixed = false;
          }
      if (fixed) break;
    }
  }
done:
  for (std::size_t t = 0; t < bound; ++t)
    if (a(t, t) < 0) {
      a.negate_row(t);
      u.negate_row(t);
    }
  std::vector<Int> d(bound);
  for (std::size_t t = 0; t < bound; ++t) d[t] = a(t, t);
  return SnfResult{std::move(d), std::move(u), std::move(v)};
}

// Bareiss fraction-free determinant; exact divisions throughout.
inline Int det(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw usage_error("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;  // empty product
  IntMatrix a = m;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t i = k + 1;
      while (i < n && a(i, k) == 0) ++i;
      if (i == n) return 0;
      a.swap_rows(k, i);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

// Solve M v = b over Z for square nonsingular M. Returns the unique rational
// solution when it is integral, nullopt when it is not.
inline std::optional<std::vector<Int>> solve_integer(const IntMatrix& m,
                                                     const std::vector<Int>& b) {
  if (m.rows() != m.cols()) throw usage_error("solve on non-square matrix");
  if (b.size() != m.rows()) throw usage_error("solve right-hand-side size");
  SnfResult s = snf(m);
  for (const Int& di : s.d)
    if (di == 0) throw singular_error("singular matrix in integral solve");
  std::vector<Int> w = mul(s.U, b);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] % s.d[i] != 0) return std::nullopt;
    w[i] /= s.d[i];
  }
  return mul(s.V, w);
}

struct Inertia {
  std::size_t mu0 = 0, mu_plus = 0, mu_minus = 0;
  bool operator==(const Inertia&) const = default;
};

// Sylvester inertia of a symmetric integer matrix via symmetric Gaussian
// elimination over Q.
inline Inertia rational_diagonalize(const IntMatrix& m) {
  if (!is_symmetric(m)) throw usage_error("inertia of non-symmetric matrix");
  const std::size_t n = m.rows();
  RatMatrix a = to_rational(m);
  Inertia out;
  for (std::size_t k = 0; k < n; ++k) {
    if (a(k, k) == 0) {
      // Prefer a later nonzero diagonal entry (symmetric swap keeps symmetry).
      std::size_t j = k + 1;
      while (j < n && a(j, j) == 0) ++j;
      if (j < n) {
        a.swap_rows(k, j);
        a.swap_cols(k, j);
      } else {
        // All remaining diagonal entries are zero: either the block is zero,
        // or a(i,i) += 2 a(i,j) manufactures a nonzero diagonal.
        std::size_t bi = n, bj = n;
        for (std::size_t i = k; i < n && bi == n; ++i)
          for (std::size_t jj = i + 1; jj < n; ++jj)
            if (a(i, jj) != 0) {
              bi = i;
              bj = jj;
              break;
            }
        if (bi == n) {
          out.mu0 += n - k;
          return out;
        }
        a.add_row(bi, bj, 1);
        a.add_col(bi, bj, 1);
        a.swap_rows(k, bi);
        a.swap_cols(k, bi);
      }
    }
    const Rational pivot = a(k, k);
    if (pivot > 0)
      ++out.mu_plus;
    else
      ++out.mu_minus;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      Rational f = -a(i, k) / pivot;
      a.add_row(i, k, f);
      a.add_col(i, k, f);
    }
  }
  return out;
}

inline bool is_negative_definite_matrix(const IntMatrix& m) {
  Inertia s = rational_diagonalize(m);
  return s.mu0 == 0 && s.mu_plus == 0;
}

// Gauss-Jordan inverse over Q; deterministic first-nonzero pivoting.
inline RatMatrix rational_inverse(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw usage_error("inverse of non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix a = m;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) throw singular_error("singular matrix in inverse");
    a.swap_rows(k, p);
    inv.swap_rows(k, p);
    Rational pivot = a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) /= pivot;
      inv(k, j) /= pivot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      Rational f = -a(i, k);
      a.add_row(i, k, f);
      inv.add_row(i, k, f);
    }
  }
  return inv;
}

inline RatMatrix rational_inverse(const IntMatrix& m) {
  return rational_inverse(to_rational(m));
}

// Inverse of a unimodular integer matrix, as an integer matrix.
inline IntMatrix integer_inverse(const IntMatrix& m) {
  RatMatrix r = rational_inverse(m);
  IntMatrix z(r.rows(), r.cols());
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j) {
      if (!is_integral(r(i, j)))
        throw domain_error("matrix is not unimodular");
      z(i, j) = numerator(r(i, j));
    }
  return z;
}

// Basis (as columns) of the lattice spanned by the columns of a.
// From U a V = D: span(a) = span(U^-1 D), so the basis vectors are the
// columns d_i * U^-1 e_i with d_i != 0.
inline IntMatrix lattice_basis(const IntMatrix& a) {
  SnfResult s = snf(a);
  IntMatrix uinv = integer_inverse(s.U);
  std::size_t rank = 0;
  while (rank < s.d.size() && s.d[rank] != 0) ++rank;
  IntMatrix basis(a.rows(), rank);
  for (std::size_t j = 0; j < rank; ++j)
    for (std::size_t i = 0; i < a.rows(); ++i)
      basis(i, j) = uinv(i, j) * s.d[j];
  return basis;
}

}  // namespace singlat
