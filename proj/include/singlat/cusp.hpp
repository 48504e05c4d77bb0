#pragma once

// Cycle arithmetic for cusp links: the SL(2,Z) monodromy word, link torsion
// from A - id, the dual cycle via the two-letter word swap, and the cyclic
// cover datum used by the lifting classifier.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "singlat/abelian.hpp"
#include "singlat/matrix.hpp"
#include "singlat/numeric.hpp"

namespace singlat {

struct CuspMonodromy {
  IntMatrix A = IntMatrix(2, 2);
  Int a, b, c, d;  // entries [[a, b], [c, d]]
  Int t;           // trace
};

// A = M(d_r) ... M(d_1) with M(d) = [[0, -1], [1, d]].
inline CuspMonodromy monodromy(const std::vector<Int>& seq) {
  if (seq.empty()) throw usage_error("monodromy of an empty cycle");
  for (const Int& di : seq)
    if (di < 1) throw usage_error("cycle entries must be at least 1");
  IntMatrix acc = IntMatrix::identity(2);
  for (const Int& di : seq) {
    const IntMatrix m{{Int(0), Int(-1)}, {Int(1), di}};
    acc = mul(m, acc);  // left factors accumulate d_1 .. d_r in order
  }
  CuspMonodromy out;
  out.A = acc;
  out.a = acc(0, 0);
  out.b = acc(0, 1);
  out.c = acc(1, 0);
  out.d = acc(1, 1);
  out.t = out.a + out.d;
  return out;
}

// H_1 torsion of the link: Z^2 / (A - id) Z^2, of order |det(A - id)| = t - 2.
inline FinAbGroup link_torsion(const std::vector<Int>& seq) {
  const CuspMonodromy m = monodromy(seq);
  if (m.t == 2)
    throw domain_error("monodromy trace 2 is degenerate: A - id is singular");
  IntMatrix rels = m.A;
  rels(0, 0) -= 1;
  rels(1, 1) -= 1;
  return FinAbGroup::from_presentation(2, rels);
}

namespace detail {

// Lexicographically greatest cyclic rotation; puts the largest entry first,
// which is the form the dual cycles are quoted in ([3, 2, ..., 2] and so on).
inline std::vector<Int> canonical_rotation(std::vector<Int> seq) {
  std::vector<Int> best = seq;
  for (std::size_t k = 1; k < seq.size(); ++k) {
    std::rotate(seq.begin(), seq.begin() + 1, seq.end());
    if (seq > best) best = seq;
  }
  return best;
}

}  // namespace detail

// Write the cycle as a cyclic word with one 'A' and d_i - 2 'B's per entry,
// swap the two letters, and decode.  Defined once some entry exceeds 2.
inline std::vector<Int> dual_cusp(const std::vector<Int>& seq) {
  if (seq.empty()) throw usage_error("empty cycle");
  bool has_big = false;
  for (const Int& di : seq) {
    if (di < 2) throw usage_error("dual cycle requires entries of at least 2");
    if (di > 2) has_big = true;
  }
  if (!has_big)
    throw domain_error("all-2 cycles are not negative definite and have no dual");
  std::string word;
  for (const Int& di : seq) {
    word += 'A';
    for (long long k = to_int64(di - 2); k > 0; --k) word += 'B';
  }
  for (char& ch : word) ch = (ch == 'A') ? 'B' : 'A';
  const std::size_t start = word.find('A');
  const std::size_t n = word.size();
  std::vector<Int> out;
  Int cur = 0;
  bool began = false;
  for (std::size_t off = 0; off < n; ++off) {
    const char ch = word[(start + off) % n];
    if (ch == 'A') {
      if (began) out.push_back(cur);
      cur = 2;
      began = true;
    } else {
      cur += 1;
    }
  }
  out.push_back(cur);
  return detail::canonical_rotation(std::move(out));
}

struct LciCover {
  Int group_order;             // t, the order of the cyclic cover group
  std::vector<Int> cover_seq;  // [3, 2 repeated t - 3 times], length t - 2
  bool a_nonneg;               // top-left monodromy entry is >= 0
};

inline LciCover lci_cover(const std::vector<Int>& seq) {
  const CuspMonodromy m = monodromy(seq);
  if (m.t < 3) throw domain_error("cover cycle needs monodromy trace at least 3");
  LciCover out;
  out.group_order = m.t;
  out.cover_seq.push_back(3);
  for (long long k = to_int64(m.t - 3); k > 0; --k) out.cover_seq.push_back(2);
  out.a_nonneg = (m.a >= 0);
  return out;
}

}  // namespace singlat
