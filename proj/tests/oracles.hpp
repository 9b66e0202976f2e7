// Independent reference computations used to cross-check the library.  These
// deliberately avoid the algorithms under test: determinants come from
// cofactor expansion, ranks from fraction-free (Bareiss) elimination, and
// solvability from rational Gaussian elimination over GMP rationals.
#ifndef PRELOG_TESTS_ORACLES_HPP
#define PRELOG_TESTS_ORACLES_HPP

#include <optional>
#include <vector>

#include "prelog/numeric.hpp"

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 100,
    MulCost = 100
  };
};

}  // namespace Eigen

namespace oracle {

using prelog::DenseMatrix;
using prelog::Index;
using prelog::Int;
using prelog::IntMatrix;
using prelog::IntVector;

/** Determinant by cofactor expansion along the first row (small matrices). */
inline Int determinant(const IntMatrix& a) {
  const Index n = a.rows();
  if (n == 0) return 1;
  if (n == 1) return a(0, 0);
  Int det = 0;
  for (Index j = 0; j < n; ++j) {
    if (a(0, j) == 0) continue;
    IntMatrix minor(n - 1, n - 1);
    for (Index r = 1; r < n; ++r) {
      Index cc = 0;
      for (Index c = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, cc++) = a(r, c);
      }
    }
    Int term = a(0, j) * determinant(minor);
    det += (j % 2 == 0) ? term : Int(-term);
  }
  return det;
}

/** All k-element subsets of {0,...,n-1} in lexicographic order. */
inline std::vector<std::vector<Index>> subsets(Index n, Index k) {
  std::vector<std::vector<Index>> out;
  if (k < 0 || k > n) return out;
  std::vector<Index> cur(k);
  for (Index i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    Index i = k - 1;
    while (i >= 0 && cur[i] == n - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (Index j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

/** gcd of all k×k minors of a (0 if there are none or all vanish). */
inline Int minorGcd(const IntMatrix& a, Index k) {
  Int g = 0;
  for (const auto& rows : subsets(a.rows(), k)) {
    for (const auto& cols : subsets(a.cols(), k)) {
      IntMatrix sub(k, k);
      for (Index i = 0; i < k; ++i)
        for (Index j = 0; j < k; ++j) sub(i, j) = a(rows[i], cols[j]);
      g = gcd(g, determinant(sub));
      if (g == 1) return 1;
    }
  }
  return g < 0 ? Int(-g) : g;
}

/** Rank over the rationals by fraction-free (Bareiss) elimination. */
inline Index bareissRank(IntMatrix a) {
  const Index n = a.rows(), m = a.cols();
  Int prev = 1;
  Index r = 0;
  for (Index c = 0; c < m && r < n; ++c) {
    Index piv = -1;
    for (Index i = r; i < n; ++i)
      if (a(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r) a.row(piv).swap(a.row(r));
    for (Index i = r + 1; i < n; ++i) {
      for (Index j = c + 1; j < m; ++j)
        a(i, j) = (a(r, c) * a(i, j) - a(i, c) * a(r, j)) / prev;
      a(i, c) = 0;
    }
    prev = a(r, c);
    ++r;
  }
  return r;
}

using Rat = mpq_class;
using RatMatrix = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;

/**
 * Solve A x = b over the rationals by Gaussian elimination (free variables
 * set to zero).  Returns nothing when the system is inconsistent.
 */
inline std::optional<std::vector<Rat>> rationalSolve(const IntMatrix& a,
                                                     const IntVector& b) {
  const Index n = a.rows(), m = a.cols();
  RatMatrix w(n, m + 1);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < m; ++j) w(i, j) = Rat(a(i, j));
    w(i, m) = Rat(b(i));
  }
  std::vector<Index> pivotCol;
  Index r = 0;
  for (Index c = 0; c < m && r < n; ++c) {
    Index piv = -1;
    for (Index i = r; i < n; ++i)
      if (w(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r) w.row(piv).swap(w.row(r));
    w.row(r) /= w(r, c);
    for (Index i = 0; i < n; ++i)
      if (i != r && w(i, c) != 0) w.row(i) -= w(i, c) * w.row(r);
    pivotCol.push_back(c);
    ++r;
  }
  for (Index i = r; i < n; ++i)
    if (w(i, m) != 0) return std::nullopt;
  std::vector<Rat> x(static_cast<std::size_t>(m), Rat(0));
  for (Index k = 0; k < r; ++k) x[pivotCol[k]] = w(k, m);
  return x;
}

/** Does v lie in the rational row span of g? */
inline bool inRationalRowSpan(const IntMatrix& g, const IntVector& v) {
  return rationalSolve(g.transpose(), v).has_value();
}

}  // namespace oracle

#endif  // PRELOG_TESTS_ORACLES_HPP
