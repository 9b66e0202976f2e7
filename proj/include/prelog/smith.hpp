#ifndef PRELOG_SMITH_HPP
#define PRELOG_SMITH_HPP

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "prelog/numeric.hpp"

namespace prelog {

/**
 * Smith decomposition U * A * V = S of an integer matrix, with U and V
 * unimodular and S diagonal.  The diagonal entries are the invariant
 * factors: nonnegative, each dividing the next, positive exactly up to the
 * rank, and their partial products equal the gcds of the k-by-k minors.
 */
template <typename Scalar>
struct SmithDecomposition {
  DenseMatrix<Scalar> U;
  DenseMatrix<Scalar> S;
  DenseMatrix<Scalar> V;
  std::vector<Scalar> invariants;  // length min(rows, cols)

  Index rank() const {
    Index r = 0;
    for (const Scalar& d : invariants)
      if (d != Scalar(0)) ++r;
    return r;
  }
};

/**
 * Compute the Smith normal form of a dense integer matrix.
 *
 * The reduction is fully deterministic: each round selects the nonzero
 * entry of smallest absolute value in the active submatrix (ties broken by
 * lowest row, then lowest column), moves it to the corner, and clears its
 * row and column with exact Euclidean steps.  Before the corner is frozen
 * the remaining block is checked for divisibility by the corner entry, so
 * the diagonal comes out as a divisibility chain without a fix-up pass.
 *
 * @param A Input matrix; empty shapes are fine.
 * @returns Decomposition with U * A * V = S.
 */
template <typename Derived>
SmithDecomposition<typename Derived::Scalar> snf(
    const Eigen::MatrixBase<Derived>& A) {
  using Scalar = typename Derived::Scalar;
  const Index n = A.rows(), m = A.cols();
  SmithDecomposition<Scalar> d;
  d.U = DenseMatrix<Scalar>::Identity(n, n);
  d.V = DenseMatrix<Scalar>::Identity(m, m);
  d.S = A;
  DenseMatrix<Scalar>& U = d.U;
  DenseMatrix<Scalar>& S = d.S;
  DenseMatrix<Scalar>& V = d.V;

  const Index kmax = std::min(n, m);
  Index k = 0;
  while (k < kmax) {
    // Deterministic pivot: smallest nonzero absolute value, lowest (row, col).
    Index pi = -1, pj = -1;
    for (Index i = k; i < n; ++i)
      for (Index j = k; j < m; ++j)
        if (S(i, j) != Scalar(0) &&
            (pi < 0 || absLess(S(i, j), S(pi, pj))))
          pi = i, pj = j;
    if (pi < 0) break;  // active submatrix is zero
    if (pi != k) {
      S.row(pi).swap(S.row(k));
      U.row(pi).swap(U.row(k));
    }
    if (pj != k) {
      S.col(pj).swap(S.col(k));
      V.col(pj).swap(V.col(k));
    }

    // One sweep of Euclidean reduction against the pivot.
    bool clean = true;
    for (Index i = k + 1; i < n; ++i) {
      if (S(i, k) == Scalar(0)) continue;
      Scalar q = S(i, k) / S(k, k);
      if (q != Scalar(0)) {
        S.row(i) -= q * S.row(k);
        U.row(i) -= q * U.row(k);
      }
      if (S(i, k) != Scalar(0)) clean = false;
    }
    for (Index j = k + 1; j < m; ++j) {
      if (S(k, j) == Scalar(0)) continue;
      Scalar q = S(k, j) / S(k, k);
      if (q != Scalar(0)) {
        S.col(j) -= q * S.col(k);
        V.col(j) -= q * V.col(k);
      }
      if (S(k, j) != Scalar(0)) clean = false;
    }
    if (!clean) continue;  // a strictly smaller pivot now exists; reselect

    // Row and column are clear; make the corner divide the remaining block.
    bool fixed = false;
    for (Index i = k + 1; i < n && !fixed; ++i)
      for (Index j = k + 1; j < m && !fixed; ++j)
        if (S(i, j) % S(k, k) != Scalar(0)) {
          S.row(k) += S.row(i);
          U.row(k) += U.row(i);
          fixed = true;
        }
    if (fixed) continue;
    ++k;
  }

  for (Index i = 0; i < kmax; ++i)
    if (S(i, i) < Scalar(0)) {
      S.row(i) = -S.row(i);
      U.row(i) = -U.row(i);
    }
  d.invariants.resize(static_cast<std::size_t>(kmax));
  for (Index i = 0; i < kmax; ++i) d.invariants[static_cast<std::size_t>(i)] = S(i, i);
  return d;
}

/**
 * Row-style Hermite decomposition U * A = H with U unimodular, H in echelon
 * form with positive pivots and the entries above each pivot reduced into
 * [0, pivot).
 */
template <typename Scalar>
struct HermiteDecomposition {
  DenseMatrix<Scalar> H;
  DenseMatrix<Scalar> U;
  std::vector<Index> pivotCols;
  Index rank = 0;
};

/**
 * Compute the row Hermite normal form of a dense integer matrix using only
 * unimodular row operations.  Deterministic: within each column the pivot
 * candidate is the entry of smallest absolute value (ties broken by lowest
 * row).
 *
 * @param A Input matrix; empty shapes are fine.
 * @returns Decomposition with U * A = H.
 */
template <typename Derived>
HermiteDecomposition<typename Derived::Scalar> hnf(
    const Eigen::MatrixBase<Derived>& A) {
  using Scalar = typename Derived::Scalar;
  const Index n = A.rows(), m = A.cols();
  HermiteDecomposition<Scalar> d;
  d.H = A;
  d.U = DenseMatrix<Scalar>::Identity(n, n);
  DenseMatrix<Scalar>& H = d.H;
  DenseMatrix<Scalar>& U = d.U;

  Index r = 0;
  for (Index j = 0; j < m && r < n; ++j) {
    // Reduce rows r..n-1 in column j to a single nonzero entry at row r.
    while (true) {
      Index best = -1;
      for (Index i = r; i < n; ++i)
        if (H(i, j) != Scalar(0) && (best < 0 || absLess(H(i, j), H(best, j))))
          best = i;
      if (best < 0) break;
      if (best != r) {
        H.row(best).swap(H.row(r));
        U.row(best).swap(U.row(r));
      }
      bool done = true;
      for (Index i = r + 1; i < n; ++i) {
        if (H(i, j) == Scalar(0)) continue;
        Scalar q = H(i, j) / H(r, j);
        if (q != Scalar(0)) {
          H.row(i) -= q * H.row(r);
          U.row(i) -= q * U.row(r);
        }
        if (H(i, j) != Scalar(0)) done = false;
      }
      if (done) break;
    }
    if (H(r, j) == Scalar(0)) continue;  // no pivot in this column
    if (H(r, j) < Scalar(0)) {
      H.row(r) = -H.row(r);
      U.row(r) = -U.row(r);
    }
    for (Index i = 0; i < r; ++i) {
      Scalar q = floorDiv(H(i, j), H(r, j));
      if (q != Scalar(0)) {
        H.row(i) -= q * H.row(r);
        U.row(i) -= q * U.row(r);
      }
    }
    d.pivotCols.push_back(j);
    ++r;
  }
  d.rank = r;
  return d;
}

/** Rank over the rationals (number of Hermite pivots). */
template <typename Derived>
Index matrixRank(const Eigen::MatrixBase<Derived>& A) {
  return hnf(A).rank;
}

/**
 * Solve A x = b exactly over the integers.
 *
 * @param A Coefficient matrix acting on column vectors.
 * @param b Right-hand side with A.rows() entries.
 * @returns A particular integer solution, or nothing if none exists.
 */
template <typename DerivedA, typename DerivedB>
std::optional<DenseVector<typename DerivedA::Scalar>> solveLinear(
    const Eigen::MatrixBase<DerivedA>& A, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  if (b.size() != A.rows())
    throw std::invalid_argument("solveLinear: right-hand side has wrong size");
  auto d = snf(A);
  const Index r = d.rank();
  DenseVector<Scalar> c = d.U * b;
  DenseVector<Scalar> y = DenseVector<Scalar>::Zero(A.cols());
  for (Index i = 0; i < r; ++i) {
    if (c(i) % d.S(i, i) != Scalar(0)) return std::nullopt;
    y(i) = c(i) / d.S(i, i);
  }
  for (Index i = r; i < c.size(); ++i)
    if (c(i) != Scalar(0)) return std::nullopt;
  return d.V * y;
}

/**
 * Invert a unimodular integer matrix exactly.  The row Hermite form of a
 * unimodular matrix is the identity, so its transform is the inverse.
 *
 * @throws std::invalid_argument when the matrix is not unimodular.
 */
template <typename Derived>
DenseMatrix<typename Derived::Scalar> unimodularInverse(
    const Eigen::MatrixBase<Derived>& M) {
  using Scalar = typename Derived::Scalar;
  if (M.rows() != M.cols())
    throw std::invalid_argument("unimodularInverse: matrix must be square");
  auto d = hnf(M);
  if (d.H != DenseMatrix<Scalar>::Identity(M.rows(), M.cols()))
    throw std::invalid_argument("unimodularInverse: matrix is not unimodular");
  return d.U;
}

namespace detail {

/** Inverse of a mod p, for a not divisible by the prime p. */
inline Int modInverse(const Int& a, const Int& p) {
  Int x, y;
  mpz_gcdext(x.get_mpz_t(), y.get_mpz_t(), nullptr, a.get_mpz_t(),
             p.get_mpz_t());
  Int inv = y % p;  // gcdext returns gcd in x and a Bezout coefficient in y
  (void)x;
  if (inv < 0) inv += p;
  return inv;
}

}  // namespace detail

/**
 * Rank of an integer matrix over the prime field with p elements.
 *
 * @param A Input matrix.
 * @param p A prime; composite arguments are rejected.
 * @returns The rank after reducing every entry mod p.
 * @throws std::invalid_argument when p is not prime.
 */
inline Index rankModP(const IntMatrix& A, const Int& p) {
  if (!isPrime(p)) throw std::invalid_argument("rankModP: p must be prime");
  const Index n = A.rows(), m = A.cols();
  IntMatrix w(n, m);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < m; ++j) {
      Int e = A(i, j) % p;
      if (e < 0) e += p;
      w(i, j) = e;
    }
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
    Int inv = detail::modInverse(w(r, c), p);
    for (Index i = r + 1; i < n; ++i) {
      if (w(i, c) == 0) continue;
      Int f = (w(i, c) * inv) % p;
      for (Index j = c; j < m; ++j) {
        w(i, j) = (w(i, j) - f * w(r, j)) % p;
        if (w(i, j) < 0) w(i, j) += p;
      }
    }
    ++r;
  }
  return r;
}

}  // namespace prelog

#endif  // PRELOG_SMITH_HPP
