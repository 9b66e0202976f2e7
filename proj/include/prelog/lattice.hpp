#ifndef PRELOG_LATTICE_HPP
#define PRELOG_LATTICE_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "prelog/smith.hpp"

namespace prelog {

/**
 * A sublattice of some ZZ^ambient, stored as one generator per row.  The
 * constructors below keep the rows independent and in row Hermite form, so
 * equal lattices have equal generator matrices.
 */
template <typename Scalar>
struct LatticeBasis {
  Index ambientRank = 0;
  DenseMatrix<Scalar> generators{0, 0};

  Index rank() const { return generators.rows(); }
};

/**
 * Lattice spanned by the rows of a matrix.  Dependent or zero rows are
 * collapsed away; the stored basis is the canonical Hermite one.
 */
template <typename Derived>
LatticeBasis<typename Derived::Scalar> rowSpanLattice(
    const Eigen::MatrixBase<Derived>& rows) {
  auto d = hnf(rows);
  LatticeBasis<typename Derived::Scalar> l;
  l.ambientRank = rows.cols();
  l.generators = d.H.topRows(d.rank);
  return l;
}

/**
 * Basis of the integer kernel of A acting on column vectors.
 *
 * The kernel of an integer matrix is automatically saturated: it is the
 * intersection of a rational subspace with the integer lattice.
 *
 * @param A Map from ZZ^cols to ZZ^rows.
 * @returns Canonical basis of ker(A), one generator per row.
 */
template <typename Derived>
LatticeBasis<typename Derived::Scalar> kernelBasis(
    const Eigen::MatrixBase<Derived>& A) {
  auto d = snf(A);
  const Index r = d.rank();
  // S * (V^-1 x) = 0 constrains the first r coordinates, so the kernel is
  // spanned by the trailing columns of V.
  return rowSpanLattice(d.V.rightCols(A.cols() - r).transpose());
}

/**
 * Saturation (L tensor QQ) ∩ ZZ^ambient of a lattice.
 *
 * With U * G * V = S the rational row span of G equals the span of the
 * first rank rows of V^-1, and rows of a unimodular matrix always span a
 * saturated sublattice.
 */
template <typename Scalar>
LatticeBasis<Scalar> saturate(const LatticeBasis<Scalar>& L) {
  if (L.generators.rows() == 0) return L;
  auto d = snf(L.generators);
  const Index r = d.rank();
  DenseMatrix<Scalar> vinv = unimodularInverse(d.V);
  return rowSpanLattice(vinv.topRows(r));
}

/**
 * Is the lattice saturated in its ambient space?  Equivalent to the gcd of
 * all maximal minors of the generator matrix being 1; computed via the
 * invariant factors.
 *
 * @throws std::invalid_argument when the generator rows are dependent.
 */
template <typename Scalar>
bool isSaturated(const LatticeBasis<Scalar>& L) {
  const Index k = L.generators.rows();
  if (k == 0) return true;
  auto d = snf(L.generators);
  if (d.rank() != k)
    throw std::invalid_argument(
        "isSaturated: generator rows are dependent; reduce first");
  for (const Scalar& di : d.invariants)
    if (di != Scalar(0) && di != Scalar(1)) return false;
  return true;
}

/**
 * Express v as an integer combination of the generators.
 *
 * @param L Lattice with k generators.
 * @param v Vector with ambientRank entries.
 * @returns Coefficients c with c * generators = v, or nothing if v is not
 *   in the lattice.
 * @throws std::invalid_argument on a dimension mismatch.
 */
template <typename Scalar>
std::optional<DenseVector<Scalar>> member(const LatticeBasis<Scalar>& L,
                                          const DenseVector<Scalar>& v) {
  if (v.size() != L.ambientRank)
    throw std::invalid_argument("member: vector has wrong ambient dimension");
  return solveLinear(L.generators.transpose(), v);
}

/**
 * Index of a finite-index sublattice: the order of super / sub.
 *
 * @param sub Sublattice; every generator must lie in super.
 * @param super Lattice of the same rank in the same ambient space.
 * @returns The positive index [super : sub].
 * @throws std::invalid_argument when ranks differ (the index would be
 *   infinite) or sub is not contained in super.
 */
template <typename Scalar>
Scalar sublatticeIndex(const LatticeBasis<Scalar>& sub,
                       const LatticeBasis<Scalar>& super) {
  if (sub.ambientRank != super.ambientRank)
    throw std::invalid_argument("sublatticeIndex: ambient spaces differ");
  if (sub.rank() != super.rank())
    throw std::invalid_argument(
        "sublatticeIndex: ranks differ, so the index is not finite");
  DenseMatrix<Scalar> coords(sub.rank(), super.rank());
  for (Index k = 0; k < sub.rank(); ++k) {
    auto c = member(super, DenseVector<Scalar>(sub.generators.row(k).transpose()));
    if (!c)
      throw std::invalid_argument(
          "sublatticeIndex: generator lies outside the claimed superlattice");
    coords.row(k) = c->transpose();
  }
  auto d = snf(coords);
  Scalar index = 1;
  for (const Scalar& s : d.invariants) index *= s;
  return index;
}

}  // namespace prelog

#endif  // PRELOG_LATTICE_HPP
