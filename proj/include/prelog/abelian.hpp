#ifndef PRELOG_ABELIAN_HPP
#define PRELOG_ABELIAN_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "prelog/lattice.hpp"
#include "prelog/smith.hpp"

namespace prelog {

/**
 * Presentation of a finitely generated abelian group as a quotient of some
 * ZZ^ambient: the group is ZZ^freeRank ⊕ ⊕_i ZZ/torsion[i], with the
 * torsion moduli forming a divisibility chain.
 *
 * `projection` maps ambient coordinates to (free ⊕ torsion) coordinates —
 * the first freeRank rows are the free part, the remaining rows are read
 * modulo the aligned entry of `torsion`.  `lift` is an exact section:
 * projection * lift is the identity, so every group element has an ambient
 * representative.
 */
template <typename Scalar>
struct AbelianGroupPresentation {
  Index freeRank = 0;
  std::vector<Scalar> torsion;        // invariant factors >= 2, each dividing the next
  DenseMatrix<Scalar> projection{0, 0};  // (freeRank + torsion.size()) x ambient
  DenseMatrix<Scalar> lift{0, 0};        // ambient x (freeRank + torsion.size())

  Index ambientRank() const { return projection.cols(); }
  Index coordRank() const { return projection.rows(); }

  /** Reduce torsion coordinates of a (free ⊕ torsion) vector into [0, d). */
  DenseVector<Scalar> normalize(DenseVector<Scalar> v) const {
    for (std::size_t t = 0; t < torsion.size(); ++t) {
      Index i = freeRank + static_cast<Index>(t);
      Scalar r = v(i) % torsion[t];
      if (r < Scalar(0)) r += torsion[t];
      v(i) = r;
    }
    return v;
  }

  /** Class of an ambient vector in (free ⊕ torsion) coordinates. */
  DenseVector<Scalar> project(const DenseVector<Scalar>& ambient) const {
    if (ambient.size() != ambientRank())
      throw std::invalid_argument("project: wrong ambient dimension");
    return normalize(projection * ambient);
  }

  /** Free part of the class of an ambient vector. */
  DenseVector<Scalar> projectFree(const DenseVector<Scalar>& ambient) const {
    if (ambient.size() != ambientRank())
      throw std::invalid_argument("projectFree: wrong ambient dimension");
    return (projection * ambient).head(freeRank);
  }
};

/**
 * Present the cokernel ZZ^rows / im(A) of an integer matrix.
 *
 * From U * A * V = S the quotient is read off the diagonal: coordinates
 * past the rank are free, coordinates with invariant factor >= 2 carry
 * torsion, and unit factors disappear.  Rows of U give the projection, the
 * matching columns of U^-1 give the section.
 */
template <typename Derived>
AbelianGroupPresentation<typename Derived::Scalar> cokernel(
    const Eigen::MatrixBase<Derived>& A) {
  using Scalar = typename Derived::Scalar;
  auto d = snf(A);
  const Index n = A.rows();
  const Index r = d.rank();
  DenseMatrix<Scalar> uinv = unimodularInverse(d.U);

  std::vector<Index> picked;
  for (Index i = r; i < n; ++i) picked.push_back(i);  // free coordinates
  AbelianGroupPresentation<Scalar> g;
  g.freeRank = n - r;
  for (Index i = 0; i < r; ++i)
    if (d.S(i, i) >= Scalar(2)) {
      picked.push_back(i);
      g.torsion.push_back(d.S(i, i));
    }

  const Index c = static_cast<Index>(picked.size());
  g.projection.resize(c, n);
  g.lift.resize(n, c);
  for (Index k = 0; k < c; ++k) {
    g.projection.row(k) = d.U.row(picked[static_cast<std::size_t>(k)]);
    g.lift.col(k) = uinv.col(picked[static_cast<std::size_t>(k)]);
  }
  return g;
}

namespace detail {

/**
 * Relation lattice of a generator list inside a presented group: all
 * integer coefficient vectors c with sum_j c_j * gens_j = 0.
 */
template <typename Scalar>
LatticeBasis<Scalar> relationLattice(
    const std::vector<DenseVector<Scalar>>& gens,
    const AbelianGroupPresentation<Scalar>& ambient) {
  const Index s = static_cast<Index>(gens.size());
  const Index c = ambient.coordRank();
  const Index t = static_cast<Index>(ambient.torsion.size());
  DenseMatrix<Scalar> md(c, s + t);
  for (Index j = 0; j < s; ++j) {
    if (gens[static_cast<std::size_t>(j)].size() != ambient.ambientRank())
      throw std::invalid_argument("subgroup: generator has wrong dimension");
    md.col(j) = ambient.projection * gens[static_cast<std::size_t>(j)];
  }
  md.rightCols(t).setZero();
  for (Index k = 0; k < t; ++k)
    md(ambient.freeRank + k, s + k) = ambient.torsion[static_cast<std::size_t>(k)];
  auto ker = kernelBasis(md);
  // Keep only the coefficient block; the torsion multiples are witnesses.
  return rowSpanLattice(ker.generators.leftCols(s));
}

}  // namespace detail

/**
 * Isomorphism type of the subgroup generated by the given elements of a
 * presented group.
 *
 * The result presents the subgroup abstractly: its ambient space is the
 * coefficient lattice ZZ^gens, modulo the relations that hold among the
 * generators inside the ambient group.
 *
 * @param gens Generators in ambient coordinates of `ambient`.
 * @param ambient The surrounding group.
 */
template <typename Scalar>
AbelianGroupPresentation<Scalar> subgroupStructure(
    const std::vector<DenseVector<Scalar>>& gens,
    const AbelianGroupPresentation<Scalar>& ambient) {
  auto relations = detail::relationLattice(gens, ambient);
  // Subgroup ~= ZZ^s / relations; present it as a cokernel.
  return cokernel(relations.generators.transpose());
}

/**
 * Express a group element as an integer combination of subgroup generators.
 *
 * @param target Element in ambient coordinates.
 * @param gens Subgroup generators in ambient coordinates.
 * @param ambient The surrounding group.
 * @returns Coefficients c with sum_j c_j * gens_j = target in the group, or
 *   nothing when target is outside the subgroup.
 */
template <typename Scalar>
std::optional<DenseVector<Scalar>> subgroupMember(
    const DenseVector<Scalar>& target,
    const std::vector<DenseVector<Scalar>>& gens,
    const AbelianGroupPresentation<Scalar>& ambient) {
  const Index s = static_cast<Index>(gens.size());
  const Index c = ambient.coordRank();
  const Index t = static_cast<Index>(ambient.torsion.size());
  DenseMatrix<Scalar> md(c, s + t);
  for (Index j = 0; j < s; ++j) {
    if (gens[static_cast<std::size_t>(j)].size() != ambient.ambientRank())
      throw std::invalid_argument("subgroup: generator has wrong dimension");
    md.col(j) = ambient.projection * gens[static_cast<std::size_t>(j)];
  }
  md.rightCols(t).setZero();
  for (Index k = 0; k < t; ++k)
    md(ambient.freeRank + k, s + k) = ambient.torsion[static_cast<std::size_t>(k)];
  DenseVector<Scalar> rhs = ambient.projection * target;
  auto sol = solveLinear(md, rhs);
  if (!sol) return std::nullopt;
  return DenseVector<Scalar>(sol->head(s));
}

/**
 * Image of a generator list in the free quotient group/(torsion), as a
 * sublattice of ZZ^freeRank.
 */
template <typename Scalar>
LatticeBasis<Scalar> freeImageLattice(
    const std::vector<DenseVector<Scalar>>& gens,
    const AbelianGroupPresentation<Scalar>& ambient) {
  DenseMatrix<Scalar> rows(static_cast<Index>(gens.size()), ambient.freeRank);
  for (Index j = 0; j < rows.rows(); ++j)
    rows.row(j) =
        ambient.projectFree(gens[static_cast<std::size_t>(j)]).transpose();
  return rowSpanLattice(rows);
}

}  // namespace prelog

#endif  // PRELOG_ABELIAN_HPP
