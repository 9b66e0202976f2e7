#ifndef PRELOG_ENGINE_HPP
#define PRELOG_ENGINE_HPP

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "prelog/abelian.hpp"
#include "prelog/lattice.hpp"
#include "prelog/smith.hpp"
#include "prelog/snc_model.hpp"

namespace prelog {

/**
 * The four maps linking the Chow groups of components, double curves and
 * triple points, with the block tables locating each stratum's coordinates.
 * Columns of delta and rows of rho are indexed by pair strata; columns of
 * rhoPrime and rows of deltaPrime likewise; deltaPrime columns and rhoPrime
 * rows are indexed by triples.
 */
struct DiagramMatrices {
  IntMatrix delta;       // pair classes pushed into the components
  IntMatrix rho;         // component classes restricted to the pair curves
  IntMatrix deltaPrime;  // triple points pushed into the pair curves
  IntMatrix rhoPrime;    // pair classes restricted to the triple points
  std::vector<Index> componentOffsets;  // size #components + 1
  std::vector<Index> pairOffsets;       // size #pairs + 1
  std::vector<Index> tripleOffsets;     // size #triples + 1
};

namespace engine_detail {

inline void requireAssemblable(const SncComplex& c, const char* op) {
  if (c.workingGrade != 1)
    throw std::invalid_argument(
        std::string(op) +
        ": only divisor classes (working grade 1) assemble from curve "
        "strata; supply raw matrices for other grades");
  for (std::size_t k = 0; k < c.pairs.size(); ++k)
    if (c.pairs[k].stratumRank != 1)
      throw std::invalid_argument(std::string(op) + ": pair stratum " +
                                  std::to_string(k) +
                                  " has rank != 1; supply raw matrices");
}

inline const IntMatrix& pairingOf(const SncComplex& c, int comp,
                                  const char* op) {
  const ChowLattice* lat =
      c.components[static_cast<std::size_t>(comp)].lattice(c.workingGrade);
  if (!lat || !lat->pairing)
    throw std::invalid_argument(
        std::string(op) + ": component " + std::to_string(comp) +
        " carries no intersection pairing in the working grade");
  return *lat->pairing;
}

inline std::vector<Index> unitOffsets(std::size_t count) {
  std::vector<Index> off(count + 1, 0);
  for (std::size_t k = 0; k < count; ++k) off[k + 1] = off[k] + 1;
  return off;
}

/** The three pair strata carrying a triple, ordered by their vertex pair
 * (a,b), (a,c), (b,c); validated complexes have exactly one of each. */
inline std::array<Index, 3> carriersOf(const SncComplex& c, int tripleIndex,
                                       const char* op) {
  const auto& t = c.triples[static_cast<std::size_t>(tripleIndex)];
  const std::pair<int, int> edges[3] = {{t.a, t.b}, {t.a, t.c}, {t.b, t.c}};
  std::array<Index, 3> out{};
  for (int e = 0; e < 3; ++e) {
    bool found = false;
    for (std::size_t p = 0; p < c.pairs.size(); ++p) {
      const auto& ps = c.pairs[p];
      if (ps.i != edges[e].first || ps.j != edges[e].second) continue;
      if (std::find(ps.triplesOn.begin(), ps.triplesOn.end(), tripleIndex) ==
          ps.triplesOn.end())
        continue;
      if (found)
        throw std::invalid_argument(std::string(op) +
                                    ": triple listed on two strata of one "
                                    "component pair; validate the complex");
      out[static_cast<std::size_t>(e)] = static_cast<Index>(p);
      found = true;
    }
    if (!found)
      throw std::invalid_argument(std::string(op) +
                                  ": triple is not carried by any stratum "
                                  "of one of its component pairs");
  }
  return out;
}

}  // namespace engine_detail

/**
 * Pushforward of pair-curve classes into the components: one column per
 * pair stratum, holding its divisor class on the smaller-indexed component
 * and minus its class on the larger one.
 */
inline IntMatrix buildDelta(const SncComplex& c) {
  engine_detail::requireAssemblable(c, "buildDelta");
  auto off = componentOffsets(c);
  IntMatrix delta = IntMatrix::Zero(off.back(),
                                    static_cast<Index>(c.pairs.size()));
  for (std::size_t p = 0; p < c.pairs.size(); ++p) {
    const auto& ps = c.pairs[p];
    const Index col = static_cast<Index>(p);
    delta.block(off[static_cast<std::size_t>(ps.i)], col,
                ps.classInI.size(), 1) = ps.classInI;
    delta.block(off[static_cast<std::size_t>(ps.j)], col,
                ps.classInJ.size(), 1) = -ps.classInJ;
  }
  return delta;
}

/**
 * Restriction of component divisors to the pair curves: one row per pair
 * stratum.  The entry under a basis divisor D of the smaller component is
 * the intersection number D . [curve] from that component's pairing, and
 * minus the same on the larger component.
 */
inline IntMatrix buildRho(const SncComplex& c) {
  engine_detail::requireAssemblable(c, "buildRho");
  auto off = componentOffsets(c);
  IntMatrix rho = IntMatrix::Zero(static_cast<Index>(c.pairs.size()),
                                  off.back());
  for (std::size_t p = 0; p < c.pairs.size(); ++p) {
    const auto& ps = c.pairs[p];
    const Index row = static_cast<Index>(p);
    const IntMatrix& pi = engine_detail::pairingOf(c, ps.i, "buildRho");
    const IntMatrix& pj = engine_detail::pairingOf(c, ps.j, "buildRho");
    rho.block(row, off[static_cast<std::size_t>(ps.i)], 1,
              ps.classInI.size()) = (pi * ps.classInI).transpose();
    rho.block(row, off[static_cast<std::size_t>(ps.j)], 1,
              ps.classInJ.size()) = -(pj * ps.classInJ).transpose();
  }
  return rho;
}

/**
 * Pushforward of triple points into the pair curves: one column per triple
 * with entries -1, +1, -1 on the strata carrying its vertex pairs (a,b),
 * (a,c), (b,c).
 */
inline IntMatrix buildDeltaPrime(const SncComplex& c) {
  engine_detail::requireAssemblable(c, "buildDeltaPrime");
  IntMatrix dp = IntMatrix::Zero(static_cast<Index>(c.pairs.size()),
                                 static_cast<Index>(c.triples.size()));
  for (std::size_t t = 0; t < c.triples.size(); ++t) {
    auto carriers = engine_detail::carriersOf(c, static_cast<int>(t),
                                              "buildDeltaPrime");
    const Int signs[3] = {-1, 1, -1};
    for (int e = 0; e < 3; ++e)
      dp(carriers[static_cast<std::size_t>(e)], static_cast<Index>(t)) =
          signs[e];
  }
  return dp;
}

/**
 * Restriction of pair-curve classes to the triple points: one row per
 * triple with entries +1, -1, +1 on the strata carrying its vertex pairs
 * (a,b), (a,c), (b,c) — each triple point is a single reduced point on
 * each of the three curves.
 */
inline IntMatrix buildRhoPrime(const SncComplex& c) {
  engine_detail::requireAssemblable(c, "buildRhoPrime");
  IntMatrix rp = IntMatrix::Zero(static_cast<Index>(c.triples.size()),
                                 static_cast<Index>(c.pairs.size()));
  for (std::size_t t = 0; t < c.triples.size(); ++t) {
    auto carriers = engine_detail::carriersOf(c, static_cast<int>(t),
                                              "buildRhoPrime");
    const Int signs[3] = {1, -1, 1};
    for (int e = 0; e < 3; ++e)
      rp(static_cast<Index>(t), carriers[static_cast<std::size_t>(e)]) =
          signs[e];
  }
  return rp;
}

/** Assemble all four maps and the block tables from a complex. */
inline DiagramMatrices assembleDiagrams(const SncComplex& c) {
  auto diags = validate(c);
  if (hasErrors(diags))
    throw std::invalid_argument(
        "assembleDiagrams: complex fails validation: " +
        [&] {
          for (const auto& d : diags)
            if (d.severity == Severity::kError)
              return d.location + ": " + d.message;
          return std::string();
        }());
  DiagramMatrices d;
  d.delta = buildDelta(c);
  d.rho = buildRho(c);
  d.deltaPrime = buildDeltaPrime(c);
  d.rhoPrime = buildRhoPrime(c);
  d.componentOffsets = componentOffsets(c);
  d.pairOffsets = engine_detail::unitOffsets(c.pairs.size());
  d.tripleOffsets = engine_detail::unitOffsets(c.triples.size());
  return d;
}

/** Wrap externally supplied matrices, checking mutual shape consistency. */
inline DiagramMatrices diagramsFromMatrices(IntMatrix delta, IntMatrix rho,
                                            IntMatrix deltaPrime,
                                            IntMatrix rhoPrime) {
  if (delta.rows() != rho.cols())
    throw std::invalid_argument(
        "diagramsFromMatrices: delta rows and rho cols disagree");
  if (delta.cols() != rhoPrime.cols() || rho.rows() != deltaPrime.rows() ||
      delta.cols() != deltaPrime.rows() ||
      deltaPrime.cols() != rhoPrime.rows())
    throw std::invalid_argument(
        "diagramsFromMatrices: stratum block shapes disagree");
  DiagramMatrices d;
  d.componentOffsets = {0, delta.rows()};
  d.pairOffsets = engine_detail::unitOffsets(
      static_cast<std::size_t>(delta.cols()));
  d.tripleOffsets = engine_detail::unitOffsets(
      static_cast<std::size_t>(deltaPrime.cols()));
  d.delta = std::move(delta);
  d.rho = std::move(rho);
  d.deltaPrime = std::move(deltaPrime);
  d.rhoPrime = std::move(rhoPrime);
  return d;
}

/** Test the commuting square rho . delta = deltaPrime . rhoPrime. */
inline bool verifySquare(const DiagramMatrices& d) {
  if (d.rho.cols() != d.delta.rows() || d.deltaPrime.cols() != d.rhoPrime.rows() ||
      d.rho.rows() != d.deltaPrime.rows() || d.delta.cols() != d.rhoPrime.cols())
    throw std::invalid_argument("verifySquare: inconsistent shapes");
  IntMatrix lhs = d.rho * d.delta;
  IntMatrix rhs = d.deltaPrime * d.rhoPrime;
  return matEq(lhs, rhs);
}

/**
 * One pair curve's balance sheet: the degrees of its normal bundles in the
 * two components (self-intersections of its classes) plus the number of
 * triple points on it.  A smoothable normal crossing degeneration makes
 * every sheet sum to zero.
 */
struct FriedmanRecord {
  Index pairIndex = 0;
  Int normalDegreeI;
  Int normalDegreeJ;
  Int triplePoints;
  bool balanced = false;
};

inline std::vector<FriedmanRecord> friedmanCheck(const SncComplex& c) {
  engine_detail::requireAssemblable(c, "friedmanCheck");
  std::vector<FriedmanRecord> out;
  for (std::size_t p = 0; p < c.pairs.size(); ++p) {
    const auto& ps = c.pairs[p];
    const IntMatrix& pi = engine_detail::pairingOf(c, ps.i, "friedmanCheck");
    const IntMatrix& pj = engine_detail::pairingOf(c, ps.j, "friedmanCheck");
    FriedmanRecord r;
    r.pairIndex = static_cast<Index>(p);
    r.normalDegreeI = (ps.classInI.transpose() * pi * ps.classInI)(0, 0);
    r.normalDegreeJ = (ps.classInJ.transpose() * pj * ps.classInJ)(0, 0);
    r.triplePoints = Int(static_cast<long>(ps.triplesOn.size()));
    r.balanced = (r.normalDegreeI + r.normalDegreeJ + r.triplePoints == 0);
    out.push_back(std::move(r));
  }
  return out;
}

/** Saturated basis of the compatible classes: tuples restricting equally
 * to every pair curve, i.e. the kernel of rho. */
inline LatticeBasis<Int> compatibleClasses(const DiagramMatrices& d) {
  return kernelBasis(d.rho);
}

/**
 * Everything computed about one realization (rational or numerical) of a
 * complex: the maps, the compatible classes, the Chow group of the total
 * space as coker delta, the prelog subgroup it receives, and the saturation
 * of that subgroup's torsion-free image.
 */
struct PrelogSide {
  DiagramMatrices maps;
  LatticeBasis<Int> compatibleBasis;              // kernel of rho
  AbelianGroupPresentation<Int> chowGroup;        // cokernel of delta
  std::vector<IntVector> prelogGenerators;        // chow coords, one per basis row
  AbelianGroupPresentation<Int> prelogGroup;      // subgroup they generate
  IntMatrix compositeMatrix;  // free-quotient images of the basis, as rows
  LatticeBasis<Int> imageLattice;      // row span of compositeMatrix
  LatticeBasis<Int> saturatedBasis;    // saturation of imageLattice
  Int saturationIndex;                 // [saturatedBasis : imageLattice]
  bool deltaInjective = false;
  bool rhoSurjective = false;
  bool squareCommutes = false;
};

/** Run the full pipeline on assembled or raw matrices. */
inline PrelogSide analyzeDiagrams(DiagramMatrices d) {
  PrelogSide side;
  side.compatibleBasis = kernelBasis(d.rho);
  side.chowGroup = cokernel(d.delta);
  const Index s = side.compatibleBasis.rank();
  std::vector<IntVector> ambientGens;
  for (Index k = 0; k < s; ++k)
    ambientGens.push_back(
        side.compatibleBasis.generators.row(k).transpose());
  for (const auto& g : ambientGens)
    side.prelogGenerators.push_back(side.chowGroup.project(g));
  side.prelogGroup = subgroupStructure(ambientGens, side.chowGroup);
  side.compositeMatrix.resize(s, side.chowGroup.freeRank);
  for (Index k = 0; k < s; ++k)
    side.compositeMatrix.row(k) =
        side.chowGroup.projectFree(ambientGens[static_cast<std::size_t>(k)])
            .transpose();
  side.imageLattice = rowSpanLattice(side.compositeMatrix);
  side.saturatedBasis = saturate(side.imageLattice);
  side.saturationIndex =
      sublatticeIndex(side.imageLattice, side.saturatedBasis);
  side.deltaInjective = (matrixRank(d.delta) == d.delta.cols());
  auto rhoCoker = cokernel(d.rho);
  side.rhoSurjective =
      (rhoCoker.freeRank == 0 && rhoCoker.torsion.empty());
  side.squareCommutes = verifySquare(d);
  side.maps = std::move(d);
  return side;
}

/**
 * A complex with every component's divisor lattice replaced by its quotient
 * modulo the radical of the intersection pairing, together with the
 * block-diagonal quotient map on the ambient space.  Classes that intersect
 * everything trivially die here, so the quotient realizes numerical
 * equivalence for the surfaces this format carries.
 */
struct NumericalModel {
  SncComplex complex;
  IntMatrix ambientProjection;  // numerical ambient x rational ambient
};

inline NumericalModel numericalQuotient(const SncComplex& c) {
  engine_detail::requireAssemblable(c, "numericalQuotient");
  NumericalModel out;
  out.complex = c;
  auto off = componentOffsets(c);
  std::vector<IntMatrix> blocks;
  Index numTotal = 0;
  for (std::size_t k = 0; k < c.components.size(); ++k) {
    auto& comp = out.complex.components[k];
    auto it = comp.lattices.find(c.workingGrade);
    if (it == comp.lattices.end()) {
      blocks.push_back(IntMatrix(0, 0));
      continue;
    }
    ChowLattice& lat = it->second;
    if (lat.rank() == 0) {
      blocks.push_back(IntMatrix(0, 0));
      continue;
    }
    if (!lat.pairing)
      throw std::invalid_argument(
          "numericalQuotient: component " + std::to_string(k) +
          " carries no intersection pairing in the working grade");
    auto radical = kernelBasis(*lat.pairing);
    auto quo = cokernel(radical.generators.transpose());
    const IntMatrix q = quo.projection;  // torsion-free quotient
    const IntMatrix s = quo.lift;
    if (radical.rank() == 0) {
      blocks.push_back(q);
      numTotal += q.rows();
      continue;
    }
    ChowLattice reduced;
    reduced.grade = lat.grade;
    for (Index t = 0; t < q.rows(); ++t)
      reduced.basisNames.push_back(comp.name + ".num" + std::to_string(t));
    reduced.pairing = IntMatrix(s.transpose() * *lat.pairing * s);
    lat = std::move(reduced);
    blocks.push_back(q);
    numTotal += q.rows();
  }
  for (auto& p : out.complex.pairs) {
    p.classInI = blocks[static_cast<std::size_t>(p.i)] * p.classInI;
    p.classInJ = blocks[static_cast<std::size_t>(p.j)] * p.classInJ;
  }
  out.ambientProjection = IntMatrix::Zero(numTotal, off.back());
  Index row = 0;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const IntMatrix& b = blocks[k];
    if (b.rows() == 0) continue;
    out.ambientProjection.block(row, off[k], b.rows(), b.cols()) = b;
    row += b.rows();
  }
  return out;
}

/** How the rational prelog group lands in the numerical one. */
struct InducedMapReport {
  IntMatrix matrix;  // numerical coords of each rational generator's image
  bool surjective = false;
  bool isomorphism = false;
};

struct PrelogReport {
  PrelogSide rational;
  std::optional<PrelogSide> numerical;
  std::optional<InducedMapReport> inducedMap;
};

namespace engine_detail {

inline bool pairingsAvailable(const SncComplex& c) {
  for (const auto& comp : c.components) {
    const ChowLattice* lat = comp.lattice(c.workingGrade);
    if (lat && lat->rank() > 0 && !lat->pairing) return false;
  }
  return true;
}

inline InducedMapReport induceMap(const PrelogSide& rational,
                                  const PrelogSide& numerical,
                                  const IntMatrix& ambientProjection) {
  InducedMapReport rep;
  std::vector<IntVector> mappedGens;
  for (Index k = 0; k < rational.compatibleBasis.rank(); ++k)
    mappedGens.push_back(
        ambientProjection *
        rational.compatibleBasis.generators.row(k).transpose());
  std::vector<IntVector> numGens;
  for (Index k = 0; k < numerical.compatibleBasis.rank(); ++k)
    numGens.push_back(numerical.compatibleBasis.generators.row(k).transpose());
  rep.matrix.resize(numerical.prelogGroup.coordRank(),
                    static_cast<Index>(mappedGens.size()));
  for (std::size_t k = 0; k < mappedGens.size(); ++k) {
    auto coeffs =
        subgroupMember(mappedGens[k], numGens, numerical.chowGroup);
    if (!coeffs)
      throw std::logic_error(
          "induceMap: image of a compatible class is not compatible");
    rep.matrix.col(static_cast<Index>(k)) =
        numerical.prelogGroup.project(*coeffs);
  }
  rep.surjective = true;
  for (const auto& g : numGens)
    if (!subgroupMember(g, mappedGens, numerical.chowGroup)) {
      rep.surjective = false;
      break;
    }
  rep.isomorphism =
      rep.surjective &&
      rational.prelogGroup.freeRank == numerical.prelogGroup.freeRank &&
      rational.prelogGroup.torsion == numerical.prelogGroup.torsion;
  return rep;
}

}  // namespace engine_detail

/**
 * Full analysis of a complex: assemble the maps, compute the compatible
 * classes, the prelog subgroup of coker delta and its saturation, then
 * repeat on the numerical quotient (when pairings allow) and relate the
 * two through the induced map.
 */
inline PrelogReport analyze(const SncComplex& c) {
  PrelogReport rep;
  rep.rational = analyzeDiagrams(assembleDiagrams(c));
  if (engine_detail::pairingsAvailable(c)) {
    NumericalModel num = numericalQuotient(c);
    rep.numerical = analyzeDiagrams(assembleDiagrams(num.complex));
    rep.inducedMap = engine_detail::induceMap(rep.rational, *rep.numerical,
                                              num.ambientProjection);
  }
  return rep;
}

/** Analysis of externally supplied matrices (single anonymous block). */
inline PrelogReport analyzeMatrices(IntMatrix delta, IntMatrix rho,
                                    IntMatrix deltaPrime,
                                    IntMatrix rhoPrime) {
  PrelogReport rep;
  rep.rational = analyzeDiagrams(diagramsFromMatrices(
      std::move(delta), std::move(rho), std::move(deltaPrime),
      std::move(rhoPrime)));
  return rep;
}

/** True iff the tuple restricts equally to every pair curve. */
inline bool isPrelogClass(const DiagramMatrices& d, const IntVector& v) {
  if (v.size() != d.rho.cols())
    throw std::invalid_argument("isPrelogClass: wrong ambient dimension");
  IntVector r = d.rho * v;
  for (Index k = 0; k < r.size(); ++k)
    if (r(k) != 0) return false;
  return true;
}

inline bool isPrelogClass(const SncComplex& c, const DiagramMatrices& d,
                          const ClassTuple& t) {
  return isPrelogClass(d, flattenTuple(c, t));
}

/** Coordinates of a tuple's class in the cokernel-of-delta presentation. */
inline IntVector classInCokernel(const PrelogSide& side, const IntVector& v) {
  if (v.size() != side.chowGroup.ambientRank())
    throw std::invalid_argument("classInCokernel: wrong ambient dimension");
  return side.chowGroup.project(v);
}

/**
 * Total intersection degree sum_i alpha_i . beta_i through the component
 * pairings.  Requires alpha to satisfy the prelog condition — exactly what
 * makes the value depend only on beta's class modulo the pair curves.
 */
inline Int pairingTotal(const SncComplex& c, const DiagramMatrices& d,
                        const ClassTuple& alpha, const ClassTuple& beta) {
  IntVector a = flattenTuple(c, alpha);
  IntVector b = flattenTuple(c, beta);
  if (!isPrelogClass(d, a))
    throw std::invalid_argument(
        "pairingTotal: first argument must satisfy the prelog condition");
  auto off = componentOffsets(c);
  Int total = 0;
  for (std::size_t k = 0; k < c.components.size(); ++k) {
    const Index len = off[k + 1] - off[k];
    if (len == 0) continue;
    const IntMatrix& p =
        engine_detail::pairingOf(c, static_cast<int>(k), "pairingTotal");
    total += (a.segment(off[k], len).transpose() * p *
              b.segment(off[k], len))(0, 0);
  }
  return total;
}

/**
 * Express a class as an integer combination of given classes inside the
 * Chow group of the total space; all inputs are ambient tuples.
 */
inline std::optional<IntVector> membershipQuery(
    const PrelogSide& side, const IntVector& target,
    const std::vector<IntVector>& generators) {
  if (target.size() != side.chowGroup.ambientRank())
    throw std::invalid_argument("membershipQuery: wrong ambient dimension");
  return subgroupMember(target, generators, side.chowGroup);
}

/**
 * Divide a free-quotient class by r within the saturated lattice: returns
 * w with r . w = v when such a w exists there.
 */
inline std::optional<IntVector> divisibilityQuery(const PrelogSide& side,
                                                  const IntVector& v,
                                                  const Int& r) {
  if (r <= 0)
    throw std::invalid_argument("divisibilityQuery: divisor must be positive");
  if (v.size() != side.chowGroup.freeRank)
    throw std::invalid_argument(
        "divisibilityQuery: expected free-quotient coordinates");
  IntVector w(v.size());
  for (Index k = 0; k < v.size(); ++k) {
    if (v(k) % r != 0) return std::nullopt;
    w(k) = v(k) / r;
  }
  if (!member(side.saturatedBasis, w)) return std::nullopt;
  return w;
}

}  // namespace prelog

#endif  // PRELOG_ENGINE_HPP
