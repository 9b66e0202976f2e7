#ifndef PRELOG_GALLERY_HPP
#define PRELOG_GALLERY_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "prelog/engine.hpp"
#include "prelog/snc_model.hpp"

namespace prelog {

/** Labeled distinguished cycles on a fixed complex. */
using NamedTupleSet = std::vector<NamedClassTuple>;

/**
 * The plane blown up in k points: divisor basis (H, E1, ..., Ek) with
 * H.H = 1, Ei.Ei = -1 and all cross terms zero.
 */
inline Component blownUpPlane(int k, std::string name = "") {
  if (k < 0) throw std::invalid_argument("blownUpPlane: negative point count");
  Component c;
  c.name = name.empty() ? "Bl" + std::to_string(k) + "P2" : std::move(name);
  c.dimension = 2;
  ChowLattice lat;
  lat.grade = 1;
  lat.basisNames.push_back("H");
  for (int e = 1; e <= k; ++e)
    lat.basisNames.push_back("E" + std::to_string(e));
  IntMatrix p = -IntMatrix::Identity(k + 1, k + 1);
  p(0, 0) = 1;
  lat.pairing = std::move(p);
  c.lattices[1] = std::move(lat);
  return c;
}

/**
 * Central fibre of a degeneration of cubic surfaces: a plane blown up in
 * six points, a plane blown up in three, and a plane, glued pairwise along
 * rational curves around a single triple point.  The six points sit three
 * on each double curve of the first component, and the other three on the
 * remaining double curve, which fixes every intersection number below.
 */
inline SncComplex cubicDegeneration() {
  SncComplex c;
  Component x1 = blownUpPlane(6, "X1");
  x1.lattices.at(1).basisNames = {"H1", "E1", "E2", "E3", "E4", "E5", "E6"};
  Component x2 = blownUpPlane(3, "X2");
  x2.lattices.at(1).basisNames = {"H2", "E7", "E8", "E9"};
  Component x3 = blownUpPlane(0, "X3");
  x3.lattices.at(1).basisNames = {"H3"};
  c.components = {std::move(x1), std::move(x2), std::move(x3)};
  auto addPair = [&](int i, int j, std::vector<Int> ci, std::vector<Int> cj) {
    PairStratum p;
    p.i = i;
    p.j = j;
    p.classInI = vectorOf<Int>(ci);
    p.classInJ = vectorOf<Int>(cj);
    p.triplesOn = {0};
    c.pairs.push_back(std::move(p));
  };
  addPair(0, 1, {1, -1, -1, -1, 0, 0, 0}, {1, 0, 0, 0});
  addPair(0, 2, {1, 0, 0, 0, -1, -1, -1}, {1});
  addPair(1, 2, {1, -1, -1, -1}, {1});
  c.triples.push_back({0, 1, 2});
  c.workingGrade = 1;
  return c;
}

/**
 * The 27 lines on a cubic surface, traced through the degeneration: lines
 * through two of the first six base points, exceptional curves paired with
 * lines on the middle component, and pairs of exceptional curves completed
 * by a line on the plane.  Labels join the nonzero blocks with '|'.
 */
inline NamedTupleSet cubicLines() {
  NamedTupleSet out;
  auto zero = [](Index n) { return IntVector(IntVector::Zero(n)); };
  // Lines through base points i in {1,2,3} and j in {4,5,6}.
  for (int i = 1; i <= 3; ++i)
    for (int j = 4; j <= 6; ++j) {
      NamedClassTuple t;
      t.label = "H1-E" + std::to_string(i) + "-E" + std::to_string(j);
      IntVector b0 = zero(7);
      b0(0) = 1;
      b0(i) = -1;
      b0(j) = -1;
      t.value.blocks = {b0, zero(4), zero(1)};
      out.push_back(std::move(t));
    }
  // Exceptional curves over the first double curve's points, matched with
  // lines through the corresponding points of the middle component.
  for (int i = 1; i <= 3; ++i)
    for (int j = 7; j <= 9; ++j) {
      NamedClassTuple t;
      t.label = "E" + std::to_string(i) + "|H2-E" + std::to_string(j);
      IntVector b0 = zero(7);
      b0(i) = 1;
      IntVector b1 = zero(4);
      b1(0) = 1;
      b1(j - 6) = -1;
      t.value.blocks = {b0, b1, zero(1)};
      out.push_back(std::move(t));
    }
  // Exceptional curves over the other double curve, paired across to the
  // plane's line class.
  for (int i = 4; i <= 6; ++i)
    for (int j = 7; j <= 9; ++j) {
      NamedClassTuple t;
      t.label = "E" + std::to_string(i) + "|E" + std::to_string(j) + "|H3";
      IntVector b0 = zero(7);
      b0(i) = 1;
      IntVector b1 = zero(4);
      b1(j - 6) = 1;
      IntVector b2 = zero(1);
      b2(0) = 1;
      t.value.blocks = {b0, b1, b2};
      out.push_back(std::move(t));
    }
  return out;
}

/**
 * First subset (in lexicographic candidate order) of the given size whose
 * classes, taken in the torsion-free quotient of the Chow group of the
 * total space, span a saturated sublattice of full rank.
 *
 * @param c The complex the candidate tuples live on.
 * @param candidates Labeled tuples, searched in their given order.
 * @param size Requested subset size.
 * @returns The labels of the first such subset, or nothing. Size zero
 *   succeeds with an empty list.
 */
inline std::optional<std::vector<std::string>> findGeneratingSubset(
    const SncComplex& c, const NamedTupleSet& candidates, Index size) {
  if (size < 0 || static_cast<std::size_t>(size) > candidates.size())
    return std::nullopt;
  auto chow = cokernel(buildDelta(c));
  const Index n = static_cast<Index>(candidates.size());
  IntMatrix images(n, chow.freeRank);
  for (Index k = 0; k < n; ++k)
    images.row(k) =
        chow.projectFree(
                flattenTuple(c, candidates[static_cast<std::size_t>(k)].value))
            .transpose();
  if (matrixRank(images) < size) return std::nullopt;

  std::vector<Index> pick;
  IntMatrix stack(size, chow.freeRank);
  std::function<bool(Index)> grow = [&](Index next) -> bool {
    const Index depth = static_cast<Index>(pick.size());
    if (depth == size) {
      auto span = rowSpanLattice(stack.topRows(size));
      return span.rank() == size && isSaturated(span);
    }
    for (Index k = next; k < n; ++k) {
      if (n - k < size - depth) break;  // not enough candidates left
      stack.row(depth) = images.row(k);
      if (matrixRank(stack.topRows(depth + 1)) != depth + 1)
        continue;  // keep prefixes independent
      pick.push_back(k);
      if (grow(k + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  if (!grow(0)) return std::nullopt;
  std::vector<std::string> labels;
  for (Index k : pick)
    labels.push_back(candidates[static_cast<std::size_t>(k)].label);
  return labels;
}

namespace gallery_detail {

/** Divisor class glued onto the boundary edge leaving a hexagon in a given
 * torus direction, in the basis (H, E1, E2, E3); the six directions carry
 * the six (-1)-curves E1, H-E1-E2, E2, H-E2-E3, E3, H-E1-E3 in cyclic
 * order. */
inline IntVector hexagonEdgeClass(int da, int db) {
  auto v = [](Int h, Int e1, Int e2, Int e3) {
    return vectorOf<Int>({h, e1, e2, e3});
  };
  if (da == 1 && db == 0) return v(0, 1, 0, 0);     // E1
  if (da == 1 && db == 1) return v(1, -1, -1, 0);   // H-E1-E2
  if (da == 0 && db == 1) return v(0, 0, 1, 0);     // E2
  if (da == -1 && db == 0) return v(1, 0, -1, -1);  // H-E2-E3
  if (da == -1 && db == -1) return v(0, 0, 0, 1);   // E3
  if (da == 0 && db == -1) return v(1, -1, 0, -1);  // H-E1-E3
  throw std::logic_error("hexagonEdgeClass: not a hexagon direction");
}

}  // namespace gallery_detail

/**
 * Central fibre of a degeneration of a product of two elliptic curves:
 * nine three-point blow-ups of the plane tiling a torus as hexagons,
 * glued along their boundary (-1)-curves, with a triple point on every
 * corner of the tiling.  Components sit at positions (a, b) of a 3 x 3
 * torus grid; hexagon (a, b) is component 3a + b, and neighbors lie in
 * the directions (1,0), (0,1), (1,1).
 */
inline SncComplex ellipticProductDegeneration() {
  SncComplex c;
  auto idx = [](int a, int b) {
    return 3 * (((a % 3) + 3) % 3) + (((b % 3) + 3) % 3);
  };
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      c.components.push_back(
          blownUpPlane(3, "T" + std::to_string(a) + std::to_string(b)));
  const int dirs[3][2] = {{1, 0}, {0, 1}, {1, 1}};
  std::map<std::pair<int, int>, std::size_t> edgeAt;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (const auto& d : dirs) {
        PairStratum p;
        p.i = idx(a, b);
        p.j = idx(a + d[0], b + d[1]);
        p.classInI = gallery_detail::hexagonEdgeClass(d[0], d[1]);
        p.classInJ = gallery_detail::hexagonEdgeClass(-d[0], -d[1]);
        edgeAt[{std::min(p.i, p.j), std::max(p.i, p.j)}] = c.pairs.size();
        c.pairs.push_back(std::move(p));
      }
  auto addTriangle = [&](int v0, int v1, int v2) {
    int s[3] = {v0, v1, v2};
    std::sort(s, s + 3);
    const int t = static_cast<int>(c.triples.size());
    c.triples.push_back({s[0], s[1], s[2]});
    for (auto [x, y] : {std::pair{s[0], s[1]}, std::pair{s[0], s[2]},
                        std::pair{s[1], s[2]}})
      c.pairs[edgeAt.at({x, y})].triplesOn.push_back(t);
  };
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      addTriangle(idx(a, b), idx(a + 1, b), idx(a + 1, b + 1));
      addTriangle(idx(a, b), idx(a, b + 1), idx(a + 1, b + 1));
    }
  c.workingGrade = 1;
  normalizeComplex(c);
  return c;
}

/**
 * The three distinguished straight cycles on the elliptic degeneration:
 * red follows the (1,0) ring of hexagons as the specialization of
 * (elliptic curve) x (point), blue the (0,1) ring for (point) x (elliptic
 * curve), and green the diagonal (1,1) ring for the diagonal curve.  In
 * each supporting hexagon the class is the unique line through one blown
 * up point meeting the two traversed boundary edges in degree one and the
 * other four in degree zero.
 */
inline NamedTupleSet ellipticLineCycles() {
  auto idx = [](int a, int b) { return 3 * (a % 3) + (b % 3); };
  auto build = [&](std::string label, std::function<int(int)> hexAt,
                   std::vector<Int> cls) {
    NamedClassTuple t;
    t.label = std::move(label);
    t.value.blocks.assign(9, IntVector(IntVector::Zero(4)));
    for (int s = 0; s < 3; ++s)
      t.value.blocks[static_cast<std::size_t>(hexAt(s))] = vectorOf<Int>(cls);
    return t;
  };
  NamedTupleSet out;
  out.push_back(build("red", [&](int s) { return idx(s, 0); },
                      {1, -1, 0, 0}));  // H-E1 along the (1,0) ring
  out.push_back(build("green", [&](int s) { return idx(s, s); },
                      {1, 0, 0, -1}));  // H-E3 along the diagonal ring
  out.push_back(build("blue", [&](int s) { return idx(0, s); },
                      {1, 0, -1, 0}));  // H-E2 along the (0,1) ring
  return out;
}

/**
 * The smallest glued example: a plane and the Hirzebruch surface of degree
 * one, joined along a line identified with the (-1)-section.  Bases (L)
 * and (C0, F) with C0.C0 = -1, C0.F = 1, F.F = 0.
 */
inline SncComplex p2F1Example() {
  SncComplex c;
  Component p2;
  p2.name = "P2";
  p2.dimension = 2;
  ChowLattice l0;
  l0.grade = 1;
  l0.basisNames = {"L"};
  l0.pairing = IntMatrix(IntMatrix::Identity(1, 1));
  p2.lattices[1] = std::move(l0);
  Component f1;
  f1.name = "F1";
  f1.dimension = 2;
  ChowLattice l1;
  l1.grade = 1;
  l1.basisNames = {"C0", "F"};
  l1.pairing = matrixFromRows<Int>({{-1, 1}, {1, 0}});
  f1.lattices[1] = std::move(l1);
  c.components = {std::move(p2), std::move(f1)};
  PairStratum p;
  p.i = 0;
  p.j = 1;
  p.classInI = vectorOf<Int>({1});
  p.classInJ = vectorOf<Int>({1, 0});
  c.pairs.push_back(std::move(p));
  c.workingGrade = 1;
  return c;
}

/** Look up a gallery complex by its command-line name. */
inline std::optional<SncComplex> exampleByName(const std::string& name) {
  if (name == "cubic") return cubicDegeneration();
  if (name == "elliptic") return ellipticProductDegeneration();
  if (name == "p2f1") return p2F1Example();
  return std::nullopt;
}

}  // namespace prelog

#endif  // PRELOG_GALLERY_HPP
