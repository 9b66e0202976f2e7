#ifndef PRELOG_SNC_MODEL_HPP
#define PRELOG_SNC_MODEL_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "prelog/numeric.hpp"

namespace prelog {

/** Shape-safe matrix equality (Eigen asserts on mismatched shapes). */
inline bool matEq(const IntMatrix& a, const IntMatrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         (a.size() == 0 || a == b);
}

inline bool vecEq(const IntVector& a, const IntVector& b) {
  return a.size() == b.size() && (a.size() == 0 || a == b);
}

/**
 * The Chow lattice of one component in one grade: a chosen basis of cycle
 * classes, plus the intersection pairing between basis elements when the
 * component's geometry provides one (always for divisors on surfaces).
 */
struct ChowLattice {
  int grade = 0;
  std::vector<std::string> basisNames;
  std::optional<IntMatrix> pairing;

  Index rank() const { return static_cast<Index>(basisNames.size()); }

  friend bool operator==(const ChowLattice& x, const ChowLattice& y) {
    if (x.grade != y.grade || x.basisNames != y.basisNames) return false;
    if (x.pairing.has_value() != y.pairing.has_value()) return false;
    return !x.pairing || matEq(*x.pairing, *y.pairing);
  }
};

/** One smooth irreducible component of the normal crossing variety. */
struct Component {
  std::string name;
  int dimension = 0;
  std::map<int, ChowLattice> lattices;  // keyed by grade

  const ChowLattice* lattice(int grade) const {
    auto it = lattices.find(grade);
    return it == lattices.end() ? nullptr : &it->second;
  }

  friend bool operator==(const Component&, const Component&) = default;
};

/**
 * A connected double intersection X_i ∩ X_j, carried by its divisor classes
 * on the two incident components.  Two components intersecting in several
 * connected pieces are encoded as several strata with the same (i, j).
 */
struct PairStratum {
  int i = 0;
  int j = 0;
  int stratumRank = 1;
  IntVector classInI;
  IntVector classInJ;
  std::vector<int> triplesOn;  // indices into SncComplex::triples

  friend bool operator==(const PairStratum& x, const PairStratum& y) {
    return x.i == y.i && x.j == y.j && x.stratumRank == y.stratumRank &&
           vecEq(x.classInI, y.classInI) && vecEq(x.classInJ, y.classInJ) &&
           x.triplesOn == y.triplesOn;
  }
};

/** A triple intersection point X_a ∩ X_b ∩ X_c, with a < b < c. */
struct TripleStratum {
  int a = 0;
  int b = 0;
  int c = 0;

  friend bool operator==(const TripleStratum&, const TripleStratum&) = default;
};

/**
 * Combinatorial intersection data of a normal crossing variety with at
 * worst triple intersections, in a fixed working grade.
 */
struct SncComplex {
  std::vector<Component> components;
  std::vector<PairStratum> pairs;
  std::vector<TripleStratum> triples;
  int workingGrade = 1;

  friend bool operator==(const SncComplex&, const SncComplex&) = default;
};

/** Per-component class vectors in the working grade. */
struct ClassTuple {
  std::vector<IntVector> blocks;

  friend bool operator==(const ClassTuple& x, const ClassTuple& y) {
    if (x.blocks.size() != y.blocks.size()) return false;
    for (std::size_t k = 0; k < x.blocks.size(); ++k)
      if (!vecEq(x.blocks[k], y.blocks[k])) return false;
    return true;
  }
};

struct NamedClassTuple {
  std::string label;
  ClassTuple value;

  friend bool operator==(const NamedClassTuple&, const NamedClassTuple&) = default;
};

/** Rank of a component's lattice in the working grade (0 when absent). */
inline Index workingRank(const SncComplex& c, int componentIndex) {
  const ChowLattice* l =
      c.components[static_cast<std::size_t>(componentIndex)].lattice(
          c.workingGrade);
  return l ? l->rank() : 0;
}

/** Offsets of each component's block in the concatenated ambient vector. */
inline std::vector<Index> componentOffsets(const SncComplex& c) {
  std::vector<Index> off(c.components.size() + 1, 0);
  for (std::size_t k = 0; k < c.components.size(); ++k)
    off[k + 1] = off[k] + workingRank(c, static_cast<int>(k));
  return off;
}

/** Concatenate per-component blocks into one ambient vector. */
inline IntVector flattenTuple(const SncComplex& c, const ClassTuple& t) {
  auto off = componentOffsets(c);
  if (t.blocks.size() != c.components.size())
    throw std::invalid_argument("flattenTuple: wrong number of blocks");
  IntVector out = IntVector::Zero(off.back());
  for (std::size_t k = 0; k < t.blocks.size(); ++k) {
    if (t.blocks[k].size() != off[k + 1] - off[k])
      throw std::invalid_argument("flattenTuple: block size mismatch");
    out.segment(off[k], t.blocks[k].size()) = t.blocks[k];
  }
  return out;
}

/** Split an ambient vector back into per-component blocks. */
inline ClassTuple unflattenTuple(const SncComplex& c, const IntVector& v) {
  auto off = componentOffsets(c);
  if (v.size() != off.back())
    throw std::invalid_argument("unflattenTuple: wrong ambient dimension");
  ClassTuple t;
  for (std::size_t k = 0; k < c.components.size(); ++k)
    t.blocks.push_back(v.segment(off[k], off[k + 1] - off[k]));
  return t;
}

enum class Severity { kWarning, kError };

struct Diagnostic {
  Severity severity = Severity::kError;
  std::string location;
  std::string message;
};

inline bool hasErrors(const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags)
    if (d.severity == Severity::kError) return true;
  return false;
}

/**
 * Bring a complex to canonical order: each pair gets i < j (swapping the
 * two class vectors along the way), each triple gets a < b < c, pairs are
 * sorted by (i, j) and triples by (a, b, c), and triple references are
 * remapped through the sort.  Classes are stored per component, so all of
 * this is pure relabeling; the sign conventions downstream depend only on
 * the normalized order.
 */
inline void normalizeComplex(SncComplex& c) {
  for (auto& p : c.pairs)
    if (p.i > p.j) {
      std::swap(p.i, p.j);
      std::swap(p.classInI, p.classInJ);
    }
  for (auto& t : c.triples) {
    int v[3] = {t.a, t.b, t.c};
    std::sort(v, v + 3);
    t.a = v[0], t.b = v[1], t.c = v[2];
  }
  // Sort triples and remember where each one went.
  std::vector<int> perm(c.triples.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](int x, int y) {
    const auto& s = c.triples[static_cast<std::size_t>(x)];
    const auto& t = c.triples[static_cast<std::size_t>(y)];
    return std::tie(s.a, s.b, s.c) < std::tie(t.a, t.b, t.c);
  });
  std::vector<int> where(perm.size());
  std::vector<TripleStratum> sortedTriples(c.triples.size());
  for (std::size_t n = 0; n < perm.size(); ++n) {
    where[static_cast<std::size_t>(perm[n])] = static_cast<int>(n);
    sortedTriples[n] = c.triples[static_cast<std::size_t>(perm[n])];
  }
  c.triples = std::move(sortedTriples);
  for (auto& p : c.pairs) {
    for (auto& t : p.triplesOn)
      if (t >= 0 && static_cast<std::size_t>(t) < where.size())
        t = where[static_cast<std::size_t>(t)];
    std::sort(p.triplesOn.begin(), p.triplesOn.end());
  }
  std::stable_sort(c.pairs.begin(), c.pairs.end(),
                   [](const PairStratum& x, const PairStratum& y) {
                     return std::tie(x.i, x.j) < std::tie(y.i, y.j);
                   });
}

/**
 * Check every structural invariant of a complex and report violations as
 * diagnostics rather than exceptions.  Errors mark invariant violations;
 * the only warning is a disconnected dual graph, which the format permits.
 *
 * @returns Diagnostics with locations; free of kError entries iff the
 *   complex is structurally valid.
 */
inline std::vector<Diagnostic> validate(const SncComplex& c) {
  std::vector<Diagnostic> out;
  auto err = [&](std::string loc, std::string msg) {
    out.push_back({Severity::kError, std::move(loc), std::move(msg)});
  };
  const int nc = static_cast<int>(c.components.size());

  if (c.workingGrade < 0)
    err("working_grade", "working grade must be nonnegative");

  for (int k = 0; k < nc; ++k) {
    const auto& comp = c.components[static_cast<std::size_t>(k)];
    std::string base = "components[" + std::to_string(k) + "]";
    if (comp.dimension < 0) err(base + ".dimension", "negative dimension");
    for (const auto& [grade, lat] : comp.lattices) {
      std::string loc = base + ".lattices[" + std::to_string(grade) + "]";
      if (grade < 0 || grade > comp.dimension)
        err(loc, "grade outside 0..dimension");
      if (lat.grade != grade) err(loc, "grade label disagrees with key");
      if (lat.pairing) {
        const IntMatrix& p = *lat.pairing;
        if (p.rows() != lat.rank() || p.cols() != lat.rank())
          err(loc + ".pairing", "pairing is not square of basis size");
        else if (p.transpose() != p)
          err(loc + ".pairing", "pairing is not symmetric");
      }
    }
  }

  const int np = static_cast<int>(c.pairs.size());
  const int nt = static_cast<int>(c.triples.size());
  for (int k = 0; k < np; ++k) {
    const auto& p = c.pairs[static_cast<std::size_t>(k)];
    std::string base = "pairs[" + std::to_string(k) + "]";
    if (p.i < 0 || p.i >= nc || p.j < 0 || p.j >= nc) {
      err(base, "component index out of range");
      continue;
    }
    if (p.i >= p.j) err(base, "components must satisfy i < j");
    if (p.stratumRank < 1) err(base + ".stratum_rank", "rank must be >= 1");
    if (p.classInI.size() != workingRank(c, p.i))
      err(base + ".class_in_i", "length differs from component basis");
    if (p.classInJ.size() != workingRank(c, p.j))
      err(base + ".class_in_j", "length differs from component basis");
    std::vector<int> seen;
    for (int t : p.triplesOn) {
      if (t < 0 || t >= nt) {
        err(base + ".triples_on", "triple index out of range");
        continue;
      }
      if (std::find(seen.begin(), seen.end(), t) != seen.end())
        err(base + ".triples_on", "duplicate triple reference");
      seen.push_back(t);
      const auto& tri = c.triples[static_cast<std::size_t>(t)];
      bool incident = (p.i == tri.a && p.j == tri.b) ||
                      (p.i == tri.a && p.j == tri.c) ||
                      (p.i == tri.b && p.j == tri.c);
      if (!incident)
        err(base + ".triples_on",
            "listed triple does not touch this component pair");
    }
  }

  for (int k = 0; k < nt; ++k) {
    const auto& t = c.triples[static_cast<std::size_t>(k)];
    std::string base = "triples[" + std::to_string(k) + "]";
    if (t.a < 0 || t.a >= nc || t.b < 0 || t.b >= nc || t.c < 0 || t.c >= nc) {
      err(base, "component index out of range");
      continue;
    }
    if (!(t.a < t.b && t.b < t.c)) {
      err(base, "components must satisfy a < b < c");
      continue;
    }
    // Each of the three edges must carry this triple on exactly one stratum.
    const std::pair<int, int> edges[3] = {
        {t.a, t.b}, {t.a, t.c}, {t.b, t.c}};
    for (const auto& [x, y] : edges) {
      int carriers = 0;
      bool edgeExists = false;
      for (const auto& p : c.pairs) {
        if (p.i != x || p.j != y) continue;
        edgeExists = true;
        carriers += static_cast<int>(
            std::count(p.triplesOn.begin(), p.triplesOn.end(), k));
      }
      if (!edgeExists)
        err(base, "pair (" + std::to_string(x) + "," + std::to_string(y) +
                      ") of this triple does not exist");
      else if (carriers != 1)
        err(base, "pair (" + std::to_string(x) + "," + std::to_string(y) +
                      ") must list this triple exactly once");
    }
  }

  // Dual-graph connectivity (permitted, but worth flagging).
  if (nc > 1) {
    std::vector<int> parent(static_cast<std::size_t>(nc));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
      while (parent[static_cast<std::size_t>(x)] != x)
        x = parent[static_cast<std::size_t>(x)] =
            parent[static_cast<std::size_t>(
                parent[static_cast<std::size_t>(x)])];
      return x;
    };
    for (const auto& p : c.pairs)
      if (p.i >= 0 && p.i < nc && p.j >= 0 && p.j < nc)
        parent[static_cast<std::size_t>(find(p.i))] = find(p.j);
    int roots = 0;
    for (int k = 0; k < nc; ++k)
      if (find(k) == k) ++roots;
    if (roots > 1)
      out.push_back({Severity::kWarning, "components",
                     "dual graph is disconnected (" + std::to_string(roots) +
                         " pieces)"});
  }
  return out;
}

}  // namespace prelog

#endif  // PRELOG_SNC_MODEL_HPP
