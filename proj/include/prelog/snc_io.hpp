#ifndef PRELOG_SNC_IO_HPP
#define PRELOG_SNC_IO_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "../../vendor/json.hpp"
#include "prelog/snc_model.hpp"

namespace prelog {

/** Raised on malformed input: JSON syntax errors or schema violations. */
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace io_detail {

using nlohmann::json;

inline json parseText(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("syntax error: ") + e.what());
  }
}

inline const json& field(const json& obj, const char* key,
                         const std::string& path) {
  if (!obj.is_object())
    throw ParseError(path + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end())
    throw ParseError(path + "." + key + ": missing required field");
  return *it;
}

inline std::string asString(const json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path + ": expected a string");
  return j.get<std::string>();
}

inline const json& asArray(const json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path + ": expected an array");
  return j;
}

}  // namespace io_detail

/**
 * Read one integer from JSON.  Accepts native integers and decimal strings
 * (the serializer switches to strings beyond 2^53, where JSON numbers stop
 * being exact); rejects floating point outright.
 */
inline Int jsonToInt(const nlohmann::json& j, const std::string& path) {
  if (j.is_number_float())
    throw ParseError(path + ": floating point where an integer is required");
  if (j.is_number_unsigned())
    return Int(static_cast<unsigned long>(j.get<std::uint64_t>()));
  if (j.is_number_integer())
    return Int(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) {
    try {
      return intFromDecimal(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ParseError(path + ": " + e.what());
    }
  }
  throw ParseError(path + ": expected an integer or a decimal string");
}

/** Write one integer to JSON: a number below 2^53 in magnitude, else a
 * decimal string, keeping every value exact for standard JSON readers. */
inline nlohmann::json jsonFromInt(const Int& v) {
  static const Int kExactLimit = Int(1) << 53;
  if (absVal(v) < kExactLimit)
    return nlohmann::json(static_cast<std::int64_t>(v.get_si()));
  return nlohmann::json(v.get_str());
}

inline int jsonToSmallInt(const nlohmann::json& j, const std::string& path) {
  Int v = jsonToInt(j, path);
  if (!v.fits_sint_p()) throw ParseError(path + ": value out of int range");
  return static_cast<int>(v.get_si());
}

inline IntVector jsonToVector(const nlohmann::json& j,
                              const std::string& path) {
  const auto& arr = io_detail::asArray(j, path);
  IntVector v(static_cast<Index>(arr.size()));
  for (std::size_t k = 0; k < arr.size(); ++k)
    v(static_cast<Index>(k)) =
        jsonToInt(arr[k], path + "[" + std::to_string(k) + "]");
  return v;
}

inline nlohmann::json jsonFromVector(const IntVector& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (Index k = 0; k < v.size(); ++k) arr.push_back(jsonFromInt(v(k)));
  return arr;
}

/** Parse an array of equal-length rows; [] yields a 0 x 0 matrix. */
inline IntMatrix jsonToMatrix(const nlohmann::json& j,
                              const std::string& path) {
  const auto& arr = io_detail::asArray(j, path);
  if (arr.empty()) return IntMatrix(0, 0);
  std::vector<IntVector> rows;
  for (std::size_t r = 0; r < arr.size(); ++r) {
    rows.push_back(jsonToVector(arr[r], path + "[" + std::to_string(r) + "]"));
    if (rows.back().size() != rows.front().size())
      throw ParseError(path + "[" + std::to_string(r) +
                       "]: rows have unequal lengths");
  }
  IntMatrix m(static_cast<Index>(rows.size()), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    m.row(static_cast<Index>(r)) = rows[r].transpose();
  return m;
}

inline nlohmann::json jsonFromMatrix(const IntMatrix& m) {
  nlohmann::json arr = nlohmann::json::array();
  for (Index r = 0; r < m.rows(); ++r)
    arr.push_back(jsonFromVector(m.row(r).transpose()));
  return arr;
}

/** Build the canonical JSON value for a complex (normalized order). */
inline nlohmann::json complexToJson(const SncComplex& input) {
  using nlohmann::json;
  SncComplex c = input;
  normalizeComplex(c);
  json root = json::object();
  json comps = json::array();
  for (const auto& comp : c.components) {
    json jc = json::object();
    jc["name"] = comp.name;
    jc["dimension"] = comp.dimension;
    json lats = json::object();
    for (const auto& [grade, lat] : comp.lattices) {
      json jl = json::object();
      jl["basis_names"] = lat.basisNames;
      if (lat.pairing) jl["pairing"] = jsonFromMatrix(*lat.pairing);
      lats[std::to_string(grade)] = std::move(jl);
    }
    jc["lattices"] = std::move(lats);
    comps.push_back(std::move(jc));
  }
  root["components"] = std::move(comps);
  json pairs = json::array();
  for (const auto& p : c.pairs) {
    json jp = json::object();
    jp["i"] = p.i;
    jp["j"] = p.j;
    jp["stratum_rank"] = p.stratumRank;
    jp["class_in_i"] = jsonFromVector(p.classInI);
    jp["class_in_j"] = jsonFromVector(p.classInJ);
    jp["triples_on"] = p.triplesOn;
    pairs.push_back(std::move(jp));
  }
  root["pairs"] = std::move(pairs);
  json triples = json::array();
  for (const auto& t : c.triples) {
    json jt = json::object();
    jt["a"] = t.a;
    jt["b"] = t.b;
    jt["c"] = t.c;
    triples.push_back(std::move(jt));
  }
  root["triples"] = std::move(triples);
  root["working_grade"] = c.workingGrade;
  return root;
}

/** Canonical text form: sorted keys, two-space indent, trailing newline.
 * Serializing, parsing, and serializing again reproduces the same bytes. */
inline std::string serializeComplex(const SncComplex& c) {
  return complexToJson(c).dump(2) + "\n";
}

inline SncComplex jsonToComplex(const nlohmann::json& root) {
  using io_detail::asArray;
  using io_detail::asString;
  using io_detail::field;
  if (!root.is_object())
    throw ParseError("$: expected a top-level object");
  SncComplex c;
  c.workingGrade = jsonToSmallInt(field(root, "working_grade", "$"),
                                  "$.working_grade");
  const auto& comps = asArray(field(root, "components", "$"), "$.components");
  for (std::size_t k = 0; k < comps.size(); ++k) {
    std::string base = "$.components[" + std::to_string(k) + "]";
    const auto& jc = comps[k];
    Component comp;
    comp.name = asString(field(jc, "name", base), base + ".name");
    comp.dimension =
        jsonToSmallInt(field(jc, "dimension", base), base + ".dimension");
    if (jc.contains("lattices")) {
      const auto& lats = jc["lattices"];
      if (!lats.is_object())
        throw ParseError(base + ".lattices: expected an object");
      for (const auto& [key, jl] : lats.items()) {
        std::string lbase = base + ".lattices[" + key + "]";
        std::size_t used = 0;
        int grade = 0;
        try {
          grade = std::stoi(key, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != key.size())
          throw ParseError(lbase + ": key is not an integer grade");
        ChowLattice lat;
        lat.grade = grade;
        const auto& names =
            asArray(field(jl, "basis_names", lbase), lbase + ".basis_names");
        for (std::size_t n = 0; n < names.size(); ++n)
          lat.basisNames.push_back(asString(
              names[n], lbase + ".basis_names[" + std::to_string(n) + "]"));
        if (jl.contains("pairing"))
          lat.pairing = jsonToMatrix(jl["pairing"], lbase + ".pairing");
        comp.lattices[grade] = std::move(lat);
      }
    }
    c.components.push_back(std::move(comp));
  }
  const auto& pairs = asArray(field(root, "pairs", "$"), "$.pairs");
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    std::string base = "$.pairs[" + std::to_string(k) + "]";
    const auto& jp = pairs[k];
    PairStratum p;
    p.i = jsonToSmallInt(field(jp, "i", base), base + ".i");
    p.j = jsonToSmallInt(field(jp, "j", base), base + ".j");
    p.stratumRank = jp.contains("stratum_rank")
                        ? jsonToSmallInt(jp["stratum_rank"],
                                         base + ".stratum_rank")
                        : 1;
    p.classInI =
        jsonToVector(field(jp, "class_in_i", base), base + ".class_in_i");
    p.classInJ =
        jsonToVector(field(jp, "class_in_j", base), base + ".class_in_j");
    if (jp.contains("triples_on")) {
      const auto& tOn = asArray(jp["triples_on"], base + ".triples_on");
      for (std::size_t n = 0; n < tOn.size(); ++n)
        p.triplesOn.push_back(jsonToSmallInt(
            tOn[n], base + ".triples_on[" + std::to_string(n) + "]"));
    }
    c.pairs.push_back(std::move(p));
  }
  const auto& triples = asArray(field(root, "triples", "$"), "$.triples");
  for (std::size_t k = 0; k < triples.size(); ++k) {
    std::string base = "$.triples[" + std::to_string(k) + "]";
    const auto& jt = triples[k];
    TripleStratum t;
    t.a = jsonToSmallInt(field(jt, "a", base), base + ".a");
    t.b = jsonToSmallInt(field(jt, "b", base), base + ".b");
    t.c = jsonToSmallInt(field(jt, "c", base), base + ".c");
    c.triples.push_back(t);
  }
  normalizeComplex(c);
  return c;
}

/**
 * Parse a complex from text.  Syntax errors carry line and column from the
 * JSON reader; schema violations name the offending field path.  The result
 * is in canonical order, so parse and serialize are mutually inverse on
 * canonical documents.
 */
inline SncComplex parseComplex(const std::string& text) {
  return jsonToComplex(io_detail::parseText(text));
}

/** The four boundary maps given directly, bypassing any complex. */
struct RawDiagrams {
  IntMatrix delta;
  IntMatrix rho;
  IntMatrix deltaPrime;
  IntMatrix rhoPrime;
};

namespace io_detail {

inline IntMatrix sizedMatrix(const json& j, const std::string& path) {
  Index rows = static_cast<Index>(
      jsonToSmallInt(field(j, "rows", path), path + ".rows"));
  Index cols = static_cast<Index>(
      jsonToSmallInt(field(j, "cols", path), path + ".cols"));
  if (rows < 0 || cols < 0)
    throw ParseError(path + ": negative dimensions");
  const auto& entries = asArray(field(j, "entries", path), path + ".entries");
  if (static_cast<Index>(entries.size()) != rows * cols)
    throw ParseError(path + ".entries: expected " +
                     std::to_string(rows * cols) + " row-major entries, got " +
                     std::to_string(entries.size()));
  IntMatrix m(rows, cols);
  for (Index r = 0; r < rows; ++r)
    for (Index cc = 0; cc < cols; ++cc)
      m(r, cc) = jsonToInt(entries[static_cast<std::size_t>(r * cols + cc)],
                           path + ".entries[" +
                               std::to_string(r * cols + cc) + "]");
  return m;
}

inline json sizedMatrixJson(const IntMatrix& m) {
  json out = json::object();
  out["rows"] = m.rows();
  out["cols"] = m.cols();
  json entries = json::array();
  for (Index r = 0; r < m.rows(); ++r)
    for (Index cc = 0; cc < m.cols(); ++cc)
      entries.push_back(jsonFromInt(m(r, cc)));
  out["entries"] = std::move(entries);
  return out;
}

}  // namespace io_detail

inline RawDiagrams parseRawDiagrams(const std::string& text) {
  using io_detail::field;
  nlohmann::json j = io_detail::parseText(text);
  if (!j.is_object()) throw ParseError("$: expected a top-level object");
  RawDiagrams d;
  d.delta = io_detail::sizedMatrix(field(j, "delta", "$"), "$.delta");
  d.rho = io_detail::sizedMatrix(field(j, "rho", "$"), "$.rho");
  d.deltaPrime =
      io_detail::sizedMatrix(field(j, "delta_prime", "$"), "$.delta_prime");
  d.rhoPrime =
      io_detail::sizedMatrix(field(j, "rho_prime", "$"), "$.rho_prime");
  if (d.delta.rows() != d.rho.cols())
    throw ParseError("$: delta rows and rho cols disagree");
  if (d.rho.rows() != d.deltaPrime.rows())
    throw ParseError("$: rho rows and delta_prime rows disagree");
  if (d.delta.cols() != d.rhoPrime.cols())
    throw ParseError("$: delta cols and rho_prime cols disagree");
  if (d.deltaPrime.cols() != d.rhoPrime.rows())
    throw ParseError("$: delta_prime cols and rho_prime rows disagree");
  return d;
}

inline std::string serializeRawDiagrams(const RawDiagrams& d) {
  nlohmann::json j = nlohmann::json::object();
  j["delta"] = io_detail::sizedMatrixJson(d.delta);
  j["rho"] = io_detail::sizedMatrixJson(d.rho);
  j["delta_prime"] = io_detail::sizedMatrixJson(d.deltaPrime);
  j["rho_prime"] = io_detail::sizedMatrixJson(d.rhoPrime);
  return j.dump(2) + "\n";
}

/**
 * Parse a list of labeled cycles and check each one's blocks against the
 * complex: one block per component, sized by its working-grade basis.
 */
inline std::vector<NamedClassTuple> parseCycles(const std::string& text,
                                                const SncComplex& c) {
  using io_detail::asArray;
  using io_detail::asString;
  using io_detail::field;
  nlohmann::json j = io_detail::parseText(text);
  if (!j.is_object()) throw ParseError("$: expected a top-level object");
  const auto& arr = asArray(field(j, "cycles", "$"), "$.cycles");
  std::vector<NamedClassTuple> out;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    std::string base = "$.cycles[" + std::to_string(k) + "]";
    const auto& jc = arr[k];
    NamedClassTuple cyc;
    cyc.label = asString(field(jc, "label", base), base + ".label");
    const auto& blocks = asArray(field(jc, "blocks", base), base + ".blocks");
    if (blocks.size() != c.components.size())
      throw ParseError(base + ".blocks: expected " +
                       std::to_string(c.components.size()) +
                       " blocks, one per component");
    for (std::size_t n = 0; n < blocks.size(); ++n) {
      std::string bpath = base + ".blocks[" + std::to_string(n) + "]";
      IntVector block = jsonToVector(blocks[n], bpath);
      if (block.size() != workingRank(c, static_cast<int>(n)))
        throw ParseError(bpath + ": expected " +
                         std::to_string(workingRank(c, static_cast<int>(n))) +
                         " entries for this component");
      cyc.value.blocks.push_back(std::move(block));
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

inline std::string serializeCycles(const std::vector<NamedClassTuple>& cycles) {
  nlohmann::json root = nlohmann::json::object();
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& cyc : cycles) {
    nlohmann::json jc = nlohmann::json::object();
    jc["label"] = cyc.label;
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& b : cyc.value.blocks) blocks.push_back(jsonFromVector(b));
    jc["blocks"] = std::move(blocks);
    arr.push_back(std::move(jc));
  }
  root["cycles"] = std::move(arr);
  return root.dump(2) + "\n";
}

}  // namespace prelog

#endif  // PRELOG_SNC_IO_HPP
