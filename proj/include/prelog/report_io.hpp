#ifndef PRELOG_REPORT_IO_HPP
#define PRELOG_REPORT_IO_HPP

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "prelog/engine.hpp"
#include "prelog/snc_io.hpp"

namespace prelog {

/** Mod-p ranks of the composite map, keyed by characteristic. */
using ModPRanks = std::vector<std::pair<Int, Index>>;

/**
 * Ranks of the composite map in the requested prime characteristics,
 * sorted ascending with duplicates removed.
 */
inline ModPRanks compositeRanksModP(const PrelogSide& side,
                                    std::vector<Int> characteristics) {
  std::sort(characteristics.begin(), characteristics.end());
  characteristics.erase(
      std::unique(characteristics.begin(), characteristics.end()),
      characteristics.end());
  ModPRanks out;
  for (const auto& p : characteristics)
    out.emplace_back(p, rankModP(side.compositeMatrix, p));
  return out;
}

/**
 * Display name of a finitely generated abelian group: "0", "Z", "Z^n",
 * with torsion factors appended as "+ Z/d".
 */
inline std::string formatGroupName(Index freeRank,
                                   const std::vector<Int>& torsion) {
  std::vector<std::string> parts;
  if (freeRank == 1) parts.push_back("Z");
  if (freeRank > 1) parts.push_back("Z^" + std::to_string(freeRank));
  for (const auto& d : torsion) parts.push_back("Z/" + d.get_str());
  if (parts.empty()) return "0";
  std::string out = parts.front();
  for (std::size_t k = 1; k < parts.size(); ++k) out += " + " + parts[k];
  return out;
}

inline std::string formatGroupName(const AbelianGroupPresentation<Int>& g) {
  return formatGroupName(g.freeRank, g.torsion);
}

namespace report_detail {

inline nlohmann::json groupJson(const AbelianGroupPresentation<Int>& g) {
  nlohmann::json j = nlohmann::json::object();
  j["free_rank"] = static_cast<long long>(g.freeRank);
  nlohmann::json tor = nlohmann::json::array();
  for (const auto& d : g.torsion) tor.push_back(jsonFromInt(d));
  j["torsion"] = std::move(tor);
  return j;
}

inline nlohmann::json rowsJson(const IntMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(jsonFromInt(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline nlohmann::json diagnosticsJson(const PrelogSide& side) {
  nlohmann::json j = nlohmann::json::object();
  j["compatible_rank"] = static_cast<long long>(side.compatibleBasis.rank());
  j["composite_rank"] = static_cast<long long>(side.imageLattice.rank());
  j["delta_injective"] = side.deltaInjective;
  j["rho_surjective"] = side.rhoSurjective;
  j["saturation_index"] = jsonFromInt(side.saturationIndex);
  j["square_commutes"] = side.squareCommutes;
  return j;
}

inline std::string rowText(const IntMatrix& m, Index i) {
  std::string out = "[";
  for (Index j = 0; j < m.cols(); ++j) {
    out += " " + m(i, j).get_str();
  }
  out += " ]";
  return out;
}

}  // namespace report_detail

/**
 * Structured report document: group types as {"free_rank", "torsion"},
 * generator matrices as integer rows, diagnostics as named scalars.
 */
inline nlohmann::json reportToJson(const PrelogReport& report,
                                   const ModPRanks& modP = {}) {
  using report_detail::diagnosticsJson;
  using report_detail::groupJson;
  using report_detail::rowsJson;
  const PrelogSide& side = report.rational;
  nlohmann::json j = nlohmann::json::object();
  j["chow_of_X"] = groupJson(side.chowGroup);
  j["prelog_group"] = groupJson(side.prelogGroup);
  j["compatible_basis"] = rowsJson(side.compatibleBasis.generators);
  j["saturated_basis"] = rowsJson(side.saturatedBasis.generators);
  j["diagnostics"] = diagnosticsJson(side);
  nlohmann::json ranks = nlohmann::json::array();
  for (const auto& [p, r] : modP) {
    nlohmann::json entry = nlohmann::json::object();
    entry["p"] = jsonFromInt(p);
    entry["rank"] = static_cast<long long>(r);
    ranks.push_back(std::move(entry));
  }
  j["diagnostics"]["composite_rank_mod_p"] = std::move(ranks);
  if (report.numerical) {
    nlohmann::json num = nlohmann::json::object();
    num["chow_of_X"] = groupJson(report.numerical->chowGroup);
    num["prelog_group"] = groupJson(report.numerical->prelogGroup);
    num["diagnostics"] = diagnosticsJson(*report.numerical);
    j["numerical"] = std::move(num);
  }
  if (report.inducedMap) {
    nlohmann::json ind = nlohmann::json::object();
    ind["isomorphism"] = report.inducedMap->isomorphism;
    ind["surjective"] = report.inducedMap->surjective;
    ind["matrix"] = rowsJson(report.inducedMap->matrix);
    j["induced_map"] = std::move(ind);
  }
  return j;
}

/** Canonical bytes of a structured report. */
inline std::string renderStructuredReport(const PrelogReport& report,
                                          const ModPRanks& modP = {}) {
  return reportToJson(report, modP).dump(2) + "\n";
}

/**
 * Parse a structured report document, checking the top-level shape.
 * Round-trip guarantee: rendering a parsed canonical document reproduces
 * its bytes.
 */
inline nlohmann::json parseReportDocument(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("$: report is not well-formed");
  if (!j.is_object()) throw ParseError("$: expected a report object");
  for (const char* key : {"chow_of_X", "prelog_group", "diagnostics"})
    if (!j.contains(key))
      throw ParseError(std::string("$: missing required key \"") + key +
                       "\"");
  for (const char* key : {"chow_of_X", "prelog_group"}) {
    const auto& g = j.at(key);
    if (!g.is_object() || !g.contains("free_rank") || !g.contains("torsion"))
      throw ParseError(std::string("$.") + key +
                       ": expected {\"free_rank\", \"torsion\"}");
  }
  return j;
}

/** Canonical bytes of a parsed report document. */
inline std::string renderReportDocument(const nlohmann::json& doc) {
  return doc.dump(2) + "\n";
}

/**
 * Human-readable report: group types first, then generator tables and
 * named diagnostics, with the numerical quotient appended when present.
 */
inline std::string renderTextReport(const PrelogReport& report,
                                    const ModPRanks& modP = {}) {
  using report_detail::rowText;
  const PrelogSide& side = report.rational;
  std::ostringstream out;
  out << "CH^1(X) = " << formatGroupName(side.chowGroup) << "\n";
  out << "CH^1_prelog(X) = " << formatGroupName(side.prelogGroup) << "\n";
  out << "\n";
  const IntMatrix& compat = side.compatibleBasis.generators;
  out << "compatible classes (rank " << compat.rows() << "):\n";
  for (Index i = 0; i < compat.rows(); ++i)
    out << "  " << rowText(compat, i) << "\n";
  const IntMatrix& sat = side.saturatedBasis.generators;
  out << "saturated prelog basis (rank " << sat.rows() << "):\n";
  for (Index i = 0; i < sat.rows(); ++i)
    out << "  " << rowText(sat, i) << "\n";
  out << "\n";
  out << "composite rank (char 0): " << side.imageLattice.rank() << "\n";
  for (const auto& [p, r] : modP)
    out << "composite rank mod " << p.get_str() << ": " << r << "\n";
  out << "saturation index: " << side.saturationIndex.get_str() << "\n";
  out << "delta injective: " << (side.deltaInjective ? "yes" : "no") << "\n";
  out << "rho surjective: " << (side.rhoSurjective ? "yes" : "no") << "\n";
  out << "square commutes: " << (side.squareCommutes ? "yes" : "no") << "\n";
  if (report.numerical) {
    out << "\n";
    out << "numerical quotient:\n";
    out << "  CH^1_num(X) = " << formatGroupName(report.numerical->chowGroup)
        << "\n";
    out << "  prelog part = " << formatGroupName(report.numerical->prelogGroup)
        << "\n";
    if (report.inducedMap) {
      out << "  induced map surjective: "
          << (report.inducedMap->surjective ? "yes" : "no") << "\n";
      out << "  induced map isomorphism: "
          << (report.inducedMap->isomorphism ? "yes" : "no") << "\n";
    }
  }
  return out.str();
}

}  // namespace prelog

#endif  // PRELOG_REPORT_IO_HPP
