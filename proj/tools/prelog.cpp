#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "../vendor/CLI11.hpp"
#include "prelog/gallery.hpp"
#include "prelog/report_io.hpp"
#include "prelog/snc_io.hpp"

namespace {

using prelog::Int;
using prelog::IntVector;
using prelog::PrelogReport;
using prelog::SncComplex;

/** Read a whole file, or standard input when the path is "-". */
std::string readInput(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin),
                       std::istreambuf_iterator<char>());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

void writeOutput(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << text;
}

/** Require a cycle document holding exactly one labeled tuple. */
prelog::NamedClassTuple singleCycle(const std::string& text,
                                    const SncComplex& c, const char* what) {
  auto cycles = prelog::parseCycles(text, c);
  if (cycles.size() != 1)
    throw std::invalid_argument(std::string(what) +
                                " document must contain exactly one cycle");
  return cycles.front();
}

std::string vectorText(const IntVector& v) {
  std::string out = "[";
  for (prelog::Index k = 0; k < v.size(); ++k) out += " " + v(k).get_str();
  out += " ]";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"prelog Chow groups of simple normal crossing degenerations"};
  app.require_subcommand(1);

  std::string computeInput;
  bool computeRaw = false;
  std::string computeExample;
  std::vector<long> computeChars;
  std::string computeFormat = "text";
  auto* compute = app.add_subcommand(
      "compute", "analyze a complex and report its prelog Chow groups");
  compute->add_option("input", computeInput,
                      "complex document, or '-' for standard input");
  compute->add_flag("--raw", computeRaw,
                    "treat the input as the four assembled matrices");
  compute->add_option("--example", computeExample,
                      "analyze a built-in example (cubic, elliptic, p2f1)");
  compute->add_option("--char", computeChars,
                      "also report the composite rank modulo this prime "
                      "(repeatable)");
  compute->add_option("--format", computeFormat, "output format")
      ->check(CLI::IsMember({"text", "json"}));

  std::string checkInput, checkCycleFile;
  auto* check = app.add_subcommand(
      "check", "test labeled cycles for membership in the prelog group");
  check->add_option("input", checkInput, "complex document, or '-'")
      ->required();
  check->add_option("--cycle", checkCycleFile, "cycle document to test")
      ->required();

  std::string friedmanInput;
  auto* friedman = app.add_subcommand(
      "friedman", "check the triple-point balance on every double curve");
  friedman->add_option("input", friedmanInput, "complex document, or '-'")
      ->required();

  std::string exampleName, exampleEmit;
  auto* example =
      app.add_subcommand("example", "emit a built-in example complex");
  example->add_option("name", exampleName, "cubic, elliptic, or p2f1")
      ->required();
  example->add_option("--emit", exampleEmit, "write to this file");

  long findSize = 0;
  auto* lines =
      app.add_subcommand("lines", "emit the 27 lines of the cubic example");
  auto* findOpt = lines->add_option(
      "--find-generators", findSize,
      "report the first subset of this size generating a saturated "
      "sublattice");

  std::string memberInput, memberTarget, memberGens;
  auto* member = app.add_subcommand(
      "member", "express a cycle in terms of given generators, if possible");
  member->add_option("input", memberInput, "complex document, or '-'")
      ->required();
  member->add_option("--target", memberTarget, "cycle document (one cycle)")
      ->required();
  member->add_option("--generators", memberGens, "cycle document")->required();

  std::string divideInput, divideTarget;
  long divideBy = 0;
  auto* divide = app.add_subcommand(
      "divide", "divide a cycle class by an integer in the saturated lattice");
  divide->add_option("input", divideInput, "complex document, or '-'")
      ->required();
  divide->add_option("--target", divideTarget, "cycle document (one cycle)")
      ->required();
  divide->add_option("--by", divideBy, "positive divisor")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (compute->parsed()) {
      if (computeInput.empty() == computeExample.empty()) {
        std::cerr << "compute: give exactly one of an input path or --example"
                  << "\n";
        return 2;
      }
      if (computeRaw && !computeExample.empty()) {
        std::cerr << "compute: --raw applies only to file input\n";
        return 2;
      }
      PrelogReport report;
      if (!computeExample.empty()) {
        auto c = prelog::exampleByName(computeExample);
        if (!c)
          throw std::invalid_argument("unknown example: " + computeExample);
        report = prelog::analyze(*c);
      } else {
        const std::string text = readInput(computeInput);
        if (computeRaw) {
          auto m = prelog::parseRawDiagrams(text);
          report = prelog::analyzeMatrices(std::move(m.delta),
                                           std::move(m.rho),
                                           std::move(m.deltaPrime),
                                           std::move(m.rhoPrime));
        } else {
          report = prelog::analyze(prelog::parseComplex(text));
        }
      }
      auto ranks = prelog::compositeRanksModP(
          report.rational, std::vector<Int>(computeChars.begin(),
                                            computeChars.end()));
      std::cout << (computeFormat == "json"
                        ? prelog::renderStructuredReport(report, ranks)
                        : prelog::renderTextReport(report, ranks));
      return 0;
    }

    if (check->parsed()) {
      SncComplex c = prelog::parseComplex(readInput(checkInput));
      auto d = prelog::assembleDiagrams(c);
      auto cycles = prelog::parseCycles(readInput(checkCycleFile), c);
      for (const auto& cyc : cycles)
        std::cout << cyc.label << ": "
                  << (prelog::isPrelogClass(c, d, cyc.value) ? "prelog"
                                                             : "not prelog")
                  << "\n";
      return 0;
    }

    if (friedman->parsed()) {
      SncComplex c = prelog::parseComplex(readInput(friedmanInput));
      auto diags = prelog::validate(c);
      if (prelog::hasErrors(diags))
        throw std::invalid_argument("invalid complex: " +
                                    diags.front().location + ": " +
                                    diags.front().message);
      bool all = true;
      for (const auto& rec : prelog::friedmanCheck(c)) {
        const auto& p = c.pairs[static_cast<std::size_t>(rec.pairIndex)];
        const Int total =
            rec.normalDegreeI + rec.normalDegreeJ + rec.triplePoints;
        std::cout << "pair (" << p.i << "," << p.j
                  << "): " << rec.normalDegreeI << " + " << rec.normalDegreeJ
                  << " + " << rec.triplePoints << " = " << total << "  "
                  << (rec.balanced ? "[ok]" : "[violated]") << "\n";
        all = all && rec.balanced;
      }
      std::cout << "Friedman condition: " << (all ? "satisfied" : "violated")
                << "\n";
      return 0;
    }

    if (example->parsed()) {
      auto c = prelog::exampleByName(exampleName);
      if (!c) throw std::invalid_argument("unknown example: " + exampleName);
      const std::string text = prelog::serializeComplex(*c);
      if (exampleEmit.empty())
        std::cout << text;
      else
        writeOutput(exampleEmit, text);
      return 0;
    }

    if (lines->parsed()) {
      auto cycles = prelog::cubicLines();
      if (findOpt->count() == 0) {
        std::cout << prelog::serializeCycles(cycles);
        return 0;
      }
      SncComplex c = prelog::cubicDegeneration();
      auto found = prelog::findGeneratingSubset(
          c, cycles, static_cast<prelog::Index>(findSize));
      if (!found) {
        std::cout << "no generating subset of size " << findSize << "\n";
        return 0;
      }
      for (const auto& label : *found) std::cout << label << "\n";
      return 0;
    }

    if (member->parsed()) {
      SncComplex c = prelog::parseComplex(readInput(memberInput));
      auto report = prelog::analyze(c);
      auto target = singleCycle(readInput(memberTarget), c, "target");
      auto gens = prelog::parseCycles(readInput(memberGens), c);
      std::vector<IntVector> flat;
      for (const auto& g : gens)
        flat.push_back(prelog::flattenTuple(c, g.value));
      auto coeffs = prelog::membershipQuery(
          report.rational, prelog::flattenTuple(c, target.value), flat);
      if (!coeffs) {
        std::cout << target.label << ": not a member\n";
        return 0;
      }
      std::cout << target.label << ": member\n";
      for (std::size_t k = 0; k < gens.size(); ++k)
        std::cout << "  " << (*coeffs)(static_cast<prelog::Index>(k)).get_str()
                  << " * " << gens[k].label << "\n";
      return 0;
    }

    if (divide->parsed()) {
      SncComplex c = prelog::parseComplex(readInput(divideInput));
      auto report = prelog::analyze(c);
      auto target = singleCycle(readInput(divideTarget), c, "target");
      IntVector proj = report.rational.chowGroup.projectFree(
          prelog::flattenTuple(c, target.value));
      auto witness =
          prelog::divisibilityQuery(report.rational, proj, Int(divideBy));
      if (!witness) {
        std::cout << target.label << ": not divisible by " << divideBy << "\n";
        return 0;
      }
      std::cout << target.label << ": divisible by " << divideBy << "\n";
      std::cout << "  witness " << vectorText(*witness) << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
