#include <sys/wait.h>
#include <unistd.h>

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "prelog/gallery.hpp"
#include "prelog/report_io.hpp"
#include "prelog/snc_io.hpp"

using prelog::Int;
using prelog::NamedClassTuple;
using prelog::SncComplex;

namespace {

struct RunResult {
  int exitCode = -1;
  std::string output;
};

/** Run a shell command, capturing standard output and the exit code. */
RunResult run(const std::string& command) {
  RunResult result;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buffer[4096];
  std::size_t got = 0;
  while ((got = fread(buffer, 1, sizeof(buffer), pipe)) > 0)
    result.output.append(buffer, got);
  const int status = pclose(pipe);
  result.exitCode = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string bin() { return std::string(PRELOG_BIN); }

/** Per-process scratch directory for generated documents. */
std::filesystem::path scratchDir() {
  static const std::filesystem::path dir = [] {
    auto d = std::filesystem::temp_directory_path() /
             ("prelog-cli-" + std::to_string(getpid()));
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir;
}

std::string writeDoc(const std::string& name, const std::string& text) {
  const auto path = scratchDir() / name;
  std::ofstream(path, std::ios::binary) << text;
  return path.string();
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

NamedClassTuple combineCycles(const std::string& label,
                              const std::vector<NamedClassTuple>& cycles,
                              const std::vector<Int>& weights) {
  NamedClassTuple out;
  out.label = label;
  out.value = cycles.front().value;
  for (auto& block : out.value.blocks) block.setZero();
  for (std::size_t k = 0; k < cycles.size(); ++k)
    for (std::size_t b = 0; b < out.value.blocks.size(); ++b)
      out.value.blocks[b] += weights[k] * cycles[k].value.blocks[b];
  return out;
}

}  // namespace

TEST_CASE("compute reports the cubic groups from a pipe and from a file",
          "[cli]") {
  auto piped = run(bin() + " example cubic | " + bin() + " compute -");
  REQUIRE(piped.exitCode == 0);
  REQUIRE(contains(piped.output, "CH^1(X) = Z^9"));
  REQUIRE(contains(piped.output, "CH^1_prelog(X) = Z^7"));
  REQUIRE(contains(piped.output, "saturation index: 1"));
  REQUIRE(contains(piped.output, "delta injective: yes"));
  REQUIRE(contains(piped.output, "induced map isomorphism: yes"));

  auto file = writeDoc("cubic.json",
                       prelog::serializeComplex(prelog::cubicDegeneration()));
  auto fromFile = run(bin() + " compute " + file);
  REQUIRE(fromFile.exitCode == 0);
  REQUIRE(fromFile.output == piped.output);
}

TEST_CASE("compute reports mod-p ranks for the elliptic example", "[cli]") {
  auto viaExample =
      run(bin() + " compute --example elliptic --char 2 --char 3");
  REQUIRE(viaExample.exitCode == 0);
  REQUIRE(contains(viaExample.output, "CH^1(X) = Z^11 + Z/3"));
  REQUIRE(contains(viaExample.output, "composite rank (char 0): 3"));
  REQUIRE(contains(viaExample.output, "composite rank mod 2: 2"));
  REQUIRE(contains(viaExample.output, "composite rank mod 3: 3"));
  REQUIRE(contains(viaExample.output, "saturation index: 2"));

  auto file = writeDoc(
      "elliptic.json",
      prelog::serializeComplex(prelog::ellipticProductDegeneration()));
  auto fromFile = run(bin() + " compute " + file + " --char 2 --char 3");
  REQUIRE(fromFile.exitCode == 0);
  REQUIRE(fromFile.output == viaExample.output);
}

TEST_CASE("structured reports are canonical and round-trip", "[cli]") {
  auto res = run(bin() + " compute --example elliptic --format json");
  REQUIRE(res.exitCode == 0);
  auto doc = prelog::parseReportDocument(res.output);
  REQUIRE(prelog::renderReportDocument(doc) == res.output);
  REQUIRE(doc.at("chow_of_X").at("free_rank") == 11);
  REQUIRE(doc.at("chow_of_X").at("torsion") ==
          nlohmann::json::array({3}));
  REQUIRE(doc.at("prelog_group").at("free_rank") == 3);
  REQUIRE(doc.at("diagnostics").at("saturation_index") == 2);

  auto file = writeDoc("cubic2.json",
                       prelog::serializeComplex(prelog::cubicDegeneration()));
  auto fileRes = run(bin() + " compute " + file + " --format json --char 5");
  REQUIRE(fileRes.exitCode == 0);
  auto fileDoc = prelog::parseReportDocument(fileRes.output);
  REQUIRE(prelog::renderReportDocument(fileDoc) == fileRes.output);
  REQUIRE(fileDoc.at("prelog_group").at("free_rank") == 7);
  REQUIRE(fileDoc.at("diagnostics").at("composite_rank_mod_p") ==
          nlohmann::json::array({{{"p", 5}, {"rank", 7}}}));
}

TEST_CASE("compute accepts raw diagram documents", "[cli]") {
  auto d = prelog::assembleDiagrams(prelog::cubicDegeneration());
  prelog::RawDiagrams raw{d.delta, d.rho, d.deltaPrime, d.rhoPrime};
  auto file = writeDoc("cubic_raw.json", prelog::serializeRawDiagrams(raw));
  auto res = run(bin() + " compute " + file + " --raw");
  REQUIRE(res.exitCode == 0);
  REQUIRE(contains(res.output, "CH^1(X) = Z^9"));
  REQUIRE(contains(res.output, "CH^1_prelog(X) = Z^7"));
  // Raw inputs carry no intersection pairings, so no numerical section.
  REQUIRE_FALSE(contains(res.output, "numerical quotient"));

  auto piped = run(bin() + " compute - --raw < " + file);
  REQUIRE(piped.exitCode == 0);
  REQUIRE(piped.output == res.output);
}

TEST_CASE("compute rejects bad invocations with the documented codes",
          "[cli]") {
  auto missing = run(bin() + " compute missing.json 2>&1");
  REQUIRE(missing.exitCode == 1);
  REQUIRE(contains(missing.output, "missing.json"));

  REQUIRE(run(bin() + " compute 2>/dev/null").exitCode == 2);
  REQUIRE(run(bin() + " compute --example cubic extra.json 2>/dev/null")
              .exitCode == 2);
  REQUIRE(run(bin() + " compute --example cubic --raw 2>/dev/null").exitCode ==
          2);
  REQUIRE(run(bin() + " compute --example cubic --format yaml 2>/dev/null")
              .exitCode == 2);
  REQUIRE(run(bin() + " compute --example cubic --char 4 2>/dev/null")
              .exitCode == 1);
  REQUIRE(run(bin() + " compute --example nosuch 2>/dev/null").exitCode == 1);

  auto garbage = writeDoc("garbage.json", "{\"components\": 3}");
  REQUIRE(run(bin() + " compute " + garbage + " 2>/dev/null").exitCode == 1);
}

TEST_CASE("check classifies cycles from files and standard input", "[cli]") {
  auto lines = prelog::cubicLines();
  NamedClassTuple notPrelog;
  notPrelog.label = "just-H1";
  notPrelog.value = lines[0].value;
  for (auto& block : notPrelog.value.blocks) block.setZero();
  notPrelog.value.blocks[0](0) = 1;
  auto cycleFile = writeDoc(
      "check_cycles.json",
      prelog::serializeCycles({lines[0], lines[9], lines[26], notPrelog}));
  auto complexFile = writeDoc(
      "cubic3.json", prelog::serializeComplex(prelog::cubicDegeneration()));

  auto res = run(bin() + " check " + complexFile + " --cycle " + cycleFile);
  REQUIRE(res.exitCode == 0);
  REQUIRE(contains(res.output, "H1-E1-E4: prelog"));
  REQUIRE(contains(res.output, "E1|H2-E7: prelog"));
  REQUIRE(contains(res.output, "E6|E9|H3: prelog"));
  REQUIRE(contains(res.output, "just-H1: not prelog"));

  auto piped = run(bin() + " example cubic | " + bin() + " check - --cycle " +
                   cycleFile);
  REQUIRE(piped.exitCode == 0);
  REQUIRE(piped.output == res.output);

  REQUIRE(run(bin() + " check " + complexFile + " 2>/dev/null").exitCode == 2);
}

TEST_CASE("friedman reports the balance on every double curve", "[cli]") {
  auto file = writeDoc("cubic4.json",
                       prelog::serializeComplex(prelog::cubicDegeneration()));
  auto res = run(bin() + " friedman " + file);
  REQUIRE(res.exitCode == 0);
  REQUIRE(contains(res.output, "pair (0,1): -2 + 1 + 1 = 0  [ok]"));
  REQUIRE(contains(res.output, "pair (1,2): -2 + 1 + 1 = 0  [ok]"));
  REQUIRE(contains(res.output, "Friedman condition: satisfied"));

  auto piped = run(bin() + " example p2f1 | " + bin() + " friedman -");
  REQUIRE(piped.exitCode == 0);
  REQUIRE(contains(piped.output, "pair (0,1): 1 + -1 + 0 = 0  [ok]"));
  REQUIRE(contains(piped.output, "Friedman condition: satisfied"));

  SncComplex skew = prelog::cubicDegeneration();
  skew.pairs[2].classInJ(0) = 2;
  auto skewFile = writeDoc("skew.json", prelog::serializeComplex(skew));
  auto bad = run(bin() + " friedman " + skewFile);
  REQUIRE(bad.exitCode == 0);
  REQUIRE(contains(bad.output, "[violated]"));
  REQUIRE(contains(bad.output, "Friedman condition: violated"));
}

TEST_CASE("example emits canonical complex documents", "[cli]") {
  for (const std::string name : {"cubic", "elliptic", "p2f1"}) {
    auto res = run(bin() + " example " + name);
    REQUIRE(res.exitCode == 0);
    auto parsed = prelog::parseComplex(res.output);
    REQUIRE(parsed == *prelog::exampleByName(name));
    REQUIRE(prelog::serializeComplex(parsed) == res.output);
  }

  auto target = (scratchDir() / "emitted.json").string();
  auto emit = run(bin() + " example cubic --emit " + target);
  REQUIRE(emit.exitCode == 0);
  REQUIRE(emit.output.empty());
  std::ifstream in(target, std::ios::binary);
  std::string written(std::istreambuf_iterator<char>(in), {});
  REQUIRE(written ==
          prelog::serializeComplex(prelog::cubicDegeneration()));

  REQUIRE(run(bin() + " example atlantis 2>/dev/null").exitCode == 1);
  REQUIRE(run(bin() + " example 2>/dev/null").exitCode == 2);
}

TEST_CASE("lines emits the 27 lines and finds generating subsets", "[cli]") {
  auto res = run(bin() + " lines");
  REQUIRE(res.exitCode == 0);
  auto parsed = prelog::parseCycles(res.output, prelog::cubicDegeneration());
  REQUIRE(parsed.size() == 27);
  auto expected = prelog::cubicLines();
  for (std::size_t k = 0; k < 27; ++k) {
    REQUIRE(parsed[k].label == expected[k].label);
    REQUIRE(parsed[k].value == expected[k].value);
  }

  auto seven = run(bin() + " lines --find-generators 7");
  REQUIRE(seven.exitCode == 0);
  REQUIRE(seven.output ==
          "H1-E1-E4\nH1-E1-E5\nH1-E1-E6\nH1-E2-E4\nH1-E3-E4\n"
          "E1|H2-E7\nE1|H2-E8\n");

  auto eight = run(bin() + " lines --find-generators 8");
  REQUIRE(eight.exitCode == 0);
  REQUIRE(contains(eight.output, "no generating subset of size 8"));
}

TEST_CASE("member expresses cycles in given generators", "[cli]") {
  auto elliptic = prelog::ellipticProductDegeneration();
  auto cycles = prelog::ellipticLineCycles();  // red, green, blue
  auto complexFile =
      writeDoc("elliptic2.json", prelog::serializeComplex(elliptic));
  auto gmr = combineCycles("green-minus-red", {cycles[0], cycles[1]},
                           {Int(-1), Int(1)});
  auto targetFile = writeDoc("gmr.json", prelog::serializeCycles({gmr}));
  auto blueFile = writeDoc("blue.json", prelog::serializeCycles({cycles[2]}));
  auto allFile = writeDoc("rgb.json", prelog::serializeCycles(cycles));

  auto separate = run(bin() + " member " + complexFile + " --target " +
                      targetFile + " --generators " + blueFile);
  REQUIRE(separate.exitCode == 0);
  REQUIRE(contains(separate.output, "green-minus-red: not a member"));

  auto inside = run(bin() + " member " + complexFile + " --target " +
                    targetFile + " --generators " + allFile);
  REQUIRE(inside.exitCode == 0);
  REQUIRE(contains(inside.output, "green-minus-red: member"));
  REQUIRE(contains(inside.output, "-1 * red"));
  REQUIRE(contains(inside.output, "1 * green"));
  REQUIRE(contains(inside.output, "0 * blue"));

  auto piped = run(bin() + " example elliptic | " + bin() +
                   " member - --target " + targetFile + " --generators " +
                   blueFile);
  REQUIRE(piped.exitCode == 0);
  REQUIRE(piped.output == separate.output);

  REQUIRE(run(bin() + " member " + complexFile + " --target " + allFile +
              " --generators " + blueFile + " 2>/dev/null")
              .exitCode == 1);
}

TEST_CASE("divide finds witnesses in the saturated lattice", "[cli]") {
  auto elliptic = prelog::ellipticProductDegeneration();
  auto cycles = prelog::ellipticLineCycles();
  auto complexFile =
      writeDoc("elliptic3.json", prelog::serializeComplex(elliptic));
  auto sum = combineCycles("red+green+blue", cycles,
                           {Int(1), Int(1), Int(1)});
  auto sumFile = writeDoc("sum.json", prelog::serializeCycles({sum}));
  auto redFile = writeDoc("red.json", prelog::serializeCycles({cycles[0]}));

  auto good = run(bin() + " divide " + complexFile + " --target " + sumFile +
                  " --by 2");
  REQUIRE(good.exitCode == 0);
  REQUIRE(contains(good.output, "red+green+blue: divisible by 2"));
  REQUIRE(contains(good.output, "witness ["));

  auto bad = run(bin() + " divide " + complexFile + " --target " + redFile +
                 " --by 2");
  REQUIRE(bad.exitCode == 0);
  REQUIRE(contains(bad.output, "red: not divisible by 2"));

  auto piped = run(bin() + " example elliptic | " + bin() +
                   " divide - --target " + sumFile + " --by 2");
  REQUIRE(piped.exitCode == 0);
  REQUIRE(piped.output == good.output);

  REQUIRE(run(bin() + " divide " + complexFile + " --target " + redFile +
              " --by 0 2>/dev/null")
              .exitCode == 1);
  REQUIRE(run(bin() + " divide " + complexFile + " --target " + redFile +
              " 2>/dev/null")
              .exitCode == 2);
}

TEST_CASE("reports render trivial and composite group names", "[cli]") {
  REQUIRE(prelog::formatGroupName(0, {}) == "0");
  REQUIRE(prelog::formatGroupName(1, {}) == "Z");
  REQUIRE(prelog::formatGroupName(2, {Int(2), Int(6)}) == "Z^2 + Z/2 + Z/6");
  REQUIRE(prelog::formatGroupName(0, {Int(3)}) == "Z/3");

  // A complex with no components yields trivial groups without error.
  auto emptyFile =
      writeDoc("empty.json", prelog::serializeComplex(SncComplex{}));
  auto res = run(bin() + " compute " + emptyFile);
  REQUIRE(res.exitCode == 0);
  REQUIRE(contains(res.output, "CH^1(X) = 0"));
  REQUIRE(contains(res.output, "CH^1_prelog(X) = 0"));

  auto json = run(bin() + " compute " + emptyFile + " --format json");
  REQUIRE(json.exitCode == 0);
  auto doc = prelog::parseReportDocument(json.output);
  REQUIRE(prelog::renderReportDocument(doc) == json.output);
  REQUIRE(doc.at("chow_of_X").at("free_rank") == 0);

  REQUIRE_THROWS_AS(prelog::parseReportDocument("[]"), prelog::ParseError);
  REQUIRE_THROWS_AS(prelog::parseReportDocument("{\"chow_of_X\": {}}"),
                    prelog::ParseError);
}

TEST_CASE("top-level usage and help behave conventionally", "[cli]") {
  REQUIRE(run(bin() + " --help").exitCode == 0);
  REQUIRE(run(bin() + " 2>/dev/null").exitCode == 2);
  REQUIRE(run(bin() + " conjure 2>/dev/null").exitCode == 2);
}
