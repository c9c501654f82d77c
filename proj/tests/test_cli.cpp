#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "akh/cli.hpp"
#include "akh/corpus.hpp"

using namespace akh;

namespace {

const std::string kData = AKH_DATA_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_with(RunConfig cfg) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(cfg, out, err);
  return {code, out.str(), err.str()};
}

RunConfig config(const std::string& command, std::vector<std::string> inputs = {}) {
  RunConfig c;
  c.command = command;
  c.inputs = std::move(inputs);
  return c;
}

}  // namespace

TEST_CASE("selftest passes") {
  const auto r = run_with(config("selftest"));
  CHECK(r.code == kOk);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("PASS") != std::string::npos);
}

TEST_CASE("compare on the worked example") {
  const auto r = run_with(config("compare", {kData + "/worked_example.json"}));
  CHECK(r.code == kOk);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.size() == 1);
  CHECK(j[0]["over"]["match"] == true);
  CHECK(j[0]["under"]["match"] == true);
}

TEST_CASE("homology of the trivial tangle") {
  auto cfg = config("homology", {kData + "/trivial.json"});
  cfg.closure = Closure::Over;
  const auto r = run_with(cfg);
  CHECK(r.code == kOk);
  CHECK(homology_table_from_json(nlohmann::json::parse(r.out)) == [] {
    HomologyTable t;
    t.add({0, 0}, 1);
    return t;
  }());
}

TEST_CASE("oracle and homology agree through the CLI") {
  for (Closure mode : {Closure::Over, Closure::Under}) {
    auto a = config("homology", {kData + "/worked_example.json"});
    a.closure = mode;
    auto b = a;
    b.command = "oracle";
    CHECK(run_with(a).out == run_with(b).out);
  }
}

TEST_CASE("table output") {
  auto cfg = config("homology", {kData + "/worked_example.json"});
  cfg.closure = Closure::Under;
  cfg.format = "table";
  const auto r = run_with(cfg);
  CHECK(r.code == kOk);
  CHECK(r.out.find("q\\h") != std::string::npos);
  // Rows run from q = 8 down to q = 2.
  CHECK(r.out.find("     8") < r.out.find("     2"));
}

TEST_CASE("resolve output") {
  const auto r = run_with(config("resolve", {kData + "/worked_example.json"}));
  REQUIRE(r.code == kOk);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["states"].size() == 4);
  for (const auto& s : j["states"]) {
    for (const char* key : {"bits", "w", "disk_circles", "annular_circles", "arc_types", "tangle_type"}) {
      CHECK(s.contains(key));
    }
  }
  CHECK(j["states"][0]["w"] == 1);
}

TEST_CASE("complex and spectral output") {
  auto cfg = config("complex", {kData + "/worked_example.json"});
  auto r = run_with(cfg);
  CHECK(r.code == kOk);
  CHECK(nlohmann::json::parse(r.out)["generators"].size() == 5);
  cfg.command = "spectral";
  cfg.bigraded = true;
  r = run_with(cfg);
  CHECK(r.code == kOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["anomalies"] == 0);
  CHECK(j["pages"][0].contains("bigraded"));
}

TEST_CASE("errors map to exit codes") {
  CHECK(run_with(config("homology", {kData + "/missing.json"})).code == kInvalidInput);
  CHECK(run_with(config("homology")).code == kInvalidInput);
  CHECK(run_with(config("launch", {kData + "/trivial.json"})).code == kInvalidInput);
  auto big = config("homology", {kData + "/trivial.json"});
  big.max_crossings = 30;
  const auto r = run_with(big);
  CHECK(r.code == kInvalidInput);
  CHECK(r.err.find("--unsafe-large") != std::string::npos);
  big.unsafe_large = true;
  CHECK(run_with(big).code == kOk);
  auto small = config("homology", {kData + "/worked_example.json"});
  small.max_crossings = 2;
  CHECK(run_with(small).code == kInvalidInput);

  const auto bad = std::filesystem::temp_directory_path() / "akh_bad_tangle.json";
  std::ofstream(bad) << R"({"loop_number": 0, "crossings": [[1, 2, 2, 1]], "boundary": [1, 3]})";
  const auto rb = run_with(config("compare", {bad.string()}));
  CHECK(rb.code == kInvalidInput);
  CHECK(rb.err.find("occurs") != std::string::npos);
  std::filesystem::remove(bad);
}

TEST_CASE("gen-corpus is reproducible and bounded") {
  auto cfg = config("gen-corpus");
  cfg.count = 30;
  cfg.seed = 9;
  const auto a = run_with(cfg);
  const auto b = run_with(cfg);
  CHECK(a.code == kOk);
  CHECK(a.out == b.out);
  cfg.seed = 10;
  CHECK(run_with(cfg).out != a.out);

  std::istringstream lines(a.out);
  std::string line;
  std::size_t n = 0;
  while (std::getline(lines, line)) {
    const auto t = parse_tangle(line);
    CHECK(t.crossing_count() <= 6);
    CHECK(t.loop_number() <= 3);
    ++n;
  }
  CHECK(n == 30);
}

TEST_CASE("gen-corpus to a directory, then compare it") {
  const auto dir = std::filesystem::temp_directory_path() / "akh_cli_corpus";
  std::filesystem::remove_all(dir);
  auto cfg = config("gen-corpus");
  cfg.count = 25;
  cfg.out_dir = dir.string();
  CHECK(run_with(cfg).code == kOk);
  CHECK(std::filesystem::exists(dir / "tangle_000.json"));
  CHECK(std::filesystem::exists(dir / "tangle_024.json"));
  const auto r = run_with(config("compare", {dir.string()}));
  CHECK(r.code == kOk);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.size() == 25);
  CHECK(j[0]["file"].get<std::string>().find("tangle_000.json") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("table rendering and diffs") {
  HomologyTable a;
  a.add({0, 0}, 1);
  HomologyTable b = a;
  b.add({1, 2}, 2);
  CHECK(render_table(HomologyTable{}) == "(zero)\n");
  CHECK(render_table(b).find("   2") != std::string::npos);
  CHECK(diff_tables(a, a, "x", "y").empty());
  const auto d = diff_tables(a, b, "oracle", "annular");
  CHECK(d.find("--- oracle") == 0);
  CHECK(d.find("+(1,2): 2") != std::string::npos);
  CHECK(d.find(" (0,0): 1") != std::string::npos);
}
