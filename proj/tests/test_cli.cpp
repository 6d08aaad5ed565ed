#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "bernoullik/cli.hpp"
#include "bernoullik/io.hpp"

using namespace bernoullik;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / ("bernoullik_test_cli_" + name);
  std::ofstream(path) << text;
  return path.string();
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("documented examples") {
  Result slnz = run({"slnz", "--k", "3,2"});
  CHECK(slnz.code == cli::kExitOk);
  CHECK(contains(slnz.out, "[[2,1],[1,1]]"));
  CHECK(contains(slnz.out, "word = AB"));
  CHECK(contains(slnz.out, "det = 1"));

  Result karoubi = run({"karoubi", "--cyclic", "5", "--set", "regular"});
  CHECK(karoubi.code == cli::kExitOk);
  CHECK(contains(karoubi.out, "K^0 rank = 0"));
  CHECK(contains(karoubi.out, "K^1 rank = 5"));

  const std::string z2 = write_temp("z2.json", R"({"degree": 2, "generators": [[1, 0]]})");
  Result cantor = run({"cantor", "--group", z2, "--gset", "regular", "--n", "1"});
  CHECK(cantor.code == cli::kExitOk);
  CHECK(contains(cantor.out, "total: K_0 = Z^5; K_1 = 0"));
}

TEST_CASE("group inputs agree") {
  const std::string cycles = write_temp("s3_cycles.json", R"({"degree": 3, "cycles": [[[0, 1]], [[0, 1, 2]]]})");
  const std::string images = write_temp("s3_images.json", R"({"degree": 3, "generators": [[1, 0, 2], [1, 2, 0]]})");
  Result a = run({"colim", "--group", cycles});
  Result b = run({"colim", "--group", images});
  Result c = run({"colim", "--symmetric", "3"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  CHECK(contains(a.out, "K_0 = Z^3; K_1 = 0"));
}

TEST_CASE("gset from JSON") {
  // One orbit with stabilizer Z/2 inside Z/4: the quotient Z/4 -> Z/2 on two points.
  const std::string gset = write_temp("gset.json", R"({"pieces": [{"stabilizer": [[2, 3, 0, 1]], "multiplicity": 1}]})");
  Result r = run({"cantor", "--cyclic", "4", "--gset", gset, "--n", "1"});
  REQUIRE(r.code == 0);
  // F = {} gives c(Z/4) = 4, each singleton is fixed by Z/2 giving 2, the pair gives c(Z/4) = 4.
  CHECK(contains(r.out, "total: K_0 = Z^10; K_1 = 0"));

  const std::string bad = write_temp("gset_bad.json", R"({"pieces": [{"multiplicity": 0}]})");
  CHECK(run({"cantor", "--cyclic", "2", "--gset", bad}).code == cli::kExitValidation);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == cli::kExitUsage);
  CHECK(run({"nonsense"}).code == cli::kExitUsage);
  CHECK(run({"cantor"}).code == cli::kExitUsage);
  CHECK(run({"cantor", "--cyclic", "2", "--symmetric", "3"}).code == cli::kExitUsage);
  CHECK(run({"cantor", "--cyclic", "2", "--format", "yaml"}).code == cli::kExitUsage);
  CHECK(run({"--help"}).code == cli::kExitOk);

  Result window = run({"cantor", "--cyclic", "2", "--gset", "regular:omega"});
  CHECK(window.code == cli::kExitValidation);
  CHECK(contains(window.err, "WindowRequired"));

  Result missing = run({"cantor", "--group", "/nonexistent/group.json"});
  CHECK(missing.code == cli::kExitValidation);

  const std::string broken = write_temp("broken.json", "{\"degree\": 2, ");
  CHECK(run({"cantor", "--group", broken}).code == cli::kExitValidation);
  const std::string notperm = write_temp("notperm.json", R"({"degree": 2, "generators": [[0, 0]]})");
  Result np = run({"cantor", "--group", notperm});
  CHECK(np.code == cli::kExitValidation);
  CHECK(contains(np.err, "not a permutation"));

  CHECK(run({"findim", "--cyclic", "2", "--gset", "regular", "--k", "2"}).code == cli::kExitValidation);
  CHECK(run({"cuntz", "--variant", "z2_table", "--n", "1"}).code == cli::kExitValidation);
}

TEST_CASE("closure cap from the environment") {
  ::setenv("BERNOULLIK_CAP", "5", 1);
  Result capped = run({"colim", "--symmetric", "3"});
  ::unsetenv("BERNOULLIK_CAP");
  CHECK(capped.code == cli::kExitCap);
  CHECK(contains(capped.err, "CapExceeded"));
  CHECK(run({"colim", "--symmetric", "3"}).code == cli::kExitOk);
}

TEST_CASE("deterministic output and JSON round trip") {
  const std::vector<std::vector<std::string>> jobs = {
      {"cantor", "--dihedral", "4", "--n", "2", "--format", "json"},
      {"cantor", "--cyclic", "2", "--gset", "regular:omega", "--window", "2", "--max-subset-size", "2", "--format",
       "json"},
      {"circle", "--cyclic", "2", "--format", "json"},
      {"rotation", "--cyclic", "2", "--format", "json"},
      {"wreath", "--cyclic", "3", "--base-cyclic", "2", "--format", "json"},
      {"cuntz", "--variant", "z2_table", "--n", "6", "--format", "json"},
      {"zero", "--k0", "Z/4", "--unit", "1", "--r-max", "3", "--format", "json"},
      {"findim", "--cyclic", "2", "--k", "6", "--window", "2", "--format", "json"},
      {"localized", "--cyclic", "2", "--b-free", "1,2", "--localize", "2^inf,3", "--format", "json"}};
  for (const auto& job : jobs) {
    CAPTURE(job[0]);
    Result first = run(job);
    Result second = run(job);
    REQUIRE(first.code == 0);
    CHECK(first.out == second.out);
    io::Json parsed = io::parse(first.out, "report");
    KReport report = io::report_from_json(parsed);
    CHECK(io::report_to_json(report).dump(2) + "\n" == first.out);
  }
}

TEST_CASE("truncated reports lead with the banner") {
  Result text = run({"cantor", "--cyclic", "2", "--max-subset-size", "1"});
  REQUIRE(text.code == 0);
  CHECK(text.out.rfind("[truncated]", 0) == 0);
  Result json = run({"cantor", "--cyclic", "2", "--max-subset-size", "1", "--format", "json"});
  io::Json j = io::parse(json.out, "report");
  CHECK(j.begin().key() == "banner");
  CHECK(j["complete"] == false);
  Result full = run({"cantor", "--cyclic", "2"});
  CHECK(full.out.rfind("formula:", 0) == 0);
}

TEST_CASE("localization flag") {
  Result r = run({"cuntz", "--variant", "z2_table", "--n", "5", "--localize", "5"});
  REQUIRE(r.code == 0);
  CHECK(contains(r.out, "total: K_0 = 0; K_1 = 0"));
  Result c = run({"colim", "--cyclic", "6", "--localize", "2^inf"});
  CHECK(contains(c.out, "Z[1/2]^6"));
  CHECK(run({"cantor", "--cyclic", "2", "--localize", "2^x"}).code == cli::kExitValidation);
}

TEST_CASE("pushout and diagram inputs") {
  const std::string square = write_temp("square.json", R"({"reduced": {"K0": "0", "K1": "Z"},
                                                             "coinvariants": {"K0": "Z", "K1": "0"}})");
  Result p = run({"pushout", "--input", square});
  REQUIRE(p.code == 0);
  CHECK(contains(p.out, "pushout: K_0 = Z; K_1 = Z"));
  Result q = run({"pushout", "--input", square, "--localize", "2^inf"});
  CHECK(contains(q.out, "pushout: K_0 = Z; K_1 = Z[1/2]"));

  // Z^2 with the swap as a self-loop: the colimit is the coinvariants Z.
  const std::string diagram = write_temp("swap.json", R"({"objects": [{"K0": "Z^2", "K1": "0"}],
      "arrows": [{"source": 0, "target": 0, "deg0": [[0, 1], [1, 0]]}]})");
  Result d = run({"colim", "--diagram", diagram});
  REQUIRE(d.code == 0);
  CHECK(contains(d.out, "colimit: K_0 = Z; K_1 = 0"));
}

TEST_CASE("karoubi explicit set and slnz tuples") {
  Result k = run({"karoubi", "--symmetric", "3", "--set", "explicit", "--points", "0,1,2", "--format", "json"});
  REQUIRE(k.code == 0);
  io::Json j = io::parse(k.out, "karoubi");
  CHECK(j["classes"].size() == 3);
  Result natural = run({"karoubi", "--symmetric", "3", "--set", "natural", "--format", "json"});
  CHECK(io::parse(natural.out, "karoubi")["rank0"] == j["rank0"]);
  CHECK(run({"karoubi", "--symmetric", "3", "--set", "explicit", "--points", "7"}).code == cli::kExitValidation);

  Result s = run({"slnz", "--k", "2,3,4", "--format", "json"});
  REQUIRE(s.code == 0);
  io::Json sj = io::parse(s.out, "slnz");
  CHECK(sj["det"] == "1");
  CHECK(sj["valid"] == true);
  CHECK(run({"slnz", "--k", "3,x"}).code == cli::kExitValidation);
}
