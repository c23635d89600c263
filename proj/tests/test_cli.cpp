// End-to-end tests of the command-line tool. The binary path arrives in
// GAMMALAB_BIN (set by ctest).

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "doctest.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string binary() {
  const char* bin = std::getenv("GAMMALAB_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "GAMMALAB_BIN must point at the CLI binary");
  return bin;
}

struct RunResult {
  int exit_code;
  std::string output;  // stdout + stderr
};

RunResult run(const std::string& args, const fs::path& dir) {
  const fs::path log = dir / "cli_output.log";
  const std::string cmd = binary() + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(log);
  std::stringstream ss;
  ss << in.rdbuf();
  r.output = ss.str();
  return r;
}

fs::path fresh_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("gammalab-cli-" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing file: " << p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json slurp_json(const fs::path& p) { return json::parse(slurp(p)); }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("train writes encoder and report, and repeats byte-identically") {
  const fs::path a = fresh_dir("train-a");
  const fs::path b = fresh_dir("train-b");
  const std::string flags = "train --seed 3 --out %OUT% --report %REP%";

  const auto run_into = [&](const fs::path& dir) {
    std::string cmd = flags;
    cmd.replace(cmd.find("%OUT%"), 5, (dir / "encoder.json").string());
    cmd.replace(cmd.find("%REP%"), 5, (dir / "report.json").string());
    return run(cmd, dir);
  };

  const RunResult ra = run_into(a);
  CHECK(ra.exit_code == 0);
  const RunResult rb = run_into(b);
  CHECK(rb.exit_code == 0);

  CHECK(slurp(a / "encoder.json") == slurp(b / "encoder.json"));
  CHECK(slurp(a / "report.json") == slurp(b / "report.json"));

  const json report = slurp_json(a / "report.json");
  CHECK(report["table6_comparison"]["logic_encoder_prototype"].get<double>() == 1.0);
  CHECK(report["table1_baseline"]["skipped"].get<bool>());
}

TEST_CASE("usage errors exit with code 2") {
  const fs::path dir = fresh_dir("usage");
  CHECK(run("train --epochs 0", dir).exit_code == 2);
  CHECK(run("baseline --seed notanumber", dir).exit_code == 2);
  CHECK(run("tgs enumerate --n 7", dir).exit_code == 2);
  CHECK(run("verify", dir).exit_code == 2);  // neither --encoder nor --table
  CHECK(run("frobnicate", dir).exit_code == 2);
}

TEST_CASE("baseline reports the memorization failure") {
  const fs::path dir = fresh_dir("baseline");
  const RunResult r =
      run("baseline --report " + (dir / "baseline.json").string(), dir);
  CHECK(r.exit_code == 0);
  const json report = slurp_json(dir / "baseline.json");
  CHECK(report["table1_baseline"]["train_accuracy"].get<double>() == 1.0);
  CHECK(report["table1_baseline"]["test_accuracy"].get<double>() == 0.0);
}

TEST_CASE("the output directory env var supplies defaults") {
  const fs::path dir = fresh_dir("envdir");
  const std::string cmd = "GAMMALAB_OUT_DIR=" + dir.string() + " " + binary() +
                          " baseline > " + (dir / "log.txt").string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == 0);
  CHECK(fs::exists(dir / "baseline_report.json"));
}

TEST_CASE("extract produces the truth table CSV and pattern summary") {
  const fs::path dir = fresh_dir("extract");
  REQUIRE(run("train --seed 1 --out " + (dir / "enc.json").string() + " --report " +
                  (dir / "rep.json").string(),
              dir)
              .exit_code == 0);
  const RunResult r = run("extract --encoder " + (dir / "enc.json").string() +
                              " --csv " + (dir / "table.csv").string() + " --json " +
                              (dir / "summary.json").string(),
                          dir);
  CHECK(r.exit_code == 0);

  const std::string csv = slurp(dir / "table.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 65);

  const json summary = slurp_json(dir / "summary.json");
  REQUIRE(summary["rows"].size() == 8);
  for (const auto& row : summary["rows"]) {
    const int maj = row["majority"].get<int>();
    CHECK(row["count_class0"].get<int>() == (maj == 0 ? 8 : 0));
    CHECK(row["count_class1"].get<int>() == (maj == 1 ? 8 : 0));
  }
}

TEST_CASE("corrupt encoder files exit with code 1") {
  const fs::path dir = fresh_dir("corrupt");
  std::ofstream(dir / "junk.json") << "{not json";
  CHECK(run("extract --encoder " + (dir / "junk.json").string(), dir).exit_code == 1);
  std::ofstream(dir / "wrong.json") << "{\"schema_version\":1,\"kind\":\"other\"}";
  CHECK(run("verify --encoder " + (dir / "wrong.json").string(), dir).exit_code == 1);
}

TEST_CASE("verify passes a trained encoder and fails a mutated table") {
  const fs::path dir = fresh_dir("verify");
  REQUIRE(run("train --seed 2 --out " + (dir / "enc.json").string() + " --report " +
                  (dir / "rep.json").string(),
              dir)
              .exit_code == 0);
  const RunResult good = run("verify --encoder " + (dir / "enc.json").string() +
                                 " --json " + (dir / "props.json").string(),
                             dir);
  CHECK(good.exit_code == 0);
  const json props = slurp_json(dir / "props.json");
  CHECK(props["symmetry"]["holds"].get<bool>());
  CHECK(props["associativity_violations"].get<int>() == 128);
  CHECK(props["representative_independence"]["center_checked"].get<bool>());

  REQUIRE(run("extract --encoder " + (dir / "enc.json").string() + " --csv " +
                  (dir / "table.csv").string() + " --json " +
                  (dir / "summary.json").string(),
              dir)
              .exit_code == 0);
  // flip one entry in the CSV
  std::string csv = slurp(dir / "table.csv");
  const std::string target = "red square,red square,red square,0";
  csv.replace(csv.find(target), target.size(), "red square,red square,red square,1");
  std::ofstream(dir / "mutated.csv") << csv;

  const RunResult bad =
      run("verify --table " + (dir / "mutated.csv").string(), dir);
  CHECK(bad.exit_code == 1);
  CHECK(bad.output.find("VIOLATED") != std::string::npos);
}

TEST_CASE("tgs canonical/check classify the boolean square") {
  const fs::path dir = fresh_dir("tgs-check");
  REQUIRE(run("tgs canonical --out " + (dir / "canon.json").string(), dir).exit_code ==
          0);
  const RunResult r = run("tgs check " + (dir / "canon.json").string(), dir);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"type\": \"boolean\"") != std::string::npos);
  CHECK(r.output.find("\"zero_absorbing\": false") != std::string::npos);
}

TEST_CASE("tgs enumerate reports candidate counts") {
  const fs::path dir = fresh_dir("tgs-enum");
  const RunResult r = run("tgs enumerate --n 4", dir);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("candidates for n=4: 256") != std::string::npos);
}

TEST_CASE("tgs uniqueness is deterministic and counts 136 classes") {
  const fs::path dir = fresh_dir("tgs-uniq");
  const fs::path out1 = dir / "u1.json";
  const fs::path out2 = dir / "u2.json";
  CHECK(run("tgs uniqueness --out " + out1.string(), dir).exit_code == 0);
  CHECK(run("tgs uniqueness --out " + out2.string(), dir).exit_code == 0);
  CHECK(slurp(out1) == slurp(out2));
  const json u = slurp_json(out1);
  CHECK(u["candidate_count"].get<int>() == 256);
  CHECK(u["filters"][0]["iso_classes"].get<int>() == 136);
  CHECK(u["filters"][1]["survivors"].get<int>() == 1);
}

TEST_CASE("report command emits a schema-complete document") {
  const fs::path dir = fresh_dir("report");
  const RunResult full =
      run("report --seed 4 --out " + (dir / "full.json").string(), dir);
  CHECK(full.exit_code == 0);
  const json r = slurp_json(dir / "full.json");
  CHECK(r["table1_baseline"]["test_accuracy"].get<double>() == 0.0);
  CHECK(r["table6_comparison"]["logic_encoder_prototype"].get<double>() == 1.0);

  const RunResult skipped = run(
      "report --seed 4 --skip-baseline --out " + (dir / "skip.json").string(), dir);
  CHECK(skipped.exit_code == 0);
  const json rs = slurp_json(dir / "skip.json");
  CHECK(rs["table1_baseline"]["skipped"].get<bool>());
}

}  // TEST_SUITE
