// End-to-end checks of the ptscatter executable: flag validation, output
// determinism, and the documented CSV/JSON schemas.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_raw(const std::string& cmd_line) {
  const std::string cmd = cmd_line + " 2>/dev/null";
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) res.out.append(buf, n);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

RunResult run(const std::string& args) {
  return run_raw(std::string(PTSCATTER_BIN) + " " + args);
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream fields(line);
    while (std::getline(fields, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("free-particle sweep transmits everything") {
  const auto res =
      run("sweep --v1 0 --v2 0 --kmin 0.5 --kmax 2 --n 4 --mode both");
  REQUIRE(res.exit_code == 0);
  const auto rows = parse_csv(res.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0][0] == "k");
  CHECK(rows[0][2] == "T_analytic");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(std::abs(std::stod(rows[i][2]) - 1.0) < 1e-12);   // analytic
    CHECK(std::abs(std::stod(rows[i][3]) - 1.0) < 1e-9);    // numeric
  }
}

TEST_CASE("identical flags give byte-identical output") {
  const std::string flags =
      "sweep --v1 6 --v2 2 --kmin 0.4 --kmax 2.4 --n 7 --mode both";
  const auto a = run(flags);
  const auto b = run(flags);
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  const auto c = run(flags + " --jobs 4");
  CHECK(a.out == c.out);
  const auto d = run("env PTSCATTER_JOBS=3 " PTSCATTER_BIN " " + flags);
  CHECK(a.out == d.out);
}

TEST_CASE("analytic and numeric paths agree in a both-mode sweep") {
  const auto res =
      run("sweep --v1 6 --v2 2 --kmin 0.5 --kmax 2 --n 4 --mode both");
  REQUIRE(res.exit_code == 0);
  const auto rows = parse_csv(res.out);
  REQUIRE(rows.size() == 5);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(std::stod(rows[i][7]) < 1e-6);  // rel_discrepancy
  }
}

TEST_CASE("an undersized domain fails the sweep up front") {
  const std::string path = "cli_domain_should_not_exist.csv";
  std::filesystem::remove(path);
  const auto res = run("sweep --v1 1 --v2 7.75 --kmin 0.5 --kmax 2 --n 3 "
                       "--domain-L 3 --output " + path);
  CHECK(res.exit_code == 1);
  CHECK_FALSE(std::filesystem::exists(path));
}

TEST_CASE("flag validation exits 1 and writes nothing") {
  const std::string path = "cli_validation_should_not_exist.csv";
  std::filesystem::remove(path);
  const auto res = run("sweep --v1 0 --v2 0 --kmin 2 --kmax 1 --n 4 --output " +
                       path);
  CHECK(res.exit_code == 1);
  CHECK_FALSE(std::filesystem::exists(path));

  CHECK(run("sweep --v1 0 --v2 0 --kmin 0.5 --kmax 2").exit_code == 1);
  CHECK(run("singularity --v1 1").exit_code == 1);
  CHECK(run("singularity --v1 1 --v2 7.75 --n 1").exit_code == 1);
  CHECK(run("nonsense").exit_code == 1);
}

TEST_CASE("positivity violation surfaces as exit 1") {
  CHECK(run("singularity --v1 30 --n 1").exit_code == 1);
}

TEST_CASE("singularity solve emits the resonance row") {
  const auto res = run("singularity --v1 1 --n 1");
  REQUIRE(res.exit_code == 0);
  const auto rows = parse_csv(res.out);
  REQUIRE(rows.size() == 2);
  CHECK(std::stod(rows[1][1]) == 7.75);     // v2
  CHECK(std::stod(rows[1][5]) == 1.625);    // e_star
  CHECK(std::stod(rows[1][7]) > 1e4);       // numeric T at E*
  CHECK(std::stod(rows[1][8]) < 1e2);
  CHECK(std::stod(rows[1][9]) < 1e2);
}

TEST_CASE("spectrum JSON carries the documented schema") {
  const auto res = run("spectrum --v1 6 --v2 0 --format json");
  REQUIRE(res.exit_code == 0);
  const auto doc = nlohmann::json::parse(res.out);
  REQUIRE(doc.contains("params"));
  REQUIRE(doc.contains("rows"));
  REQUIRE(doc.contains("meta"));
  CHECK(doc["params"]["v1"] == 6.0);
  CHECK(doc["meta"]["phase"] == "UNBROKEN");
  CHECK(doc["meta"].contains("version"));
  CHECK(doc["meta"].contains("domain_L"));
  REQUIRE(doc["rows"].size() == 2);
  CHECK(doc["rows"][0]["re_energy"] == -4.0);
  CHECK(doc["rows"][1]["re_energy"] == -1.0);

  // Empty spectrum: header-only CSV.
  const auto empty = run("spectrum --v1 0 --v2 0");
  CHECK(empty.out == "phase,branch,n,re_energy,im_energy\n");
}

TEST_CASE("poles subcommand reports the textbook spectrum") {
  const auto res = run(
      "poles --v1 6 --v2 0 --re-min -0.5 --re-max 0.5 --im-min 0.1 --im-max 3");
  REQUIRE(res.exit_code == 0);
  const auto rows = parse_csv(res.out);
  REQUIRE(rows.size() == 3);
  CHECK(std::abs(std::stod(rows[1][1]) - 1.0) < 1e-8);  // im_k
  CHECK(std::abs(std::stod(rows[2][1]) - 2.0) < 1e-8);
  CHECK(rows[1][4] == "BOUND");
}

TEST_CASE("scan2d flags the singularity locus and its sign") {
  const auto res = run(
      "scan2d --v1-min 0 --v1-max 8 --v2-min 0.75 --v2-max 7.75 --res 2");
  REQUIRE(res.exit_code == 0);
  const auto rows = parse_csv(res.out);
  REQUIRE(rows.size() == 5);
  // Cells are (v1, v2) = (0, 0.75), (0, 7.75), (8, 0.75), (8, 7.75).
  CHECK(std::stod(rows[1][3]) == -8.0);   // 0 + 0.75 detuned from 8.75
  CHECK(std::stod(rows[2][3]) == -1.0);
  CHECK(std::stod(rows[3][3]) == 0.0);    // 8 + 0.75 on the locus...
  CHECK(rows[3][5] == "0");               // ...but with E* < 0
  CHECK(std::stod(rows[4][3]) == 7.0);
  const auto hit = run(
      "scan2d --v1-min 1 --v1-max 2 --v2-min 7.75 --v2-max 8.75 --res 2");
  const auto hit_rows = parse_csv(hit.out);
  CHECK(std::stod(hit_rows[1][3]) == 0.0);  // (1, 7.75)
  CHECK(hit_rows[1][5] == "1");
  CHECK(run("scan2d --v1-min 0 --v1-max 1 --v2-min 0 --v2-max 1 --res 1001")
            .exit_code == 1);
}

TEST_CASE("output lands in the requested file") {
  const std::string path = "cli_sweep_out.csv";
  std::filesystem::remove(path);
  const auto res = run("sweep --v1 0 --v2 0 --kmin 0.5 --kmax 1 --n 2 "
                       "--mode analytic --output " + path);
  REQUIRE(res.exit_code == 0);
  CHECK(res.out.empty());
  std::ifstream file(path);
  REQUIRE(file.good());
  std::stringstream content;
  content << file.rdbuf();
  CHECK(content.str().rfind("k,energy,", 0) == 0);
  std::filesystem::remove(path);
}

TEST_CASE("validate runs the whole acceptance suite") {
  const auto res = run("validate");
  REQUIRE(res.exit_code == 0);
  const auto doc = nlohmann::json::parse(res.out);
  CHECK(doc["meta"]["failed"] == 0);
  REQUIRE(doc["rows"].size() >= 10);
  for (const auto& row : doc["rows"]) {
    if (row["informational"] == 0) CHECK(row["passed"] == 1);
  }
}
