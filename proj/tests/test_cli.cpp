#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "caforge/coverage.hpp"
#include "caforge/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
};

Result sh(const std::string& args, bool with_stderr = false) {
  const std::string cmd = std::string(CA_FORGE_BIN) + " " + args + (with_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("ca_forge_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write(const std::string& name, const std::string& text) {
  const auto p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

TEST_CASE("construct") {
  const auto out = (scratch() / "a.ca").string();
  const auto rep = (scratch() / "a.json").string();
  auto r = sh("construct --t 2 --k 5 --v 2 --stage1 rand --stage2 naive --seed 7 --verify --out " + out +
              " --report " + rep);
  CHECK(r.code == 0);
  const auto file = caforge::load_array_file(out);
  CHECK(caforge::verify_covering_array(file.array, {2, 5, 2}));
  const std::string json = slurp(rep);
  CHECK(json.find("\"schema\": \"ca-forge/1\"") != std::string::npos);
  CHECK(json.find("\"verified\": true") != std::string::npos);

  CHECK(sh("construct --t 6 --k 11 --v 3 --stage1 mt").code == 2);
  CHECK(sh("construct --t 2 --k 5 --v 6 --group frobenius").code == 2);
  CHECK(sh("construct --t 2 --k 5 --v 6 --group frobenius", true).out.find("v must be a prime power") != std::string::npos);
  CHECK(sh("construct --t 2 --k 5").code == 2);
  CHECK(sh("construct --t 2 --k 5 --v 2 --stage2 magic").code == 2);
  CHECK(sh("construct --t 2 --k 5 --v 2 --r-mult -1").code == 2);
  CHECK(sh("construct --t 2 --k 5 --v 2 --r-mult abc").code == 2);
  CHECK(sh("construct --t 1 --k 5 --v 2").code == 2);
  CHECK(sh("construct --t 3 --k 40 --v 3 --time-budget 0.000001").code == 3);
  CHECK(sh("construct --t 2 --k 5 --v 2 --out /nonexistent/dir/x.ca").code == 2);
  CHECK(sh("frobnicate").code == 2);
  CHECK(sh("").code == 2);
  CHECK(sh("--help").code == 0);
  CHECK(sh("--jobs 2 construct --t 2 --k 4 --v 2 --group cyclic --stage2 den --verify").code == 0);
}

TEST_CASE("verify") {
  const auto good = write("good.ca", "CA 4 3 2 2\n0 0 0\n0 1 1\n1 0 1\n1 1 0\n");
  const auto r = sh("verify --in " + good + " --t 2 --v 2");
  CHECK(r.code == 0);
  const auto bad = write("bad.ca", "CA 3 3 2 2\n0 0 0\n0 1 1\n1 0 1\n");
  const auto miss = sh("verify --in " + bad + " --t 2 --v 2");
  CHECK(miss.code == 1);
  CHECK(miss.out.find("uncovered") != std::string::npos);
  const auto broken = write("broken.ca", "CA 4 3 2 2\n0 0 0\n0 1 1\n1 0 1\n");
  CHECK(sh("verify --in " + broken + " --t 2 --v 2").code == 2);
  CHECK(sh("verify --in " + good + " --t 2 --v 3").code == 2);
  CHECK(sh("verify --in " + (scratch() / "missing.ca").string()).code == 2);
}

TEST_CASE("bounds") {
  auto r = sh("bounds --t 6 --k 54 --v 3");
  REQUIRE(r.code == 0);
  std::stringstream ss(r.out);
  std::string header, row;
  std::getline(ss, header);
  std::getline(ss, row);
  const auto h = split(header), c = split(row);
  REQUIRE(h.size() == c.size());
  auto field = [&](const std::string& name) {
    for (std::size_t i = 0; i < h.size(); ++i)
      if (h[i] == name) return std::stod(c[i]);
    FAIL("missing column " << name);
    return 0.0;
  };
  CHECK(std::ceil(field("slj")) == 17236);
  CHECK(std::abs(field("two_stage") - 13162) <= 1);

  r = sh("bounds --t 6 --k 53 --v 3 --format json");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("\"cyclic_two_stage\": 13059.") != std::string::npos);
  CHECK(r.out.find("\"frobenius_two_stage\": 13034.") != std::string::npos);

  r = sh("bounds --t 6 --k 12 --v 3 --k-max 100");
  REQUIRE(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 90);
  CHECK(sh("bounds --t 6 --k 12 --v 3 --k-max 5").code == 2);
  CHECK(sh("bounds --t 6 --k 12 --v 3 --format xml").code == 2);
  CHECK(sh("bounds --t 6 --k 2 --v 3").code == 2);
}

TEST_CASE("plot data") {
  const auto r = sh("plot-data --t 6 --v 3 --k 53 --k-max 57 --series two_stage,cyclic_two_stage --baseline discrete_slj");
  REQUIRE(r.code == 0);
  std::stringstream ss(r.out);
  std::string line;
  std::getline(ss, line);
  CHECK(line == "k,two_stage,cyclic_two_stage");
  std::getline(ss, line);
  const auto c = split(line);
  CHECK(c[0] == "53");
  CHECK(std::stod(c[1]) == doctest::Approx(13076.46 - 12768).epsilon(1e-4));
  CHECK(sh("plot-data --t 6 --v 3 --k 53 --series nonsense").code == 2);
}

TEST_CASE("benchmark") {
  const auto grid = write("two.grid", "t=2\nk=5\nv=2\nstage2=naive,greedy\nseed=1\nverify=true\n");
  const auto csv = (scratch() / "two.csv").string();
  CHECK(sh("benchmark --grid " + grid + " --out " + csv + " --no-timing").code == 0);
  const std::string first = slurp(csv);
  CHECK(std::count(first.begin(), first.end(), '\n') == 3);
  CHECK(sh("benchmark --grid " + grid + " --out " + csv + " --no-timing").code == 0);
  CHECK(slurp(csv) == first);

  // desk-scale version of the strategy comparison: every row within its bound
  const auto table = write("table.grid", "t=3\nk=10..14\nv=3\nstage2=naive,greedy,col,den\nseed=5\n");
  const auto r = sh("benchmark --grid " + table);
  REQUIRE(r.code == 0);
  std::stringstream ss(r.out);
  std::string line;
  std::getline(ss, line);
  const auto h = split(line);
  int rows = 0;
  while (std::getline(ss, line)) {
    const auto c = split(line);
    REQUIRE(c.size() == h.size());
    CHECK(std::stod(c[11]) <= std::ceil(std::stod(c[12])));
    ++rows;
  }
  CHECK(rows == 20);

  CHECK(sh("benchmark --grid " + write("bad.grid", "t=2\nk=5\n")).code == 2);
  CHECK(sh("benchmark --grid " + write("empty.grid", "# nothing\n")).code == 2);
  CHECK(sh("benchmark --grid " + (scratch() / "none.grid").string()).code == 2);
}
