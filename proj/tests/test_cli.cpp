// Copyright 2026 The kfree Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sys/wait.h>
#include <unistd.h>

#include <array>
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

struct Run {
  int exit_code = -1;
  std::string out;
};

Run Cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " KFREE_CLI_PATH " " + args + " 2>/dev/null";
  Run run;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) run.out.append(buf.data(), got);
  const int status = ::pclose(pipe);
  run.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return run;
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> Split(const std::string& line) {
  std::vector<std::string> cells;
  std::istringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  return cells;
}

// Data rows of a CSV document, header excluded.
std::vector<std::vector<std::string>> CsvRows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  bool header = true;
  for (const std::string& line : Lines(text)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    rows.push_back(Split(line));
  }
  return rows;
}

std::filesystem::path TempDir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("kfree-cli-" + std::to_string(::getpid()) + "-" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

TEST_CASE("exit codes") {
  CHECK(Cli("thresholds --n 100 --r 2").exit_code == 0);
  CHECK(Cli("thresholds --n 2 --r 2").exit_code == 2);
  CHECK(Cli("census --n 9 --r 2").exit_code == 3);
  CHECK(Cli("sample --n 6 --r 2 --m 10").exit_code == 2);
  CHECK(Cli("sample --n 40 --r 2 --m 10").exit_code == 3);
  CHECK(Cli("sweep --n 6 --r 2 --engine census --m 4,40").exit_code == 2);
  CHECK(Cli("--no-such-flag").exit_code == 2);
  CHECK(Cli("bounds exact --family /nonexistent/f.json --m 2").exit_code == 4);
  CHECK(Cli("bounds binom --a 2 --b 4 --c 1").exit_code == 2);
}

TEST_CASE("provenance stanza") {
  const Run run = Cli("sample --n 6 --r 2 --m 6 --steps 3000 --burn-in 100 --seed 9");
  REQUIRE(run.exit_code == 0);
  const auto lines = Lines(run.out);
  REQUIRE(lines.size() >= 6);
  CHECK(lines[0].rfind("# kfree_version=", 0) == 0);
  CHECK(lines[1] == "# command=sample");
  CHECK(lines[2] == "# seed=9");
  CHECK(lines[3] == "# rng=mt19937_64+lemire");
  CHECK(lines[4] == "# shards=none");
}

TEST_CASE("census sweep is exact") {
  const Run run = Cli("sweep --n 6 --r 2 --engine census --m 0,5,9");
  REQUIRE(run.exit_code == 0);
  CHECK(Lines(run.out)[5] == "n,r,m,engine,fraction_or_estimate,stderr,samples,caveat");
  const auto rows = CsvRows(run.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0][4] == "1");
  CHECK(std::stod(rows[1][4]) == doctest::Approx(1701.0 / 1773.0));
  CHECK(rows[1][6] == "1773");
  CHECK(rows[2][2] == "9");
  CHECK(rows[2][4] == "1");
}

TEST_CASE("csv and json carry the same rows") {
  const std::string args = "sweep --n 6 --r 2 --engine census --m auto --points 6";
  const Run csv = Cli(args);
  const Run json = Cli(args + " --format json");
  REQUIRE(csv.exit_code == 0);
  REQUIRE(json.exit_code == 0);
  const auto doc = nlohmann::ordered_json::parse(json.out);
  CHECK(doc["meta"]["command"] == "sweep");
  CHECK(doc["meta"]["rng"] == "mt19937_64+lemire");
  const auto rows = CsvRows(csv.out);
  REQUIRE(doc["rows"].size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = doc["rows"][i];
    CHECK(std::to_string(row["m"].get<int>()) == rows[i][2]);
    CHECK(row["engine"] == rows[i][3]);
    CHECK(row["fraction_or_estimate"].get<double>() == std::stod(rows[i][4]));
    CHECK(std::to_string(row["samples"].get<long long>()) == rows[i][6]);
  }
}

TEST_CASE("sampler sweep flags the near-extremal points") {
  const Run run = Cli(
      "sweep --n 24 --r 2 --engine sampler --m auto --points 6 --steps 4000 "
      "--burn-in 500 --chains 2");
  REQUIRE(run.exit_code == 0);
  const auto rows = CsvRows(run.out);
  REQUIRE(!rows.empty());
  bool saw_caveat = false;
  for (const auto& row : rows) {
    const int m = std::stoi(row[2]);
    const bool caveat = row[7] == "1";
    CHECK(caveat == (m > 0.9 * 144));
    saw_caveat = saw_caveat || caveat;
    CHECK(m <= 144);
  }
  CHECK(saw_caveat);
  CHECK(std::stoi(rows.back()[2]) == 144);
  CHECK(rows.back()[4] == "1");
}

TEST_CASE("reruns with a seed are byte identical") {
  const std::string args =
      "sample --n 7 --r 2 --m 8 --steps 20000 --burn-in 100 --chains 3 --seed 5";
  const Run a = Cli(args);
  const Run b = Cli(args + " --jobs 1");
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != Cli(args + "1").out);

  const auto dir = TempDir("dump");
  std::filesystem::create_directories(dir);
  const std::string d1 = (dir / "a.txt").string();
  const std::string d2 = (dir / "b.txt").string();
  REQUIRE(Cli(args + " --dump " + d1).exit_code == 0);
  REQUIRE(Cli(args + " --dump " + d2).exit_code == 0);
  std::ifstream f1(d1), f2(d2);
  const std::string s1((std::istreambuf_iterator<char>(f1)), {});
  const std::string s2((std::istreambuf_iterator<char>(f2)), {});
  CHECK(!s1.empty());
  CHECK(s1 == s2);
  CHECK(s1.rfind("step,is_rcol,triangles,edges_hash\n# chain=0\n", 0) == 0);
  std::filesystem::remove_all(dir);
}

TEST_CASE("census cache directory") {
  const auto dir = TempDir("cache");
  const Run first = Cli("census --n 5 --r 2 --cache-dir " + dir.string());
  REQUIRE(first.exit_code == 0);
  const auto file = dir / "census-n5-r2.txt";
  REQUIRE(std::filesystem::exists(file));
  const Run second = Cli("census --n 5 --r 2", "KFREE_CACHE_DIR=" + dir.string());
  CHECK(second.exit_code == 0);
  CHECK(second.out == first.out);

  std::string text;
  {
    std::ifstream in(file);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  {
    std::ofstream out(file, std::ios::trunc);
    out << text.substr(0, text.size() / 2);
  }
  CHECK(Cli("census --n 5 --r 2 --cache-dir " + dir.string()).exit_code == 4);
  {
    std::ofstream out(file, std::ios::trunc);
    std::string bumped = text;
    bumped.replace(0, 15, "KFREE-CENSUS v7");
    out << bumped;
  }
  CHECK(Cli("census --n 5 --r 2 --cache-dir " + dir.string()).exit_code == 4);
  std::filesystem::remove_all(dir);
}

TEST_CASE("bounds subcommands") {
  const auto dir = TempDir("family");
  std::filesystem::create_directories(dir);
  const std::string fam = (dir / "f.json").string();
  REQUIRE(Cli("bounds krminus --sizes 2,2 --missing 1-2 --out " + fam).exit_code == 0);
  const Run exact = Cli("bounds exact --family " + fam + " --m 2");
  REQUIRE(exact.exit_code == 0);
  CHECK(exact.out.find("\nnumerator,2\ndenominator,3\n") != std::string::npos);
  const Run multi = Cli("bounds multipartite --sizes 2,2,2");
  REQUIRE(multi.exit_code == 0);
  CHECK(CsvRows(multi.out).at(0).back() == "8");
  CHECK(Cli("bounds janson --mu 4 --delta 4").exit_code == 0);
  CHECK(Cli("bounds fkg --family " + fam + " --m 2 --eta 0.5").exit_code == 0);
  CHECK(Cli("bounds hoeffding --alpha 0.2 --lambda 0.5 --d 6 --n 30").exit_code == 0);
  CHECK(Cli("bounds dsets --k 2 --alpha 0.2 --lambda 0.5 --sizes 40,40 --d 5").exit_code == 0);
  CHECK(Cli("bounds probe --n 10000 --r 2").exit_code == 0);
  CHECK(Cli("bounds pairsum --n 4 --r 2 --m 2").exit_code == 0);
  std::filesystem::remove_all(dir);
}

}  // namespace
