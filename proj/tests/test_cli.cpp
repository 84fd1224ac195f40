// Copyright 2026 The Authors.
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

// Drives the built CLI binary end to end. argv[1] is the binary path.

#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

std::string g_cli;
std::string g_dir;

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
  std::string stderr_text;
};

RunResult run_cli(const std::string& args) {
  const std::string err_file = g_dir + "/stderr.txt";
  const std::string cmd = g_cli + " " + args + " 2>" + err_file;
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    r.stdout_text.append(buf.data(), got);
  }
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream err(err_file);
  r.stderr_text.assign(std::istreambuf_iterator<char>(err), {});
  return r;
}

void write_file(const std::string& name, const std::string& body) {
  std::ofstream out(g_dir + "/" + name);
  if (!out.good()) {
    std::fprintf(stderr, "cannot write fixture %s\n", name.c_str());
    std::exit(1);
  }
  out << body;
}

std::string path(const std::string& name) { return g_dir + "/" + name; }

}  // namespace

TEST_CASE("evaluate the chain example") {
  const auto r = run_cli("evaluate --network " + path("chain.json") +
                         " --transient a --horizon 2 --method exact-dag");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.stdout_text);
  CHECK(j["value"] == 0.5);
  CHECK(j["evaluator"] == "exact-dag");
  CHECK(j["config"]["horizon"] == 2);
}

TEST_CASE("empty seeds evaluate to zero") {
  const auto r = run_cli("evaluate --network " + path("chain.json") +
                         " --horizon 2 --method exact-dag");
  REQUIRE(r.exit_code == 0);
  CHECK(json::parse(r.stdout_text)["value"] == 0.0);
}

TEST_CASE("cyclic network with exact-dag exits 3 and names the cycle") {
  const auto r = run_cli("evaluate --network " + path("cycle.json") +
                         " --transient a --horizon 2 --method exact-dag");
  CHECK(r.exit_code == 3);
  CHECK(r.stderr_text.find("cycle") != std::string::npos);
  CHECK(r.stderr_text.find("a") != std::string::npos);
  CHECK(r.stdout_text.empty());
}

TEST_CASE("cells evaluator accepts the cyclic network") {
  const auto r = run_cli("evaluate --network " + path("cycle.json") +
                         " --transient a --horizon 2 --method cells");
  CHECK(r.exit_code == 0);
}

TEST_CASE("unknown seed labels exit 4; missing files exit 2") {
  CHECK(run_cli("evaluate --network " + path("chain.json") +
                " --transient nosuch --horizon 2").exit_code == 4);
  CHECK(run_cli("evaluate --network " + path("missing.json") +
                " --horizon 2").exit_code == 2);
  CHECK(run_cli("evaluate --network " + path("garbage.json") +
                " --horizon 2").exit_code == 2);
}

TEST_CASE("csv edge lists load") {
  const auto r = run_cli("evaluate --network " + path("chain.csv") +
                         " --transient a --horizon 2 --method exact-dag");
  REQUIRE(r.exit_code == 0);
  CHECK(json::parse(r.stdout_text)["value"] == 0.5);
}

TEST_CASE("simulate emits a trajectory with horizon+1 rows") {
  const auto r = run_cli("simulate --network " + path("chain.json") +
                         " --transient a --horizon 4 --samples 1 --seed 1");
  REQUIRE(r.exit_code == 0);
  int rows = 0;
  for (char c : r.stdout_text) rows += c == '\n' ? 1 : 0;
  CHECK(rows == 6);  // header + t=0..4
  CHECK(r.stdout_text.rfind("t,a,b", 0) == 0);
}

TEST_CASE("simulate estimate on a deterministic instance has zero stderr") {
  const auto r = run_cli("simulate --network " + path("chain.json") +
                         " --transient a --horizon 2 --samples 5000 --seed 3");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.stdout_text);
  CHECK(j["mean"] == 0.5);
  CHECK(j["stderr"] == 0.0);
  CHECK(j["samples"] == 5000);
}

TEST_CASE("optimize reports the solution with provenance") {
  const auto r = run_cli("optimize --network " + path("hub.json") +
                         " --horizon 3 --budget 1 --method exact-dag");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.stdout_text);
  CHECK(j["permanent"] == json::array({"h"}));
  CHECK(j["transient"] == json::array());
  CHECK(j["value"] == 4.0);
  CHECK(j["k_hat"] == 1);
  CHECK(j.contains("evaluations"));
  CHECK_FALSE(j.contains("wall_ms"));  // timings stay on stderr
}

TEST_CASE("byte-identical reruns, including across thread counts") {
  const std::string mc_eval = "evaluate --network " + path("hub.json") +
                              " --horizon 3 --method mc --samples 5000 --seed 7";
  const auto a = run_cli(mc_eval + " --threads 1");
  const auto b = run_cli(mc_eval + " --threads 1");
  const auto c = run_cli(mc_eval + " --threads 2");
  REQUIRE(a.exit_code == 0);
  CHECK(a.stdout_text == b.stdout_text);
  CHECK(a.stdout_text == c.stdout_text);

  const std::string opt = "optimize --network " + path("hub.json") +
                          " --horizon 3 --budget 2 --evaluator mc --samples 2000"
                          " --seed 7 --lazy";
  const auto d = run_cli(opt + " --threads 1");
  const auto e = run_cli(opt + " --threads 2");
  REQUIRE(d.exit_code == 0);
  CHECK(d.stdout_text == e.stdout_text);
}

TEST_CASE("seed lists accept @file indirection") {
  write_file("seeds.txt", "a\n");
  const auto r = run_cli("evaluate --network " + path("chain.json") +
                         " --transient @" + path("seeds.txt") +
                         " --horizon 2 --method exact-dag");
  REQUIRE(r.exit_code == 0);
  CHECK(json::parse(r.stdout_text)["value"] == 0.5);
}

TEST_CASE("zero budget yields the empty solution") {
  const auto r = run_cli("optimize --network " + path("hub.json") +
                         " --horizon 2 --budget 0 --method exact-dag");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.stdout_text);
  CHECK(j["value"] == 0.0);
  CHECK(j["transient"].empty());
  CHECK(j["permanent"].empty());
}

TEST_CASE("evaluate writes the probability table on request") {
  const std::string table = path("table.csv");
  const auto r = run_cli("evaluate --network " + path("chain.json") +
                         " --transient a --horizon 2 --method exact-dag"
                         " --table " + table);
  REQUIRE(r.exit_code == 0);
  std::ifstream in(table);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,a,b");
  std::string row0, row1;
  std::getline(in, row0);
  std::getline(in, row1);
  CHECK(row0 == "0,1,0");
  CHECK(row1 == "1,0,1");

  const auto bad = run_cli("evaluate --network " + path("chain.json") +
                           " --transient a --horizon 2 --method mc --table " + table);
  CHECK(bad.exit_code == 2);
}

TEST_CASE("out flag writes the same bytes to a file") {
  const std::string out = path("est.json");
  const auto r = run_cli("simulate --network " + path("chain.json") +
                         " --transient a --horizon 2 --samples 100 --seed 5 --out " + out);
  REQUIRE(r.exit_code == 0);
  std::ifstream in(out);
  const std::string file_text{std::istreambuf_iterator<char>(in), {}};
  CHECK(file_text == r.stdout_text);
}

TEST_CASE("check hardness on K3") {
  const auto r = run_cli("check hardness --graph " + path("k3.json") + " --k 2");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.stdout_text);
  CHECK(j["iff_holds"] == true);
  CHECK(j["cover_exists"] == true);
}

TEST_CASE("check submodularity sweep exits zero on DAGs") {
  const auto r = run_cli(
      "check submodularity --random-dags 5 --max-n 5 --horizon 2"
      " --method exact-dag --seed 11");
  REQUIRE(r.exit_code == 0);
  CHECK(json::parse(r.stdout_text)["ok"] == true);
}

TEST_CASE("check counterexample writes a reverifiable witness") {
  const std::string out = path("witness.json");
  const auto r = run_cli(
      "check counterexample --family general-cycles --max-n 4 --seed 1 --out " + out);
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.stdout_text);
  CHECK(j["found"] == true);
  CHECK(j["reverified"] == true);
  std::ifstream in(out);
  REQUIRE(in.good());
}

TEST_CASE("check equivalence sweep passes") {
  const auto r = run_cli(
      "check equivalence --random-nets 3 --max-n 6 --horizon 3 --samples 2000"
      " --seed 2");
  REQUIRE(r.exit_code == 0);
  CHECK(json::parse(r.stdout_text)["ok"] == true);
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_cli <path-to-nlt-binary> [doctest args]\n");
    return 1;
  }
  g_cli = argv[1];
  g_dir = "/tmp/nlt_cli_test_" + std::to_string(getpid());
  std::filesystem::create_directories(g_dir);

  write_file("chain.json",
             R"({"nodes":["a","b"],"edges":[{"src":"b","dst":"a","weight":1.0}]})");
  write_file("chain.csv", "src,dst,weight\nb,a,1.0\n");
  write_file("cycle.json",
             R"({"nodes":["a","b"],"edges":[{"src":"a","dst":"b","weight":0.5},)"
             R"({"src":"b","dst":"a","weight":0.5}]})");
  write_file("hub.json",
             R"({"nodes":["h","l1","l2","l3"],"edges":[)"
             R"({"src":"l1","dst":"h","weight":1.0},)"
             R"({"src":"l2","dst":"h","weight":1.0},)"
             R"({"src":"l3","dst":"h","weight":1.0}]})");
  write_file("k3.json",
             R"({"nodes":["a","b","c"],"edges":[["a","b"],["b","c"],["a","c"]]})");
  write_file("garbage.json", "{not json");

  doctest::Context ctx(argc - 1, argv + 1);
  const int rc = ctx.run();
  std::filesystem::remove_all(g_dir);
  return rc;
}
