// Copyright 2026 The disavg Authors
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

#include "disavg/cli/app.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "disavg");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = disavg::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("number formatting and hashing", "[cli]") {
  CHECK(disavg::cli::format_number(0.1) == "0.10000000000000001");
  CHECK(disavg::cli::format_number(-0.0) == "0");
  CHECK(disavg::cli::format_number(1.0) == "1");
  CHECK(std::stod(disavg::cli::format_number(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(disavg::cli::git_blob_sha1("") == "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
  CHECK(disavg::cli::git_blob_sha1("hello\n") == "ce013625030ba8dba906f756967f9e9ca394464a");
}

TEST_CASE("trace-x writes one column group per method", "[cli]") {
  const Result r = invoke({"trace-x", "--N", "12", "--samples", "50", "--t-points", "9", "--method", "sample,closed2"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 10);
  CHECK(rows[0] ==
        "t,sample_re,sample_im,sample_stderr_re,sample_stderr_im,closed2_re,closed2_im,closed2_stderr_re,"
        "closed2_stderr_im");
  CHECK(rows[1] == "0,1,0,0,0,1,0,0,0");
  CHECK(r.out.find('\r') == std::string::npos);
}

TEST_CASE("identical invocations are bit-identical", "[cli]") {
  const auto dir = std::filesystem::temp_directory_path() / "disavg_cli_test";
  std::filesystem::create_directories(dir);
  const std::string a = (dir / "a.csv").string();
  const std::string b = (dir / "b.csv").string();
  const std::vector<std::string> base{"sff", "--N", "8", "--samples", "64", "--t-points", "17", "--seed", "5",
                                      "--deterministic", "--out"};
  auto args_a = base;
  args_a.push_back(a);
  auto args_b = base;
  args_b.push_back(b);
  REQUIRE(invoke(args_a).code == 0);
  REQUIRE(invoke(args_b).code == 0);
  CHECK(slurp(a) == slurp(b));
  const std::string meta_a = slurp(a + ".json");
  const std::string meta_b = slurp(b + ".json");
  const auto ja = nlohmann::json::parse(meta_a);
  const auto jb = nlohmann::json::parse(meta_b);
  CHECK(ja["config"] == jb["config"]);
  CHECK(ja["input_hash"] == jb["input_hash"]);
  CHECK(ja["config"]["gamma"] == 1.0);
  CHECK(ja["seed"] == 5);
  CHECK_FALSE(ja.contains("created"));
  CHECK(ja["input_hash"].get<std::string>().size() == 40);

  auto args_c = base;
  args_c.erase(args_c.begin() + 9);  // drop --deterministic
  args_c.push_back((dir / "c.csv").string());
  REQUIRE(invoke(args_c).code == 0);
  CHECK(nlohmann::json::parse(slurp((dir / "c.csv.json").string())).contains("created"));
  CHECK(slurp((dir / "c.csv").string()) == slurp(a));
  std::filesystem::remove_all(dir);
}

TEST_CASE("invalid flags and inputs exit with 2", "[cli]") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"nonsense"}).code == 2);
  CHECK(invoke({"trace-x", "--method", "magic"}).code == 2);
  CHECK(invoke({"trace-x", "--N", "1"}).code == 2);
  CHECK(invoke({"trace-x", "--gamma", "-1"}).code == 2);
  CHECK(invoke({"trace-x", "--samples", "1"}).code == 2);
  CHECK(invoke({"sff", "--unknown-flag"}).code == 2);
  // Well-formed flags that the library rejects.
  const Result coarse = invoke({"dos", "--N", "8", "--t-max", "1000", "--t-points", "256", "--method", "closed0"});
  CHECK(coarse.code == 2);
  CHECK(coarse.err.find("too coarse") != std::string::npos);
  CHECK(invoke({"otoc", "--N", "3", "--t-points", "2", "--ell", "4"}).code == 2);
  CHECK(invoke({"trace-x", "--help"}).code == 0);
}

TEST_CASE("bridge-check reports covariance z-scores", "[cli]") {
  const Result r = invoke({"bridge-check", "--n", "32", "--paths", "20000", "--deterministic"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["report"]["passed"] == true);
  CHECK(doc["report"]["covariance"].size() == 100);
  CHECK(doc["report"]["max_abs_z"].get<double>() <= 4.0);
  CHECK(doc["report"]["path_matrix"]["determinant_deviation"].get<double>() <= 1e-10);
}

TEST_CASE("other subcommands run", "[cli]") {
  const Result dos = invoke({"dos", "--N", "8", "--t-max", "40", "--t-points", "512", "--method", "closed0,closed2"});
  REQUIRE(dos.code == 0);
  CHECK(lines(dos.out)[0] == "omega,closed0,closed2");

  const Result otoc = invoke({"otoc", "--N", "3", "--t-points", "3", "--gamma", "0.5"});
  REQUIRE(otoc.code == 0);
  CHECK(lines(otoc.out)[1].rfind("0,1,0,0,0,0,0,0,0,0,0,0,0", 0) == 0);

  const Result prop = invoke({"propagator", "--model", "two-level", "--gamma", "0.5", "--samples", "100", "--n-steps",
                              "16", "--method", "sample,stochastic,sde,diffusive,second-order,quadrature"});
  REQUIRE(prop.code == 0);
  CHECK(lines(prop.out).size() == 5);

  const Result conv = invoke({"convergence", "--n-list", "4,8", "--paths", "200", "--deterministic", "--out",
                              (std::filesystem::temp_directory_path() / "disavg_conv.csv").string()});
  REQUIRE(conv.code == 0);
  const auto meta = nlohmann::json::parse(slurp(std::filesystem::temp_directory_path() / "disavg_conv.csv.json"));
  CHECK(meta["summary"].contains("fitted_exponent"));
  CHECK(meta["config"]["model"] == "two-level");
}
