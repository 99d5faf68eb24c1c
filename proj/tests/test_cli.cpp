#include "chir/io.hpp"
#include "chir/matrix.hpp"
#include "chir/rng.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

using namespace chir;

namespace {

struct CliResult {
  int exit_code;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  std::string cmd = std::string(CHIR_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t got = fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::filesystem::path fixture_dir() {
  auto dir = std::filesystem::temp_directory_path() / "chir_cli_fixtures";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write_matrix(const std::string& name, const json& j) {
  auto path = fixture_dir() / name;
  std::ofstream f(path);
  f << j.dump();
  return path.string();
}

json json_tail(const std::string& out) {
  // the verify command prints status lines before the JSON document
  auto pos = out.find('{');
  REQUIRE(pos != std::string::npos);
  return json::parse(out.substr(pos));
}

std::string swap2_path() {
  MatQ m(2);
  m.at(0, 1) = CRat(Rat(1));
  m.at(1, 0) = CRat(Rat(1));
  return write_matrix("swap2.json", matrix_to_json(m));
}

std::string j4_path() {
  MatQ m(4);
  for (auto& v : m.a) v = CRat(Rat(1));
  return write_matrix("j4.json", matrix_to_json(m));
}

}  // namespace

TEST_CASE("detr command") {
  auto r = run_cli("detr --matrix " + swap2_path() + " --r 2");
  CHECK(r.exit_code == 0);
  json j = json_tail(r.out);
  CHECK(j["value"] == "-2");
  CHECK(j["agreement"] == true);
  CHECK(j["values"].contains("perm-cycle"));
  CHECK(j["values"].contains("derivative"));
  CHECK(j["values"].contains("macmahon"));

  auto r1 = run_cli("detr --matrix " + swap2_path() + " --r 1");
  CHECK(json_tail(r1.out)["value"] == "-1");

  auto r15 = run_cli("detr --matrix " + j4_path() + " --r 1.5");
  CHECK(r15.exit_code == 0);
  json j15 = json_tail(r15.out);
  CHECK(j15["agreement"] == true);
  CHECK(j15["values"].contains("macmahon"));
  CHECK(j15["values"].contains("perm-cycle"));
  CHECK_FALSE(j15["values"].contains("derivative"));
  CHECK(j15.contains("notes"));
}

TEST_CASE("chir command") {
  auto r = run_cli("chir --matrix " + j4_path() + " --r 1.5");
  CHECK(r.exit_code == 0);
  json j = json_tail(r.out);
  CHECK(j["real_rooted"] == false);

  auto r2 = run_cli("chir --matrix " + j4_path() + " --r 2");
  json j2 = json_tail(r2.out);
  CHECK(j2["real_rooted"] == true);
  CHECK(j2["chi_r"]["coeffs"].size() == 5);
}

TEST_CASE("pavings command") {
  auto r = run_cli("pavings --matrix " + swap2_path() + " --r 2");
  CHECK(r.exit_code == 0);
  json j = json_tail(r.out);
  CHECK(j["identity_holds"] == true);
  CHECK(j["count"] == 4);
  CHECK(j["paving_sum"]["coeffs"] == json::array({"-2", "0", "4"}));
}

TEST_CASE("bound command") {
  auto r = run_cli("bound --delta 0.5 --r 4");
  json j = json_tail(r.out);
  CHECK(j["closed_form"].get<double>() ==
        Catch::Approx((3 + std::sqrt(7.0)) * (3 + std::sqrt(7.0)) / 32).margin(1e-12));
  CHECK_FALSE(j.contains("warnings"));  // 0.5 is inside the r=4 threshold 9/16

  auto r2 = run_cli("bound --delta 0 --r 2");
  CHECK(json_tail(r2.out)["closed_form"].get<double>() == Catch::Approx(0.75).margin(1e-12));

  std::string p41 = write_matrix("p41.json", matrix_to_json(harmonic_projection_exact(4, 1)));
  auto r3 = run_cli("bound --matrix " + p41 + " --r 2 --certify");
  json j3 = json_tail(r3.out);
  double bound = j3["optimized"]["bound"].get<double>();
  double certified = j3["optimized"]["certified_max_root"].get<double>();
  CHECK(certified <= bound + 1e-8);

  // out-of-threshold delta warns and clamps
  auto r4 = run_cli("bound --delta 0.9 --r 2");
  json j4 = json_tail(r4.out);
  CHECK(j4["closed_form"] == 1.0);
  CHECK(j4.contains("warnings"));
}

TEST_CASE("verify command") {
  auto ok = run_cli("verify --seed 1");
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("PASS chiexp") != std::string::npos);
  CHECK(ok.out.find("PASS thompson") != std::string::npos);
  CHECK(ok.out.find("FAIL") == std::string::npos);
  CHECK(json_tail(ok.out)["all_pass"] == true);

  auto fault = run_cli("verify --seed 1 --fault thompson");
  CHECK(fault.exit_code == 1);
  CHECK(fault.out.find("FAIL thompson") != std::string::npos);

  auto fl = run_cli("verify --seed 1 --mode float --tolerance 1e-8");
  CHECK(fl.exit_code == 0);

  // byte-identical reruns, and thread count doesn't matter
  auto a = run_cli("verify --seed 7 --threads 1");
  auto b = run_cli("verify --seed 7 --threads 1");
  auto c = run_cli("verify --seed 7 --threads 4");
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
}

TEST_CASE("search commands") {
  auto r = run_cli("search statement --n 4 --budget 20000 --seed 1 --threads 2");
  CHECK(r.exit_code == 0);
  json j = json_tail(r.out);
  REQUIRE(j.contains("witness"));
  CHECK(j["witness"]["S"].size() == 1);
  // reproducible
  auto r2 = run_cli("search statement --n 4 --budget 20000 --seed 1 --threads 2");
  CHECK(r.out == r2.out);

  auto p = run_cli("search paving --matrix " + swap2_path() + " --r 2");
  json jp = json_tail(p.out);
  CHECK(jp["value"].get<double>() == Catch::Approx(0.0).margin(1e-12));
  CHECK(jp["method"] == "exhaustive");

  auto g1 = run_cli("search paving --matrix " + swap2_path() + " --r 2 --greedy --seed 3");
  auto g2 = run_cli("search paving --matrix " + swap2_path() + " --r 2 --greedy --seed 3");
  CHECK(g1.out == g2.out);
}

TEST_CASE("stability command") {
  Rng rng(167);
  MatQ g = random_gram_psd(rng, 3);
  std::string path = write_matrix("gram3.json", matrix_to_json(g));
  auto r = run_cli("stability --matrix " + path + " --r 2 --budget 500");
  CHECK(r.exit_code == 0);
  json j = json_tail(r.out);
  CHECK(j["verdict"] == "stable");
  CHECK(j["expected_charpoly_real_rooted"] == true);
}

TEST_CASE("exit codes") {
  CHECK(run_cli("detr --matrix /nonexistent.json --r 2").exit_code == 2);

  auto bad = fixture_dir() / "bad.json";
  std::ofstream(bad) << "{not json";
  CHECK(run_cli("detr --matrix " + bad.string() + " --r 2").exit_code == 2);

  MatQ big(13);
  std::string bigp = write_matrix("big.json", matrix_to_json(big));
  CHECK(run_cli("detr --matrix " + bigp + " --r 2").exit_code == 3);
}

TEST_CASE("csv output") {
  auto r = run_cli("verify --seed 1 --output csv");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("results[0].tag,chiexp") != std::string::npos);
  CHECK(r.out.find("all_pass,true") != std::string::npos);
}

TEST_CASE("search paving with certification") {
  std::string p41 = write_matrix("p41c.json", matrix_to_json(harmonic_projection_exact(4, 1)));
  auto r = run_cli("search paving --matrix " + p41 + " --r 2 --certify");
  CHECK(r.exit_code == 0);
  json j = json_tail(r.out);
  REQUIRE(j.contains("bound"));
  CHECK(j["value"].get<double>() <= j["bound"]["bound"].get<double>() + 1e-8);
}

TEST_CASE("r below 1 is rejected") {
  CHECK(run_cli("chir --matrix " + swap2_path() + " --r 0.5").exit_code == 2);
}
