#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#ifndef MERO_CLI_PATH
#error "MERO_CLI_PATH must point at the built binary"
#endif

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(MERO_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  RunResult r{-1, {}};
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int st = pclose(p);
  r.exit_code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

}  // namespace

TEST_CASE("integrate: total value with a lower by-pass") {
  RunResult r = run("integrate --expr \"sin(t)/(2*(1-cos(t)))\" --from -pi --to pi "
                    "--pole 0:lower --mode vt");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["total"]["re"].get<double>()) <= 1e-7);
  CHECK(j["total"]["im"].get<double>() == Catch::Approx(-M_PI).margin(1e-7));
  CHECK(j["exists"].get<bool>());
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run("integrate --expr \"1/t\" --from 0 --to 1 --pole 0:lower").exit_code == 2);
  CHECK(run("integrate --expr \"1/t\" --from 0 --to 1 --pole 0:sideways").exit_code == 2);
  CHECK(run("integrate --expr \"1/t\" --from zero --to 1").exit_code == 2);
  CHECK(run("nonsense").exit_code == 2);
  CHECK(run("integrate").exit_code == 2);
  CHECK(run("sum --expr \"(-1)^k\" --method unknown").exit_code == 2);
  CHECK(run("verify --check eq999").exit_code == 2);
}

TEST_CASE("verify subcommand writes a report file") {
  const std::string path = "cli_test_report.json";
  RunResult r = run("verify --check eq47 --out " + path);
  REQUIRE(r.exit_code == 0);
  std::ifstream f(path);
  REQUIRE(f.good());
  nlohmann::json j;
  f >> j;
  REQUIRE(j["checks"].size() == 1);
  CHECK(j["checks"][0]["id"] == "eq47_total_zero");
  CHECK(j["checks"][0]["status"] == "pass");
  std::remove(path.c_str());
}

TEST_CASE("pi-expressions in numeric flags") {
  RunResult r = run("parse --expr \"cos(t)\" --at pi/3");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["value"]["re"].get<double>() == Catch::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("sum subcommand methods") {
  RunResult r = run("sum --expr \"(-1)^k\" --method abel");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["value"]["re"].get<double>() == Catch::Approx(-0.5).margin(1e-8));
  CHECK(j["status"] == "summable");

  RunResult c = run("sum --expr \"1/(2^k)\" --method cesaro:2 --kmax 400");
  REQUIRE(c.exit_code == 0);
  auto jc = nlohmann::json::parse(c.out);
  CHECK(jc["value"]["re"].get<double>() == Catch::Approx(1.0).margin(1e-8));
}

TEST_CASE("fourier CSV output has the documented shape") {
  RunResult r = run("fourier --expr \"1/(2*(1-cos(t)))\" --pole 0:lower --kmax 3 "
                    "--format csv");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.rfind("k,A_re,A_im,B_re,B_im\n", 0) == 0);
  int lines = 0;
  for (char ch : r.out)
    if (ch == '\n') ++lines;
  CHECK(lines == 5);  // header + k=0..3
}

TEST_CASE("plot emits t, partial sums, and the target") {
  RunResult r = run("plot --expr \"sin(t)/(2*(1-cos(t)))\" --pole 0:lower "
                    "--kmax 4,16 --points 8");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.rfind("t,partial_sum_4,partial_sum_16,target\n", 0) == 0);
  int lines = 0;
  for (char ch : r.out)
    if (ch == '\n') ++lines;
  CHECK(lines == 10);  // header + 9 grid rows
}

TEST_CASE("byte-identical output for identical argv") {
  const std::string cmd =
      "integrate --expr \"1/t\" --from -1 --to 2 --pole 0:lower --mode vt";
  RunResult a = run(cmd);
  RunResult b = run(cmd);
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("converge subcommand reports the semi-interval") {
  RunResult r = run("converge --expr \"cot(t/2)/2\" --from -1 --at 1 --phi 0 "
                    "--path detoured --eps 0.05");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["verdict"] == "converges to f(t)");
  CHECK(j["semi_interval"]["contains_phi"].get<bool>());
  CHECK(j["arc_fraction"].get<double>() <= 1e-6);
}
