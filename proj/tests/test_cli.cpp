// Runs the periodet executable and checks exit codes and report bytes.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string path = "cli_test_out.json";
  const std::string cmd = env + " " PERIODET_CLI " " + args + " > " + path + " 2> /dev/null";
  const int status = std::system(cmd.c_str());
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run("verify --poly \"x^2+y^2\"").code == 0);
  CHECK(run("identities --n 3").code == 0);
  CHECK(run("closed-form --poly \"x^2+*y\"").code == 2);
  CHECK(run("closed-form --poly \"x+y\"").code == 2);
  CHECK(run("closed-form --poly \"x^3+x*y^2\"").code == 2);
  CHECK(run("closed-form --poly \"(x-y)^2(x+y)\"").code == 2);
  CHECK(run("verify --poly \"x^2+y^2\" --samples 1").code == 2);
  CHECK(run("nonsense").code == 2);
  // A root tolerance nobody can meet turns a correct run into a verification failure.
  CHECK(run("verify --poly \"x^2+y^2\" --root-tol 1e-300 --tol 1e-300").code == 1);
}

TEST_CASE("report contents") {
  const Run cf = run("closed-form --poly \"x^3+y^3\"");
  REQUIRE(cf.code == 0);
  CHECK(cf.out.find("\"schema\": \"periodet-report/1\"") != std::string::npos);
  CHECK(cf.out.find("-27.0") != std::string::npos);

  const Run err = run("closed-form --poly \"x^2+*y\"");
  CHECK(err.out.find("offset 4") != std::string::npos);
  CHECK(err.out.find("syntax-error") != std::string::npos);

  const Run chart = run("closed-form --poly \"x^3+x*y^2\"");
  CHECK(chart.out.find("y^(n+1)-coefficient") != std::string::npos);
}

TEST_CASE("identical runs give identical bytes") {
  const std::string args = "verify --poly \"x^3+y^3-0.3x-0.6y\" --profile fast --threads 2";
  const Run a = run(args);
  const Run b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("profile from the environment") {
  const Run env = run("periods --poly \"x^2+y^2\"", "PERIODET_PROFILE=strict");
  REQUIRE(env.code == 0);
  CHECK(env.out.find("\"profile\": \"strict\"") != std::string::npos);
  CHECK(run("periods --poly \"x^2+y^2\"", "PERIODET_PROFILE=bogus").code == 2);
}
