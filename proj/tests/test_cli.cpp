#include "qmc/cli.hpp"

#include <doctest.h>

#include <string>
#include <vector>

using qmc::CliExit;
using qmc::Method;
using qmc::OptionKind;
using qmc::RunConfig;

namespace {

RunConfig parse(std::initializer_list<std::string> args) {
  return qmc::parse_args(std::vector<std::string>(args));
}

CliExit parse_failure(std::initializer_list<std::string> args) {
  try {
    qmc::parse_args(std::vector<std::string>(args));
  } catch (const CliExit& e) {
    return e;
  }
  FAIL("expected CliExit");
  return {};
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("price subcommand parses the documented example") {
  const RunConfig cfg = parse({"price", "--spot", "100", "--strike", "100",
                               "--rate", "0.05", "--vol", "0.2", "--maturity",
                               "1", "--method", "closed-form"});
  CHECK(cfg.command == "price");
  CHECK(cfg.spec.spot == 100.0);
  CHECK(cfg.spec.rate == 0.05);
  CHECK(cfg.method == Method::ClosedForm);
  CHECK(cfg.spec.kind == OptionKind::Call);
  CHECK(cfg.seed == 42);
}

TEST_CASE("defaults: price is closed-form, bench is american-ub") {
  CHECK(parse({"price"}).method == Method::ClosedForm);
  CHECK(parse({"bench"}).method == Method::AmericanUpperBound);
  CHECK(parse({"bench", "--method", "european-mc"}).method == Method::EuropeanMC);
}

TEST_CASE("negative volatility is rejected naming the flag") {
  const CliExit e = parse_failure({"price", "--vol", "-0.1"});
  CHECK(e.code != 0);
  CHECK(e.message.find("--vol") != std::string::npos);
}

TEST_CASE("unknown flags are rejected") {
  const CliExit e = parse_failure({"price", "--frobnicate", "3"});
  CHECK(e.code != 0);
  CHECK(e.message.find("frobnicate") != std::string::npos);
}

TEST_CASE("a subcommand is required") {
  CHECK(parse_failure({}).code != 0);
  CHECK(parse_failure({"dance"}).code != 0);
}

TEST_CASE("converge parses a comma-separated m list") {
  const RunConfig cfg = parse({"converge", "--m-list", "1,2,5,10,20,50",
                               "--paths", "262144", "--seed", "7", "--format",
                               "csv"});
  CHECK(cfg.command == "converge");
  REQUIRE(cfg.m_list.size() == 6);
  CHECK(cfg.m_list[0] == 1);
  CHECK(cfg.m_list[5] == 50);
  CHECK(cfg.n_paths == 262144);
  CHECK(cfg.seed == 7);
  CHECK(cfg.format == qmc::OutputFormat::Csv);
}

TEST_CASE("bench parses path and thread lists") {
  const RunConfig cfg = parse({"bench", "--path-list", "100,1000",
                               "--thread-list", "1,2,4", "--serial", "--m", "10"});
  REQUIRE(cfg.path_list.size() == 2);
  CHECK(cfg.path_list[1] == 1000);
  REQUIRE(cfg.thread_list.size() == 3);
  CHECK(cfg.thread_list[2] == 4);
  CHECK(cfg.serial);
  CHECK(cfg.m == 10);
}

TEST_CASE("zero paths and zero m are rejected with the flag named") {
  CHECK(parse_failure({"price", "--paths", "0"}).message.find("--paths") !=
        std::string::npos);
  CHECK(parse_failure({"price", "--m", "0"}).message.find("--m") !=
        std::string::npos);
  CHECK(parse_failure({"bench", "--thread-list", "0,2"}).message.find("--thread-list") !=
        std::string::npos);
}

TEST_CASE("help carries the defaults") {
  const CliExit help = parse_failure({"price", "--help"});
  CHECK(help.code == 0);
  CHECK(help.message.find("--spot") != std::string::npos);
  CHECK(help.message.find("--method") != std::string::npos);

  const CliExit top = parse_failure({"--help"});
  CHECK(top.code == 0);
  CHECK(top.message.find("price") != std::string::npos);
  CHECK(top.message.find("verify") != std::string::npos);
}

TEST_CASE("verify subcommand parses") {
  CHECK(parse({"verify"}).command == "verify");
}

} // TEST_SUITE
