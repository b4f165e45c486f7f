#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "kinkfield/cli.hpp"

using kinkfield::cli::run;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "kinkfield_test_cli";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("verify on the reference case") {
  const auto r = call({"verify", "--kappa", "1", "--lambda", "1", "--C", "1", "--x-min", "-10",
                       "--x-max", "10", "--n", "4001", "--fd-order", "8", "--tol", "1e-7"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["pass"] == true);
  CHECK(j["grid"]["n"] == 4001);
  CHECK(j["fd"]["order"] == 8);
  CHECK(j["equations"].size() == 11);
  for (const auto& e : j["equations"]) CHECK(e["pass"] == true);
  CHECK(j["config"]["command"] == "verify");
}

TEST_CASE("charge reports a vanishing total") {
  const auto r = call({"charge", "--kappa", "1", "--lambda", "1", "--C", "1", "--tol", "1e-10"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(std::abs(j["charge"]["total"]["value"].get<double>()) <= 1e-10);
  CHECK(j["charge"]["half_right"]["value"].get<double>() > 0.0);
}

TEST_CASE("singular parameters exit 1 with the regularity condition") {
  const auto r = call({"verify", "--kappa", "3", "--lambda", "1", "--C", "1"});
  CHECK(r.code == 1);
  CHECK(r.out.empty());
  CHECK(r.err.find("lambda > kappa/2") != std::string::npos);
}

TEST_CASE("usage errors exit 1 and name the flag") {
  auto r = call({"verify", "--n", "2"});
  CHECK(r.code == 1);
  CHECK(r.err.find("--n") != std::string::npos);
  r = call({"energy", "--format", "xml"});
  CHECK(r.code == 1);
  CHECK(r.err.find("--format") != std::string::npos);
  CHECK(call({}).code == 1);
  CHECK(call({"launch"}).code == 1);
  CHECK(call({"verify", "--bogus", "1"}).code == 1);
  CHECK(call({"verify", "--C", "0"}).code == 1);
  CHECK(call({"stability-witness", "--kappa", "1"}).code == 1);
  CHECK(call({"verify", "--fd-order", "7"}).code == 1);
}

TEST_CASE("numerical failures exit 2") {
  CHECK(call({"energy", "--tol", "1e-300"}).code == 2);
  const auto r = call({"stability-growth", "--kappa", "0", "--probe", "500"});
  CHECK(r.code == 2);
  CHECK(r.err.find("numerical failure") != std::string::npos);
}

TEST_CASE("a failed verification exits 3") {
  const auto r = call({"verify", "--tol", "1e-30"});
  CHECK(r.code == 3);
  CHECK(json::parse(r.out)["pass"] == false);
}

TEST_CASE("every subcommand succeeds with defaults") {
  for (const std::string cmd : {"profile", "verify", "energy", "charge", "stability-growth"}) {
    CHECK(call({cmd}).code == 0);
  }
  CHECK(call({"stability-witness", "--kappa", "0"}).code == 0);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("output formats") {
  const auto profile = call({"profile", "--n", "5"});
  CHECK(profile.out.rfind("x,A,A_prime,", 0) == 0);
  const auto pj = call({"profile", "--n", "5", "--format", "json"});
  CHECK(json::parse(pj.out)["profile"]["points"].size() == 5);
  CHECK(call({"energy", "--format", "csv", "--n", "7"}).out.rfind("x,energy_density,", 0) == 0);
  CHECK(call({"charge", "--format", "csv", "--n", "7"}).out.rfind("x,energy_density,", 0) == 0);
  CHECK(call({"stability-growth", "--format", "csv", "--t-span", "1"}).out.rfind("t,a1(0)", 0) == 0);
  CHECK(call({"verify", "--format", "csv", "--n", "101"}).out.rfind("x,G00,", 0) == 0);
  const auto w = json::parse(call({"stability-witness", "--kappa", "0"}).out);
  CHECK(w["witness"]["value_plus"].get<double>() > 0);
  CHECK(w["witness"]["value_minus"].get<double>() < 0);
}

TEST_CASE("config file with flag override") {
  const auto path = scratch("config.json");
  {
    std::ofstream f(path);
    f << R"({"kappa": 0.5, "lambda": 2.0, "C": 0.5, "n": 501, "tol": 1e-9})";
  }
  const auto r = call({"energy", "--config", path.string(), "--lambda", "1"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["config"]["kappa"] == 0.5);
  CHECK(j["config"]["lambda"] == 1.0);
  CHECK(j["config"]["C"] == 0.5);
  CHECK(j["config"]["n"] == 501);
  CHECK(j["config"]["tol"] == 1e-9);

  {
    std::ofstream f(path);
    f << R"({"kappa": "one"})";
  }
  CHECK(call({"energy", "--config", path.string()}).code == 1);
  CHECK(call({"energy", "--config", scratch("missing.json").string()}).code == 1);
}

TEST_CASE("--out writes the same bytes as stdout") {
  const auto path = scratch("verify.json");
  fs::remove(path);
  const auto r = call({"verify", "--out", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(slurp(path) == call({"verify"}).out);
  CHECK_FALSE(fs::exists(path.string() + ".tmp"));
}

TEST_CASE("identical arguments give identical output") {
  for (const std::vector<std::string> args :
       {std::vector<std::string>{"verify", "--kappa", "0.5"}, {"profile", "--n", "101"},
        {"energy"}, {"stability-growth", "--probe", "0", "0.5"}}) {
    const auto a = call(args);
    const auto b = call(args);
    CHECK(a.out == b.out);
    CHECK(a.code == b.code);
  }
}
