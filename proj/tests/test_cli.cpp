#include "doctest.h"

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cuspkit/cli.hpp"
#include "cuspkit/parallel.hpp"
#include "cuspkit/report.hpp"

using namespace cuspkit;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "cuspkit");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string temp_file(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path.string();
}

}  // namespace

TEST_CASE("JSON rendering") {
  Json j;
  j["a"] = 1.0;
  j["b"] = -0.0;
  j["c"] = 0.1;
  j["d"] = NAN;
  j["e"] = 3;
  j["f"] = Json::array({1e-20, 2.5});
  CHECK(dump_json(j, 0) == "{\"a\":1.0,\"b\":0,\"c\":0.10000000000000001,\"d\":null,\"e\":3,\"f\":[9.9999999999999995e-21,2.5]}");
  CHECK(Json::parse(dump_json(j))["c"].get<double>() == 0.1);
  const Json z = to_json(Complex(1.5, -2.0));
  CHECK(dump_json(z, 0) == "[1.5,-2.0]");
}

TEST_CASE("CSV rendering") {
  Json row;
  row["name"] = "a,b \"c\"";
  row["value"] = 2.0;
  row["list"] = Json::array({1, 2});
  const std::string csv = to_csv({row});
  CHECK(csv == "name,value,list\r\n\"a,b \"\"c\"\"\",2.0,\"[1,2]\"\r\n");
}

TEST_CASE("constants table") {
  const Run r = run({"constants", "--max-dim", "12", "--format", "csv"});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(lines, line)) {
    REQUIRE_FALSE(line.empty());
    CHECK(line.back() == '\r');
    rows.push_back(line);
  }
  REQUIRE(rows.size() == 11);
  CHECK(rows[0] == "n,dInfClosedNumerator,dInfAsymptotic,cN\r");
  CHECK(rows[1].rfind("3,0.8660254037844", 0) == 0);
}

TEST_CASE("flag errors exit with 2") {
  CHECK(run({"constants", "--bogus"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"constants", "--max-dim", "2"}).code == 2);
  CHECK(run({"--format", "xml", "constants"}).code == 2);
  CHECK(run({"--tolerance", "-1", "constants"}).code == 2);
  CHECK(run({"bounds", "dim3", "--case", "para-pos", "--params", "h=abc"}).code == 2);
  CHECK(run({"bounds", "dim3", "--case", "para-pos", "--params", "h=1.5"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("resource limits exit with 3") {
  const Run r = run({"gieseking", "systole", "--depth", "17"});
  CHECK(r.code == 3);
  CHECK(r.err.find("ResourceLimit") != std::string::npos);
}

TEST_CASE("gieseking verbs") {
  const Run sys = run({"gieseking", "systole", "--json"});
  REQUIRE(sys.code == 0);
  const Json s = Json::parse(sys.out);
  CHECK(s[0]["verified"].get<bool>());
  CHECK(s[0]["lhs"].get<double>() == doctest::Approx(2.0 * std::acosh((1.0 + std::sqrt(13.0)) / 4.0)));
  const Json spectrum = Json::parse(run({"gieseking", "spectrum", "--depth", "6", "--limit", "3"}).out);
  CHECK(spectrum.size() == 3);
  CHECK(run({"gieseking", "cusp"}).code == 0);
  CHECK(run({"gieseking", "inradius"}).code == 0);
  CHECK(run({"gieseking", "polyhedra", "--format", "text"}).code == 0);
}

TEST_CASE("bounds verbs") {
  const Json pos = Json::parse(run({"bounds", "dim3", "--case", "para-pos", "--params", "h=0.3"}).out);
  CHECK(pos[0]["lhs"].get<double>() == doctest::Approx(0.7193).epsilon(1e-4));
  const Run lox = run({"bounds", "dim3", "--case", "loxodromic", "--params", "h=1,b=1,covol=1.7320508075688772"});
  CHECK(lox.code == 0);
  const Run bad = run({"bounds", "dim3", "--case", "loxodromic", "--params", "h=1,b=3,covol=1"});
  CHECK(bad.code == 1);
  const Json neg = Json::parse(run({"bounds", "dim3", "--case", "para-neg"}).out);
  CHECK(neg[0]["witness"]["argmax"].get<double>() == doctest::Approx(1.0));
  const Json dimn = Json::parse(run({"bounds", "dimn", "--n", "3", "--ic", "2"}).out);
  CHECK(dimn[0]["coefficient"].get<double>() == doctest::Approx(4.0 * std::sqrt(3.0)));
}

TEST_CASE("flatpack verbs") {
  const std::string good = temp_file("cuspkit_good.json",
                                     R"({"surface":{"kind":"torus","b1":[2,0],"b2":[0.5,0.8660254037844386]},)"
                                     R"("c1":[0,0],"c2":[1,0],"h":1})");
  const Run ok = run({"flatpack", "check", "--config", good});
  CHECK(ok.code == 0);
  CHECK(Json::parse(ok.out)[0]["objective"].get<double>() == doctest::Approx(std::sqrt(5.0 / 3.0)));
  const std::string bad = temp_file("cuspkit_bad.json",
                                    R"({"surface":{"kind":"klein","alphaShift":1,"betaShift":1},)"
                                    R"("c1":[0,0],"c2":[0.5,0.5],"h":2})");
  CHECK(run({"flatpack", "check", "--config", bad}).code == 1);
  const std::string junk = temp_file("cuspkit_junk.json", "{not json");
  CHECK(run({"flatpack", "check", "--config", junk}).code == 2);
  CHECK(run({"flatpack", "check", "--config", "/nonexistent/x.json"}).code == 2);
  const Run opt = run({"flatpack", "optimize", "--family", "torus", "--restarts", "8", "--seed", "1", "--json"});
  CHECK(opt.code == 0);
}

TEST_CASE("verify all is complete and reproducible") {
  const Run a = run({"verify", "all", "--json"});
  REQUIRE(a.code == 0);
  const Json report = Json::parse(a.out);
  bool theorem = false;
  for (const Json& row : report) {
    CHECK(row["verified"].get<bool>());
    if (row["claim"].get<std::string>().rfind("systole theorem equality", 0) == 0) {
      theorem = true;
      CHECK(std::abs(row["slack"].get<double>()) < 1e-9);
    }
  }
  CHECK(theorem);
  const Run b = run({"verify", "all", "--json"});
  CHECK(a.out == b.out);

  const std::string path = (std::filesystem::temp_directory_path() / "cuspkit_verify.json").string();
  CHECK(run({"--output", path, "verify", "all"}).code == 0);
  std::ifstream in(path, std::ios::binary);
  const std::string written((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(written == a.out);
}

TEST_CASE("thread cap from the environment") {
  setenv("CUSPKIT_THREADS", "3", 1);
  CHECK(worker_count() == 3);
  setenv("CUSPKIT_THREADS", "zero", 1);
  CHECK(worker_count() >= 1);
  unsetenv("CUSPKIT_THREADS");

  std::atomic<int> sum{0};
  parallel_for(100, 4, [&](std::size_t i) { sum += static_cast<int>(i); });
  CHECK(sum == 4950);
  CHECK_THROWS_AS(parallel_for(10, 2, [](std::size_t i) {
                    if (i == 7) throw Error(ErrorCode::InvalidArgument, "seven");
                  }),
                  Error);
}
