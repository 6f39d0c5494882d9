#include "km2d/cli.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace km2d;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = parse_and_dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(f), {});
}

const std::vector<std::string> kSmallTorus = {"verify-torus", "--sectors", "NS,R", "--cutoff-m",
                                              "5/2", "--cutoff-p", "3", "--window", "1,1,2",
                                              "--max-mode", "1"};

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("structure constants CSV") {
    const Run r = run({"structure-constants", "--lmax", "4"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("l1,m1,l2,m2,l3,m3,value\n", 0) == 0);
    CHECK(r.out.find("\n1,0,1,0,2,0,0.8944271909999") != std::string::npos);
    CHECK(run({"structure-constants", "--format", "json"}).code == kExitUsage);
  }

  TEST_CASE("regularization table") {
    const Run r = run({"regularization"});
    CHECK(r.code == 0);
    CHECK(r.out.find("torus NS") != std::string::npos);
    CHECK(r.out.find("torus R") != std::string::npos);
    CHECK(r.out.find("unresolved") != std::string::npos);
    const std::string path = temp_path("km2d_reg_test.csv");
    CHECK(run({"regularization", "--output", path}).code == 0);
    const std::string csv = slurp(path);
    std::filesystem::remove(path);
    CHECK(csv.find("torus NS,ok,1,1,1\n") != std::string::npos);
    CHECK(csv.find("torus R,ok,1,1,1\n") != std::string::npos);
  }

  TEST_CASE("exit codes") {
    CHECK(run(kSmallTorus).code == kExitPass);
    CHECK(run({"verify-torus", "--bogus"}).code == kExitUsage);
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"verify-torus", "--cutoff-m", "4"}).code == kExitUsage);  // NS needs half-integers
    CHECK(run({"verify-torus", "--rep", "so3-adjoint", "--d", "4"}).code == kExitUsage);
    CHECK(run({"verify-torus", "--cutoff-m", "3/2", "--cutoff-p", "3/2"}).code == kExitUsage);  // window
    CHECK(run({"verify-sphere", "--sectors", "NS", "--cutoff-l", "3/2", "--window", "1,1/2,2",
               "--max-mode", "1"})
              .code == kExitUnresolved);
    const Run raw = run({"verify-sphere", "--sectors", "NS", "--cutoff-l", "3/2", "--window",
                         "1,1/2,2", "--max-mode", "1", "--method", "raw"});
    CHECK(raw.code == kExitCheckFailed);
    CHECK(raw.out.find("FAIL") != std::string::npos);
    CHECK(run({"car-check", "--geometry", "sphere", "--sectors", "R", "--d", "1"}).code == kExitPass);
    CHECK(run({"sphere-abstract", "--lmax", "3", "--lprobe", "1"}).code == kExitPass);
  }

  TEST_CASE("JSON reports are byte-identical across runs") {
    const std::string a = temp_path("km2d_cli_a.json"), b = temp_path("km2d_cli_b.json");
    auto args = kSmallTorus;
    args.insert(args.end(), {"--output", a});
    REQUIRE(run(args).code == 0);
    args.back() = b;
    REQUIRE(run(args).code == 0);
    const std::string ja = slurp(a), jb = slurp(b);
    std::filesystem::remove(a);
    std::filesystem::remove(b);
    CHECK(!ja.empty());
    CHECK(ja == jb);
    CHECK(ja.rfind("{\n  \"task\": \"verify-torus\",\n  \"geometry\": \"torus\",", 0) == 0);
    CHECK(ja.find("\"charges\": {\n    \"c_measured\": 1.5,") != std::string::npos);
  }

  TEST_CASE("config file values sit under explicit flags") {
    const std::string cfg = temp_path("km2d_cli_test.cfg");
    {
      std::ofstream f(cfg);
      f << "# small run\ncommand = verify-torus\nsectors=NS,R\ncutoff-m=5/2\ncutoff-p=3\n"
           "max-mode=1\nwindow=1/2,1/2,1\n";
    }
    const Run from_file = run({"--config", cfg});
    CHECK(from_file.code == 0);
    CHECK(from_file.out.find("window=1/2,1/2,1") != std::string::npos);
    const Run overridden = run({"verify-torus", "--config", cfg, "--window", "1,1,2"});
    CHECK(overridden.code == 0);
    CHECK(overridden.out.find("window=1,1,2") != std::string::npos);
    std::filesystem::remove(cfg);
    CHECK(run({"verify-torus", "--config", cfg}).code == kExitUsage);
  }
}
