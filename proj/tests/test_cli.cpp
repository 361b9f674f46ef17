#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(CLI_PATH) + " " + args + " > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

fs::path write_config(const fs::path& dir, const std::string& name, const std::string& body) {
  fs::path p = dir / name;
  std::ofstream(p) << body;
  return p;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("apxxx_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("verify on the default benchmark exits 0") {
  TempDir tmp;
  CHECK(run("verify --out " + (tmp.path / "out").string()) == 0);
}

TEST_CASE("coinciding inhomogeneities are a configuration error (exit 2)") {
  TempDir tmp;
  fs::path cfg = write_config(tmp.path, "bad.json",
                              R"({"N":2,"spins":["1/2","1/2"],"eta":[0.0,1.0],)"
                              R"("inhom":[[1.0,0.0],[1.0,0.0]]})");
  CHECK(run("verify --config " + cfg.string() + " --out " + (tmp.path / "out").string()) == 2);
}

TEST_CASE("unknown config fields are a configuration error (exit 2)") {
  TempDir tmp;
  fs::path cfg = write_config(tmp.path, "extra.json",
                              R"({"N":1,"spins":["1/2"],"eta":[0.0,1.0],)"
                              R"("inhom":[[0.0,0.0]],"typo_field":1})");
  CHECK(run("verify --config " + cfg.string() + " --out " + (tmp.path / "out").string()) == 2);
}

TEST_CASE("missing config file is a configuration error (exit 2)") {
  TempDir tmp;
  CHECK(run("verify --config /nonexistent.json --out " + (tmp.path / "out").string()) == 2);
}

TEST_CASE("an impossible tolerance is a numerical failure (exit 1)") {
  TempDir tmp;
  CHECK(run("verify --tol 1e-300 --out " + (tmp.path / "out").string()) == 1);
}

TEST_CASE("every subcommand writes its report") {
  TempDir tmp;
  fs::path out = tmp.path / "out";
  CHECK(run("spectrum --out " + out.string()) == 0);
  CHECK(fs::exists(out / "spectrum.json"));
  CHECK(run("formfactors --out " + out.string()) == 0);
  CHECK(fs::exists(out / "formfactors.csv"));
  CHECK(run("correlate --out " + out.string()) == 0);
  CHECK(fs::exists(out / "correlate.json"));
  CHECK(run("reconstruct --out " + out.string()) == 0);
  CHECK(fs::exists(out / "reconstruct.json"));
  CHECK(run("verify --out " + out.string()) == 0);
  CHECK(fs::exists(out / "report_verify.json"));
}

TEST_CASE("runs are deterministic for a fixed seed") {
  TempDir tmp;
  fs::path o1 = tmp.path / "a", o2 = tmp.path / "b";
  REQUIRE(run("formfactors --seed 42 --out " + o1.string()) == 0);
  REQUIRE(run("formfactors --seed 42 --out " + o2.string()) == 0);
  std::ifstream f1(o1 / "formfactors.csv"), f2(o2 / "formfactors.csv");
  std::string s1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
  std::string s2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
  CHECK(s1 == s2);
  CHECK(!s1.empty());
}
