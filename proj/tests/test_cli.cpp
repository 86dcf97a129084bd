#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "hpw/json_io.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kWork = fs::temp_directory_path() / "hpwlab_cli_test";

int run(const std::string& args) {
  const std::string cmd = std::string(HPWLAB_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct WorkDir {
  WorkDir() {
    fs::remove_all(kWork);
    fs::create_directories(kWork);
  }
  ~WorkDir() { fs::remove_all(kWork); }
};

}  // namespace

TEST_CASE("lattice runs are deterministic") {
  WorkDir dir;
  const fs::path a = kWork / "a.json";
  const fs::path b = kWork / "b.json";
  CHECK(run("lattice --set r=0.5 --set R_dom=2 --set seed=3 --out " + a.string()) == 0);
  CHECK(run("lattice --set r=0.5 --set R_dom=2 --set seed=3 --out " + b.string()) == 0);
  CHECK(slurp(a) == slurp(b));
  const hpw::Json json = hpw::Json::parse(slurp(a));
  CHECK(json.at("command") == "lattice");
  CHECK(json.at("passed") == true);
}

TEST_CASE("config files merge with overrides") {
  WorkDir dir;
  const fs::path config = kWork / "config.json";
  std::ofstream(config) << R"({"r": 0.5, "R_dom": 2, "seed": 4, "format": "csv"})";
  const fs::path out = kWork / "out.csv";
  CHECK(run("lattice --config " + config.string() + " --set R_dom=1.5 --out " + out.string()) == 0);
  CHECK(slurp(out).rfind("index,u,v\n", 0) == 0);
  const fs::path json_out = kWork / "out.json";
  CHECK(run("lattice --config " + config.string() + " --set R_dom=1.5 --format json --out " +
            json_out.string()) == 0);
  CHECK(hpw::Json::parse(slurp(json_out)).at("result").at("R_dom") == 1.5);
}

TEST_CASE("euclid oracle") {
  WorkDir dir;
  const fs::path out = kWork / "e.json";
  CHECK(run("euclid-oracle --set seed=1 --out " + out.string()) == 0);
  CHECK(hpw::Json::parse(slurp(out)).at("passed") == true);
}

TEST_CASE("invalid configurations exit 64 without output") {
  WorkDir dir;
  const fs::path out = kWork / "bad.json";
  CHECK(run("nikolskii --set seed=1 --set p=3 --set q=2 --out " + out.string()) == 64);
  CHECK(run("lattice --set seed=1 --set bogus=1 --out " + out.string()) == 64);
  CHECK(run("lattice --set r=0.5 --out " + out.string()) == 64);
  CHECK(run("kernel --set seed=1 --set omega=-2 --out " + out.string()) == 64);
  CHECK(run("teleport --set seed=1 --out " + out.string()) != 0);
  CHECK_FALSE(fs::exists(out));
}

TEST_CASE("runtime errors exit 1") {
  WorkDir dir;
  const fs::path out = kWork / "r.json";
  CHECK(run("reconstruct --set seed=1 --set problem=" + (kWork / "missing.json").string() +
            " --out " + out.string()) == 1);
}
