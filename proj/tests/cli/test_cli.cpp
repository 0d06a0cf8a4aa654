#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() /
          ("cosite_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir);
  }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(dir / name) << text;
    return dir / name;
  }
};

int run(const std::string& args, const fs::path& out_file = "/dev/null") {
  const auto cmd = std::string(COSITE_CLI_PATH) + " " + args + " >" + out_file.string() +
                   " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("exit codes") {
  Scratch s;
  const auto out = s.dir.string();
  CHECK(run("--help") == 0);
  CHECK(run("") == 4);
  CHECK(run("ingest --min-sim abc") == 4);
  CHECK(run("pipeline --edges " + out + "/absent.tsv --out-dir " + out) == 2);
  const auto bad = s.write("bad.tsv", "a\tb\t0\n");
  CHECK(run("ingest --edges " + bad.string() + " --out-dir " + out) == 3);
  const auto good = s.write("good.tsv", "c\ta\nd\ta\nc\tb\nd\tb\n");
  CHECK(run("pipeline --edges " + good.string() + " --out-dir " + out + " --min-sim 2") == 4);
  CHECK(run("pipeline --edges " + good.string() + " --out-dir " + out + " --mode bogus") == 4);
  CHECK(run("pipeline --edges " + good.string() + " --out-dir " + out) == 0);
  CHECK(run("report --out-dir " + out + " --remove-arcs 5-6") == 5);
}

TEST_CASE("pipeline writes artifacts and prints the report") {
  Scratch s;
  const auto good = s.write("good.tsv", "c\ta\nd\ta\nc\tb\nd\tb\nb\tb\n");
  const auto cfg = s.write("run.cfg", "min_sim=0.5\nformat=json\nout_dir=" +
                                          (s.dir / "out").string() + "\n");
  const auto stdout_file = s.dir / "stdout.txt";
  REQUIRE(run("pipeline --config " + cfg.string() + " --edges " + good.string(),
              stdout_file) == 0);
  const auto printed = slurp(stdout_file);
  CHECK(printed.find("\"accounting\"") != std::string::npos);
  CHECK(printed.find("\"self_links\": 1") != std::string::npos);
  for (const char* name : {"matrix.tsv", "accounting.json", "cooccurrence.csv",
                           "similarity.csv", "clusters.json", "network.json",
                           "structure.json", "report.json", "network.json"}) {
    CHECK_MESSAGE(fs::exists(s.dir / "out" / name), name);
  }
  // Flag beats the config file.
  REQUIRE(run("export --config " + cfg.string() + " --format graphml") == 0);
  CHECK(fs::exists(s.dir / "out" / "network.graphml"));
}
