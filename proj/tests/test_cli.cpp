#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const std::string bin = STOKESREC_BIN;
const std::string scenario_dir = STOKESREC_SCENARIO_DIR;

std::string temp_dir() {
  static int counter = 0;
  const auto dir = fs::temp_directory_path() / ("stokesrec_cli_" + std::to_string(::getpid()) +
                                                "_" + std::to_string(counter++));
  fs::create_directories(dir);
  return dir.string();
}

int run(const std::string& args) {
  const std::string cmd = bin + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}
}  // namespace

TEST_CASE("pipeline subcommand produces all artifacts") {
  const std::string out = temp_dir();
  const int code = run("pipeline --scenario " + scenario_dir + "/disk.json --m 5 --n-prony 2" +
                       " --grid 96 --out " + out);
  CHECK(code == 0);
  for (const std::string name :
       {"measurements.json", "moments.csv", "moments.json", "theta_contours.csv", "prony.json",
        "indicator.pgm", "indicator_boundary.csv", "manifest.json"})
    CHECK(fs::exists(out + "/" + name));
}

TEST_CASE("stagewise run: forward, then each inverse stage from files alone") {
  const std::string out = temp_dir();
  CHECK(run("forward --scenario " + scenario_dir + "/disk.json --m 5 --out " + out) == 0);
  CHECK(fs::exists(out + "/measurements.json"));
  CHECK(run("moments --measurements " + out + "/measurements.json --out " + out) == 0);
  CHECK(fs::exists(out + "/moments.csv"));
  CHECK(run("bergman --moments " + out + "/moments.csv --grid 96 --lambda-levels 0.4,1.0 --out " +
            out) == 0);
  CHECK(fs::exists(out + "/theta_contours.csv"));
  CHECK(run("prony --moments " + out + "/moments.csv --n-prony 2 --out " + out) == 0);
  CHECK(fs::exists(out + "/prony.json"));
  CHECK(run("balayage --prony " + out + "/prony.json --grid 96 --out " + out) == 0);
  CHECK(fs::exists(out + "/indicator.pgm"));
}

TEST_CASE("exit code 2 for validation and parse failures") {
  const std::string out = temp_dir();
  // missing required option
  CHECK(run("forward --out " + out) == 2);
  // malformed scenario file
  const std::string bad = out + "/bad.json";
  std::ofstream(bad) << "{ nope";
  CHECK(run("forward --scenario " + bad + " --m 5 --out " + out) == 2);
  // n_prony too large for m
  CHECK(run("pipeline --scenario " + scenario_dir + "/disk.json --m 5 --n-prony 4 --grid 64 --out " +
            out) == 2);
  // m below the minimum
  CHECK(run("forward --scenario " + scenario_dir + "/disk.json --m 2 --out " + out) == 2);
}

TEST_CASE("noise flag is honored and recorded") {
  const std::string out = temp_dir();
  CHECK(run("forward --scenario " + scenario_dir + "/disk.json --m 4 --noise 0.01 --seed 11 --out " +
            out) == 0);
  std::ifstream in(out + "/measurements.json");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text.find("\"noise\":0.01") != std::string::npos);
  CHECK(text.find("\"seed\":11") != std::string::npos);
}

TEST_CASE("two-obstacle reconstruction runs at m=19, n=8") {
  const std::string out = temp_dir();
  const int code = run("pipeline --scenario " + scenario_dir + "/example2.json --m 19" +
                       " --n-prony 8 --grid 128 --out " + out);
  CHECK(code == 0);
  std::ifstream in(out + "/prony.json");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text.find("\"effective_order\": 8") != std::string::npos);
  CHECK(fs::exists(out + "/indicator.pgm"));
}

TEST_CASE("empty scenario flows through to an empty reconstruction") {
  const std::string out = temp_dir();
  const int code = run("pipeline --scenario " + scenario_dir + "/empty.json --m 4 --n-prony 1" +
                       " --grid 64 --out " + out);
  CHECK(code == 0);
  std::ifstream in(out + "/prony.json");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text.find("\"effective_order\": 0") != std::string::npos);
}
