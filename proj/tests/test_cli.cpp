// Runs the command-line binary and checks exit codes and outputs.

#include "turan/io.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

const std::filesystem::path kCli = TURAN_CLI_PATH;
const std::filesystem::path kSource = TURAN_SOURCE_DIR;

struct Scratch {
  std::filesystem::path dir;
  Scratch() {
    dir = std::filesystem::temp_directory_path() / ("turan_cli_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
  }
  ~Scratch() { std::filesystem::remove_all(dir); }
  std::filesystem::path write(const std::string& name, const std::string& text) const {
    std::ofstream(dir / name) << text;
    return dir / name;
  }
};

int run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " '" + kCli.string() + "' " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, SolvesAndWritesOutputs) {
  Scratch s;
  const auto report = s.dir / "r.json", csv = s.dir / "r.csv";
  ASSERT_EQ(run("--spec " + (kSource / "problems/space_square.json").string() + " --out " + report.string() +
                " --csv " + csv.string()),
            0);
  const turan::Json r = turan::Json::parse(read_file(report));
  EXPECT_EQ(r["value"]["status"], "exact");
  EXPECT_TRUE(r.contains("timestamp"));
  EXPECT_EQ(read_file(csv).rfind("t,phi\n", 0), 0u);
}

TEST(Cli, ArithmeticFlagOverridesTheSpec) {
  Scratch s;
  const auto spec = s.write("g.json", R"({"mode":"solve-h","index_set":[2],"params":{"m":6}})");
  const auto out = s.dir / "g.report.json";
  ASSERT_EQ(run("--spec " + spec.string() + " --arithmetic float --out " + out.string()), 0);
  EXPECT_EQ(turan::Json::parse(read_file(out))["details"]["arithmetic"], "float");
  ASSERT_EQ(run("--spec " + spec.string() + " --arithmetic rational --out " + out.string()), 0);
  EXPECT_EQ(turan::Json::parse(read_file(out))["details"]["value_exact"], "3/2");
}

TEST(Cli, SpecErrorsExitWithTwo) {
  Scratch s;
  EXPECT_EQ(run("--spec " + s.write("a.json", "{\"mode\": \"space\",\n  ]").string()), 2);
  EXPECT_EQ(run("--spec " + s.write("b.json", R"({"mode":"space","unknown":0})").string()), 2);
  EXPECT_EQ(run("--spec " + (s.dir / "missing.json").string()), 2);
  // Domain-level rejection: an atom would leave the domain.
  EXPECT_EQ(run("--spec " + s.write("c.json", R"({"mode":"construct",
      "domain":{"space":"euclidean","dim":1,"shape":{"type":"box","halfwidth":[1]}},"point":["3/5"],
      "params":{"phi":{"coefficients":{"1":1,"2":0.5}}}})")
                                .string()),
            2);
}

TEST(Cli, ResourceLimitExitsWithThree) {
  Scratch s;
  const auto spec = s.write(
      "big.json", R"({"mode":"solve-h","index_set":{"kind":"range","lo":2,"hi":20},"params":{"m":60},
                    "solver_cfg":{"arithmetic":"rational"}})");
  EXPECT_EQ(run("--spec " + spec.string(), "TURAN_MAX_BITS=8"), 3);
  EXPECT_EQ(run("--spec " + spec.string()), 0);
}

TEST(Cli, ReportPathFromTheSpec) {
  Scratch s;
  const auto out = s.dir / "from_spec.json";
  const auto spec = s.write("o.json", R"({"mode":"solve-h","index_set":[3],"params":{"m":4},"outputs":{"report_path":")" +
                                          out.string() + R"("}})");
  ASSERT_EQ(run("--spec " + spec.string()), 0);
  EXPECT_EQ(turan::Json::parse(read_file(out))["value"]["status"], "unbounded");
}
