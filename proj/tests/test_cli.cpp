#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "centralcfg/errors.hpp"
#include "cli.hpp"
#include "sweep.hpp"

using nlohmann::json;
using namespace centralcfg;
using namespace centralcfg::cli;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw std::runtime_error("no column " + name);
  }
  const std::string& at(std::size_t row, const std::string& name) const { return rows[row][column(name)]; }
};

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

Csv parse_csv(const std::string& text) {
  Csv csv;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  csv.header = split(line, ',');
  while (std::getline(in, line)) {
    if (!line.empty()) csv.rows.push_back(split(line, ','));
  }
  return csv;
}

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() /
            ("centralcfg_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

const std::vector<std::string> kGrid{"sweep", "--masses", "1,1,0.5:2:0.375,0.5:2:0.375", "--a", "-1.5",
                                     "--pattern", "--++", "--starts", "8"};

}  // namespace

TEST(Solve, EqualMassSquare) {
  const Outcome r = run_cli({"solve", "--masses", "1,1,1,1", "--a", "-1.5", "--pattern", "--++"});
  ASSERT_EQ(r.code, exit_ok) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["status"], "accepted");
  ASSERT_FALSE(j["solutions"].empty());
  const json& d = j["solutions"][0]["deltas"];
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(d[i].get<double>()), 0.6911, 1e-4);
}

TEST(Solve, NonPositiveMassIsInvalid) {
  const Outcome r = run_cli({"solve", "--masses", "1,0,1,1", "--a", "-1.5", "--pattern", "--++"});
  EXPECT_EQ(r.code, exit_invalid_input);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["status"], "invalid-input");
  EXPECT_NE(j["error"].get<std::string>().find("masses must be positive"), std::string::npos);
}

TEST(Solve, EqualFirstMassesAreFlaggedSymmetric) {
  const Outcome r = run_cli({"solve", "--masses", "1,1,2,3", "--a", "-1", "--pattern", "--++"});
  ASSERT_EQ(r.code, exit_ok) << r.err;
  const json sol = json::parse(r.out)["solutions"][0];
  EXPECT_NEAR(sol["deltas"][0].get<double>(), sol["deltas"][1].get<double>(), 1e-9);
  EXPECT_TRUE(sol["analysis"]["symmetry"]["checks"][0]["symmetric"].get<bool>());
}

TEST(Solve, CsvFormat) {
  const Outcome r = run_cli({"solve", "--masses", "1,2,3,4", "--a", "-1.5", "--format", "csv"});
  ASSERT_EQ(r.code, exit_ok) << r.err;
  const Csv csv = parse_csv(r.out);
  ASSERT_FALSE(csv.rows.empty());
  EXPECT_NO_THROW(csv.column("delta1"));
}

TEST(Solve, PatternLengthMismatchIsInvalid) {
  EXPECT_EQ(run_cli({"solve", "--masses", "1,1,1,1", "--a", "-1.5", "--pattern", "--+"}).code, exit_invalid_input);
}

TEST(Solve, NoConvergenceExitCode) {
  // the --+++ family has folded away for these masses
  const Outcome r = run_cli({"solve", "--masses", "1,1,1.3,0.8,1.1", "--a", "-1.5", "--pattern", "--+++"});
  EXPECT_EQ(r.code, exit_no_convergence);
  EXPECT_EQ(json::parse(r.out)["status"], "no-convergence");
}

TEST(Solve, WritesToFile) {
  TempDir dir;
  const std::string path = dir.file("square.json");
  ASSERT_EQ(run_cli({"solve", "--masses", "1,1,1,1", "--a", "-1", "--out", path}).code, exit_ok);
  const json j = json::parse(slurp(path));
  EXPECT_NEAR(std::abs(j["solutions"][0]["deltas"][0].get<double>()), 1.0 / std::sqrt(3.0), 1e-10);
}

TEST(Verify, AcceptsSolvedPositionsAndRejectsPerturbed) {
  TempDir dir;
  const json solved = json::parse(run_cli({"solve", "--masses", "1,2,3,4", "--a", "-1.5"}).out);
  json positions{{"points", solved["solutions"][0]["positions"]}, {"masses", {1, 2, 3, 4}}};
  write_file(dir.file("good.json"), positions.dump());
  const Outcome good = run_cli({"verify", dir.file("good.json"), "--a", "-1.5"});
  EXPECT_EQ(good.code, exit_ok) << good.out;
  EXPECT_TRUE(json::parse(good.out)["accepted"].get<bool>());

  positions["points"][0][0] = positions["points"][0][0].get<double>() + 0.05;
  write_file(dir.file("bad.json"), positions.dump());
  const Outcome bad = run_cli({"verify", dir.file("bad.json"), "--a", "-1.5"});
  EXPECT_EQ(bad.code, exit_rejected);
  EXPECT_FALSE(json::parse(bad.out)["accepted"].get<bool>());
}

TEST(Verify, MissingMassesIsInvalid) {
  TempDir dir;
  write_file(dir.file("p.json"), R"({"points": [[0,0],[1,0],[1,1],[0,1]]})");
  EXPECT_EQ(run_cli({"verify", dir.file("p.json"), "--a", "-1.5"}).code, exit_invalid_input);
}

TEST(Embed, SquareAndNonEuclidean) {
  TempDir dir;
  write_file(dir.file("square.json"), R"({"s": [[0,1,2,1],[1,0,1,2],[2,1,0,1],[1,2,1,0]], "dim": 2})");
  const Outcome ok = run_cli({"embed", dir.file("square.json")});
  ASSERT_EQ(ok.code, exit_ok) << ok.out;
  EXPECT_EQ(json::parse(ok.out)["points"].size(), 4u);

  // a regular tetrahedron does not fit in the plane
  write_file(dir.file("tetra.json"), R"({"s": [[0,1,1,1],[1,0,1,1],[1,1,0,1],[1,1,1,0]]})");
  const Outcome bad = run_cli({"embed", dir.file("tetra.json"), "--dim", "2"});
  EXPECT_EQ(bad.code, exit_rejected);
  EXPECT_EQ(json::parse(bad.out)["status"], "not-realizable");
}

TEST(Sweep, EqualFirstMassesGridIsSymmetric) {
  const Outcome r = run_cli(kGrid);
  ASSERT_EQ(r.code, exit_ok) << r.err;
  const Csv csv = parse_csv(r.out);
  ASSERT_EQ(csv.rows.size(), 25u);
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    EXPECT_EQ(csv.at(i, "status"), "accepted");
    EXPECT_EQ(csv.at(i, "symmetric_12"), "1");
    EXPECT_EQ(csv.at(i, "violations"), "");
  }
  const json summary = json::parse(r.err);
  EXPECT_EQ(summary["points"], 25);
  EXPECT_EQ(summary["total_violations"], 0);
}

TEST(Sweep, LighterFirstMassOrderingChain) {
  std::vector<std::string> args = kGrid;
  args[2] = "1,1.5,0.5:2:0.375,0.5:2:0.375";
  const Outcome r = run_cli(args);
  ASSERT_EQ(r.code, exit_ok) << r.err;
  const Csv csv = parse_csv(r.out);
  ASSERT_EQ(csv.rows.size(), 25u);
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    EXPECT_EQ(csv.at(i, "mass_order"), "-1");
    EXPECT_EQ(csv.at(i, "area_order"), "-1");
    EXPECT_EQ(csv.at(i, "ordering_consistent"), "1");
    EXPECT_EQ(csv.at(i, "symmetric_12"), "0");
  }
}

TEST(Sweep, EmptyGridIsInvalid) {
  EXPECT_EQ(run_cli({"sweep", "--masses", "1,1,2:1:0.5,1", "--a", "-1.5"}).code, exit_invalid_input);
  EXPECT_EQ(run_cli({"sweep", "--a", "-1.5"}).code, exit_invalid_input);
}

TEST(Sweep, ByteIdenticalAcrossThreadCounts) {
  TempDir dir;
  std::vector<std::string> serial = kGrid;
  serial.insert(serial.end(), {"--threads", "1", "--out", dir.file("a.csv"), "--summary", dir.file("a.json")});
  std::vector<std::string> parallel = kGrid;
  parallel.insert(parallel.end(), {"--threads", "4", "--out", dir.file("b.csv"), "--summary", dir.file("b.json")});
  ASSERT_EQ(run_cli(serial).code, exit_ok);
  ASSERT_EQ(run_cli(parallel).code, exit_ok);
  EXPECT_EQ(slurp(dir.file("a.csv")), slurp(dir.file("b.csv")));
  EXPECT_EQ(json::parse(slurp(dir.file("a.json")))["spec_hash"], json::parse(slurp(dir.file("b.json")))["spec_hash"]);
}

TEST(Sweep, SpecFileAndPlotData) {
  TempDir dir;
  write_file(dir.file("spec.json"), R"({"masses": [1, "1|1.2", "0.8|1.6", 1.3], "exponents": [-1.5, -1],
                                        "pattern": "--++", "seed": 3, "starts": 8})");
  const Outcome r = run_cli({"sweep", "--spec", dir.file("spec.json"), "--plot", dir.file("plot.csv"),
                             "--summary", dir.file("summary.json")});
  ASSERT_EQ(r.code, exit_ok) << r.err;
  EXPECT_EQ(parse_csv(r.out).rows.size(), 8u);
  const Csv plot = parse_csv(slurp(dir.file("plot.csv")));
  EXPECT_EQ(plot.header, (std::vector<std::string>{"index", "mass_gap", "distance_asymmetry", "delta_gap"}));
  EXPECT_EQ(plot.rows.size(), 8u);
  EXPECT_EQ(json::parse(slurp(dir.file("summary.json")))["points"], 8);
}

TEST(Sweep, JsonFormat) {
  std::vector<std::string> args{"sweep", "--masses", "1,2,3,4", "--a", "-1.5", "--format", "json"};
  const Outcome r = run_cli(args);
  ASSERT_EQ(r.code, exit_ok) << r.err;
  const json rows = json::parse(r.out);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0]["status"], "accepted");
}

TEST(SweepGrid, AxisSyntax) {
  EXPECT_EQ(parse_axis("2.5"), (std::vector<double>{2.5}));
  EXPECT_EQ(parse_axis("1|2|4"), (std::vector<double>{1, 2, 4}));
  const std::vector<double> range = parse_axis("0.5:2:0.5");
  ASSERT_EQ(range.size(), 4u);
  EXPECT_DOUBLE_EQ(range.back(), 2.0);
  EXPECT_THROW(parse_axis("1:2:0"), InvalidInput);
  EXPECT_THROW(parse_axis("abc"), InvalidInput);
}

TEST(SweepGrid, LastCoordinateFastest) {
  SweepSpec spec;
  spec.mass_axes = {{1}, {1, 2}, {3, 4}, {5}};
  spec.exponents = {-1.5, -1};
  const std::vector<GridPoint> grid = expand_grid(spec);
  ASSERT_EQ(grid.size(), 8u);
  EXPECT_EQ(grid[0].masses, (std::vector<double>{1, 1, 3, 5}));
  EXPECT_EQ(grid[1].masses, (std::vector<double>{1, 1, 4, 5}));
  EXPECT_EQ(grid[2].masses, (std::vector<double>{1, 2, 3, 5}));
  EXPECT_EQ(grid[0].a, -1.5);
  EXPECT_EQ(grid[4].a, -1.0);

  spec.exponents = {0.0};
  EXPECT_THROW(expand_grid(spec), InvalidInput);
  spec.exponents = {-1};
  spec.mass_axes = {{1}, {-1}, {1}, {1}};
  EXPECT_THROW(expand_grid(spec), InvalidInput);
}

TEST(SweepGrid, HashIgnoresThreads) {
  SweepSpec spec;
  spec.mass_axes = {{1}, {1}, {2}, {3}};
  spec.exponents = {-1.5};
  const std::string h = spec_hash(spec);
  EXPECT_EQ(h.size(), 16u);
  spec.threads = 8;
  EXPECT_EQ(spec_hash(spec), h);
  spec.seed = 1;
  EXPECT_NE(spec_hash(spec), h);
}

TEST(Propcheck, LaguerrePasses) {
  const Outcome r = run_cli({"propcheck", "laguerre", "--samples", "2000", "--seed", "7"});
  ASSERT_EQ(r.code, exit_ok) << r.out;
  const json j = json::parse(r.out);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_EQ(j["lemma"], "laguerre");
  EXPECT_EQ(j["seed"], 7);
  EXPECT_GT(j["min_value"].get<double>(), 0.0);
}

TEST(Propcheck, UnknownLemmaIsInvalid) {
  EXPECT_EQ(run_cli({"propcheck", "lemma9"}).code, exit_invalid_input);
}

TEST(Usage, HelpAndUnknownCommand) {
  EXPECT_EQ(run_cli({"--help"}).code, exit_ok);
  EXPECT_EQ(run_cli({"frobnicate"}).code, exit_invalid_input);
  EXPECT_EQ(run_cli({"solve", "--masses", "1,1,1,1", "--a", "x"}).code, exit_invalid_input);
}

TEST(Executable, ExitCodes) {
  const auto status = [](const std::string& args) {
    const std::string command = std::string("\"") + CENTRALCFG_EXE + "\" " + args + " > /dev/null 2>&1";
    const int raw = std::system(command.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  EXPECT_EQ(status("solve --masses 1,1,1,1 --a -1.5 --pattern --++"), 0);
  EXPECT_EQ(status("solve --masses 1,0,1,1 --a -1.5"), 1);
  EXPECT_EQ(status("propcheck nope"), 1);
}
