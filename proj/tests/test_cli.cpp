#include <doctest.h>

#include <sys/wait.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code;
  std::string out, err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& tag) {
  static int counter = 0;
  const fs::path d = fs::temp_directory_path() /
                     ("lamhull_cli_" + tag + "_" + std::to_string(::getpid()) +
                      "_" + std::to_string(counter++));
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

RunResult run_cli(const std::string& args, const fs::path& dir) {
  const fs::path out = dir / "stdout.txt", err = dir / "stderr.txt";
  const std::string cmd = std::string(LAMHULL_CLI_PATH) + " " + args + " >" +
                          out.string() + " 2>" + err.string();
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

const char* kBase = "--spectrum 0.2,0.3,0.5";

}  // namespace

TEST_CASE("cli curves writes the branch table and is deterministic") {
  const fs::path d1 = fresh_dir("curves1"), d2 = fresh_dir("curves2");
  const std::string args = std::string("curves ") + kBase +
                           " --samples 33 --output-dir ";
  const RunResult r1 = run_cli(args + d1.string(), d1);
  REQUIRE(r1.code == 0);
  CHECK(r1.out.find("wrote") != std::string::npos);

  const auto rows = lines_of(slurp(d1 / "curves.csv"));
  REQUIRE(rows.size() == 1 + 2 * 33);
  CHECK(rows[0] == "branch,t,e2,m1,m2,m3,i2,i3");
  const auto first = split_csv(rows[1]);
  REQUIRE(first.size() == 8);
  CHECK(first[0] == "alpha");
  CHECK(first[1] == "0");
  CHECK(first[2] == "0.3");
  CHECK(first[3] == "0.2");
  CHECK(first[5] == "0.5");
  int alpha_rows = 0, beta_rows = 0;
  for (size_t i = 1; i < rows.size(); ++i) {
    const auto c = split_csv(rows[i]);
    (c[0] == "alpha" ? alpha_rows : beta_rows) += 1;
  }
  CHECK(alpha_rows == 33);
  CHECK(beta_rows == 33);

  const RunResult r2 = run_cli(args + d2.string(), d2);
  REQUIRE(r2.code == 0);
  CHECK(slurp(d1 / "curves.csv") == slurp(d2 / "curves.csv"));
}

TEST_CASE("cli curves emits parseable json on request") {
  const fs::path d = fresh_dir("curvesjson");
  const RunResult r = run_cli(std::string("curves ") + kBase +
                                  " --samples 9 --format json --output-dir " +
                                  d.string(),
                              d);
  REQUIRE(r.code == 0);
  const json j = json::parse(slurp(d / "curves.json"));
  REQUIRE(j.is_array());
  CHECK(j.size() == 18);
  CHECK(j[0].at("branch").get<std::string>() == "alpha");
  CHECK(j[0].at("e2").get<double>() == 0.3);
  CHECK(j[17].at("branch").get<std::string>() == "beta");
}

TEST_CASE("cli hull emits a closed polygon and the hexagon") {
  const fs::path d = fresh_dir("hull");
  const RunResult r = run_cli(
      std::string("hull ") + kBase + " --samples 64 --output-dir " +
          d.string(),
      d);
  REQUIRE(r.code == 0);

  const auto rows = lines_of(slurp(d / "hull.csv"));
  const int n = 12 * 64 - 12;
  REQUIRE(rows.size() == 1 + static_cast<size_t>(n) + 1);
  CHECK(rows[0] == "idx,u,v,m1,m2,m3");
  const auto first = split_csv(rows[1]);
  const auto last = split_csv(rows.back());
  REQUIRE(first.size() == 6);
  REQUIRE(last.size() == 6);
  CHECK(first[0] == "0");
  CHECK(last[0] == std::to_string(n));
  for (int c = 1; c < 6; ++c) CHECK(first[c] == last[c]);

  const auto hex = lines_of(slurp(d / "hexagon.csv"));
  REQUIRE(hex.size() == 7);
  CHECK(hex[0] == "idx,u,v,m1,m2,m3");
}

TEST_CASE("cli trajectory covers the self pair without leaving the region") {
  const fs::path d = fresh_dir("traj");
  const RunResult r = run_cli(
      std::string("trajectory ") + kBase + std::string(" --from 0.2,0.3,0.5 --to 0.2,0.3,0.5 "
                  "--samples 32 --output-dir ") +
          d.string(),
      d);
  REQUIRE(r.code == 0);
  const auto rows = lines_of(slurp(d / "trajectory.csv"));
  CHECK(rows[0] == "lambda,t,m1,m2,m3,i2,i3,membership");
  // Two admissible endpoints (2/3 and 3/2; the ratio 1 is the puncture).
  REQUIRE(rows.size() == 1 + 2 * 32);
  for (size_t i = 1; i < rows.size(); ++i) {
    const auto c = split_csv(rows[i]);
    REQUIRE(c.size() == 8);
    CHECK(c[7] != "Outside");
  }
}

TEST_CASE("cli trajectory accepts an explicit admissible factor") {
  const fs::path d = fresh_dir("trajlam");
  const RunResult r = run_cli(
      std::string("trajectory ") + kBase + std::string(" --from 0.2,0.3,0.5 --to 0.2,0.3,0.5 "
                  "--lambda 0.8 --samples 16 --output-dir ") +
          d.string(),
      d);
  REQUIRE(r.code == 0);
  const auto rows = lines_of(slurp(d / "trajectory.csv"));
  REQUIRE(rows.size() == 1 + 16);
  CHECK(split_csv(rows[1])[0] == "0.8");
}

TEST_CASE("cli trajectory exits 2 on an empty admissible set") {
  const fs::path d = fresh_dir("trajempty");
  const RunResult r = run_cli(
      std::string("trajectory ") + kBase + std::string(" --from 0.2,0.3,0.5 --to 0.3,0.35,0.35 "
                  "--output-dir ") +
          d.string(),
      d);
  CHECK(r.code == 2);
  CHECK(r.err.find("admits no lamination factor") != std::string::npos);
  CHECK_FALSE(fs::exists(d / "trajectory.csv"));
}

TEST_CASE("cli trajectory rejects an inadmissible explicit factor") {
  const fs::path d = fresh_dir("trajbad");
  const RunResult r = run_cli(
      std::string("trajectory ") + kBase + std::string(" --from 0.2,0.3,0.5 --to 0.2,0.3,0.5 "
                  "--lambda 0.5 --output-dir ") +
          d.string(),
      d);
  CHECK(r.code == 2);
}

TEST_CASE("cli verify prints per-check lines and the base margin") {
  const fs::path d = fresh_dir("verify");
  const RunResult r = run_cli(std::string("verify ") + kBase +
                                  " --suite inequalities --grid 24 "
                                  "--samples 40 --output-dir " +
                                  d.string(),
                              d);
  REQUIRE(r.code == 0);
  CHECK(r.out.find("[ ok ] inequalities.base_margin") != std::string::npos);
  CHECK(r.out.find("s1+2s2-3u_alpha = 0.018925478761000") !=
        std::string::npos);
  CHECK(r.out.find("verify: all checks passed") != std::string::npos);
  CHECK(r.out.find("[FAIL]") == std::string::npos);

  const json j = json::parse(slurp(d / "verify.json"));
  REQUIRE(j.is_array());
  // Five inequality checks plus the informational angle comparison.
  CHECK(j.size() == 6);
  bool saw_angles = false;
  for (const auto& e : j) {
    if (e.at("check") == "curves.angle_formulas") saw_angles = true;
    CHECK(e.at("passed").get<bool>());
  }
  CHECK(saw_angles);
}

TEST_CASE("cli verify handles a nearly degenerate spectrum") {
  const fs::path d = fresh_dir("verifydeg");
  const RunResult r = run_cli(
      std::string("verify --spectrum 0.332,0.333,0.335 --suite extremal "
                  "--grid 16 --samples 24 --output-dir ") +
          d.string(),
      d);
  REQUIRE(r.code == 0);
  CHECK(r.out.find("verify: all checks passed") != std::string::npos);
}

TEST_CASE("cli exits 3 on configuration errors") {
  const fs::path d = fresh_dir("cfg");
  CHECK(run_cli(std::string("verify ") + kBase + " --suite bogus", d).code ==
        3);
  CHECK(run_cli("curves --spectrum 0.2,0.3,0.6", d).code == 3);
  CHECK(run_cli("curves --spectrum 0.2,0.3", d).code == 3);
  CHECK(run_cli("curves --spectrum 0.3,0.3,0.4", d).code == 3);
  CHECK(run_cli(std::string("curves ") + kBase + " --format yaml", d).code ==
        3);
  CHECK(run_cli("unknowncmd", d).code == 3);
  const RunResult bad = run_cli("curves --spectrum -0.1,0.4,0.7", d);
  CHECK(bad.code == 3);
  CHECK(bad.err.find("error") != std::string::npos);
}

TEST_CASE("cli warns on a renormalized trace without failing") {
  const fs::path d = fresh_dir("renorm");
  const RunResult r = run_cli(
      std::string("curves --spectrum 0.2000000001,0.3,0.5 --samples 9 "
                  "--output-dir ") +
          d.string(),
      d);
  REQUIRE(r.code == 0);
  CHECK(r.err.find("renormaliz") != std::string::npos);
}

TEST_CASE("cli figures emits the three figure tables") {
  const fs::path d = fresh_dir("figs");
  const RunResult r = run_cli(std::string("figures ") + kBase +
                                  " --samples 64 --output-dir " + d.string(),
                              d);
  REQUIRE(r.code == 0);
  REQUIRE(fs::exists(d / "fig_sextant.csv"));
  REQUIRE(fs::exists(d / "fig_hexagon.csv"));
  REQUIRE(fs::exists(d / "fig_invariants.csv"));

  const auto sex = lines_of(slurp(d / "fig_sextant.csv"));
  CHECK(sex[0] == "series,idx,u,v,m1,m2,m3");
  int galpha = 0, gbeta = 0, lower = 0, upper = 0, quad = 0;
  for (size_t i = 1; i < sex.size(); ++i) {
    const std::string s = split_csv(sex[i])[0];
    if (s == "gamma_alpha") ++galpha;
    if (s == "gamma_beta") ++gbeta;
    if (s == "uniaxial_lower") ++lower;
    if (s == "uniaxial_upper") ++upper;
    if (s == "quad") ++quad;
  }
  CHECK(galpha == 64);
  CHECK(gbeta == 64);
  CHECK(lower == 41);
  CHECK(upper == 41);
  CHECK(quad == 5);

  const auto inv = lines_of(slurp(d / "fig_invariants.csv"));
  CHECK(inv[0] == "series,t,i2,i3");
  CHECK(inv.size() > 10);
}

TEST_CASE("cli help exits cleanly") {
  const fs::path d = fresh_dir("help");
  CHECK(run_cli("--help", d).code == 0);
  CHECK(run_cli("curves --help", d).code == 0);
}
