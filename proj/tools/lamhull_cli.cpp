// Command-line front end over the C API: curve/hull/trajectory data export,
// verification suites, and plot-ready figure data. All numeric output is
// rendered shortest-round-trip so identical configs produce byte-identical
// files.

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lamhull.h"

namespace {

std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

struct Config {
  std::array<double, 3> spectrum{};
  int samples = 512;
  int grid = 256;
  std::uint64_t seed = 0;
  double tol_membership = 1e-7;
  std::string format = "csv";
  std::string output_dir = ".";
};

using Cell = std::variant<double, std::string>;

struct Table {
  std::string name;
  std::vector<std::string> cols;
  std::vector<std::vector<Cell>> rows;
};

int write_table(const Table& t, const Config& cfg) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(cfg.output_dir, ec);
  const bool json = cfg.format == "json";
  const fs::path path =
      fs::path(cfg.output_dir) / (t.name + (json ? ".json" : ".csv"));
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open " << path.string() << "\n";
    return 1;
  }
  if (json) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
      nlohmann::ordered_json obj;
      for (size_t i = 0; i < t.cols.size(); ++i) {
        if (const double* d = std::get_if<double>(&row[i])) {
          obj[t.cols[i]] = *d;
        } else {
          obj[t.cols[i]] = std::get<std::string>(row[i]);
        }
      }
      rows.push_back(obj);
    }
    out << rows.dump(2) << "\n";
  } else {
    for (size_t i = 0; i < t.cols.size(); ++i) {
      out << (i ? "," : "") << t.cols[i];
    }
    out << "\n";
    for (const auto& row : t.rows) {
      for (size_t i = 0; i < row.size(); ++i) {
        if (i) out << ",";
        if (const double* d = std::get_if<double>(&row[i])) {
          out << fmt(*d);
        } else {
          out << std::get<std::string>(row[i]);
        }
      }
      out << "\n";
    }
  }
  out.flush();
  if (!out) {
    std::cerr << "error: write failed for " << path.string() << "\n";
    return 1;
  }
  std::cout << "wrote " << path.string() << "\n";
  return 0;
}

int fail_status(lamhull_status st) {
  std::cerr << "error: " << lamhull_last_error() << "\n";
  switch (st) {
    case LAMHULL_EINVAL:
      return 3;
    case LAMHULL_EDOMAIN:
      return 2;
    default:
      return 1;
  }
}

bool parse_triple(const std::string& s, std::array<double, 3>& out) {
  std::stringstream ss(s);
  std::string item;
  int k = 0;
  while (std::getline(ss, item, ',')) {
    if (k == 3) return false;
    try {
      size_t used = 0;
      out[k] = std::stod(item, &used);
      if (used != item.size()) return false;
    } catch (const std::exception&) {
      return false;
    }
    ++k;
  }
  return k == 3;
}

using Problem =
    std::unique_ptr<lamhull_problem, void (*)(lamhull_problem*)>;

int open_problem(const Config& cfg, Problem& prob) {
  const double sum = cfg.spectrum[0] + cfg.spectrum[1] + cfg.spectrum[2];
  const double off = std::abs(sum - 1.0);
  if (off > 1e-12 && off <= 1e-9) {
    std::cerr << "warning: spectrum trace off by " << fmt(off)
              << ", renormalizing\n";
  }
  lamhull_problem* raw = nullptr;
  const lamhull_status st = lamhull_problem_create(
      cfg.spectrum[0], cfg.spectrum[1], cfg.spectrum[2], &raw);
  if (st != LAMHULL_OK) return fail_status(st);
  prob = Problem(raw, lamhull_problem_destroy);
  return 0;
}

int build_hull(const Config& cfg, lamhull_problem* p) {
  const lamhull_status st =
      lamhull_hull_build(p, cfg.samples, cfg.tol_membership);
  if (st != LAMHULL_OK) return fail_status(st);
  return 0;
}

const char* kBranchNames[2] = {"alpha", "beta"};

int fetch_curve(const lamhull_problem* p, int branch, int n,
                std::vector<double>& rows) {
  rows.resize(static_cast<size_t>(n) * 7);
  const lamhull_status st =
      lamhull_curve_samples(p, branch, n, rows.data());
  if (st != LAMHULL_OK) return fail_status(st);
  return 0;
}

int cmd_curves(const Config& cfg) {
  Problem prob(nullptr, lamhull_problem_destroy);
  if (int rc = open_problem(cfg, prob)) return rc;
  Table t{"curves", {"branch", "t", "e2", "m1", "m2", "m3", "i2", "i3"}, {}};
  for (int b = 0; b < 2; ++b) {
    std::vector<double> rows;
    if (int rc = fetch_curve(prob.get(), b, cfg.samples, rows)) return rc;
    for (int i = 0; i < cfg.samples; ++i) {
      const double* r = rows.data() + 7 * i;
      t.rows.push_back({std::string(kBranchNames[b]), r[0], r[1], r[2], r[3],
                        r[4], r[5], r[6]});
    }
  }
  return write_table(t, cfg);
}

int cmd_hull(const Config& cfg) {
  Problem prob(nullptr, lamhull_problem_destroy);
  if (int rc = open_problem(cfg, prob)) return rc;
  if (int rc = build_hull(cfg, prob.get())) return rc;

  int n = 0;
  if (lamhull_status st = lamhull_hull_size(prob.get(), &n);
      st != LAMHULL_OK) {
    return fail_status(st);
  }
  std::vector<double> rows(static_cast<size_t>(n) * 5);
  if (lamhull_status st = lamhull_hull_rows(prob.get(), rows.data());
      st != LAMHULL_OK) {
    return fail_status(st);
  }
  Table hull{"hull", {"idx", "u", "v", "m1", "m2", "m3"}, {}};
  for (int i = 0; i <= n; ++i) {  // closing row repeats vertex 0
    const double* r = rows.data() + 5 * (i % n);
    hull.rows.push_back(
        {static_cast<double>(i), r[0], r[1], r[2], r[3], r[4]});
  }
  if (int rc = write_table(hull, cfg)) return rc;

  double hex[30];
  if (lamhull_status st = lamhull_hexagon_rows(prob.get(), hex);
      st != LAMHULL_OK) {
    return fail_status(st);
  }
  Table hexagon{"hexagon", {"idx", "u", "v", "m1", "m2", "m3"}, {}};
  for (int i = 0; i < 6; ++i) {
    const double* r = hex + 5 * i;
    hexagon.rows.push_back(
        {static_cast<double>(i), r[0], r[1], r[2], r[3], r[4]});
  }
  return write_table(hexagon, cfg);
}

const char* kMembershipNames[3] = {"Inside", "Boundary", "Outside"};

int cmd_trajectory(const Config& cfg, const std::array<double, 3>& F,
                   const std::array<double, 3>& G,
                   const std::optional<double>& lambda) {
  Problem prob(nullptr, lamhull_problem_destroy);
  if (int rc = open_problem(cfg, prob)) return rc;

  std::vector<double> lambdas;
  if (lambda) {
    lambdas.push_back(*lambda);
  } else {
    double buf[8];
    int n = 0;
    const lamhull_status st =
        lamhull_trajectory_lambdas(F.data(), G.data(), buf, &n);
    if (st == LAMHULL_EDOMAIN) {
      std::cerr << "error: the pair admits no lamination factor; both "
                   "candidate intervals are empty under the convention "
                   "that [a,b] is empty when a > b\n";
      return 2;
    }
    if (st != LAMHULL_OK) return fail_status(st);
    lambdas.assign(buf, buf + n);
  }

  // The membership oracle wants a dense polygon regardless of how coarsely
  // the trajectory itself is sampled.
  Config hull_cfg = cfg;
  hull_cfg.samples = std::max(cfg.samples, 512);
  if (int rc = build_hull(hull_cfg, prob.get())) return rc;

  Table t{"trajectory",
          {"lambda", "t", "m1", "m2", "m3", "i2", "i3", "membership"},
          {}};
  std::vector<double> rows(static_cast<size_t>(cfg.samples) * 6);
  for (double lam : lambdas) {
    const lamhull_status st = lamhull_trajectory_rows(
        F.data(), G.data(), lam, cfg.samples, rows.data());
    if (st != LAMHULL_OK) return fail_status(st);
    for (int i = 0; i < cfg.samples; ++i) {
      const double* r = rows.data() + 6 * i;
      int membership = 0;
      double dist = 0.0;
      if (lamhull_status cst = lamhull_hull_contains(
              prob.get(), r[1], r[2], r[3], &membership, &dist);
          cst != LAMHULL_OK) {
        return fail_status(cst);
      }
      t.rows.push_back({lam, r[0], r[1], r[2], r[3], r[4], r[5],
                        std::string(kMembershipNames[membership])});
    }
  }
  return write_table(t, cfg);
}

int cmd_verify(const Config& cfg, const std::string& suite) {
  Problem prob(nullptr, lamhull_problem_destroy);
  if (int rc = open_problem(cfg, prob)) return rc;

  char* json = nullptr;
  int passed = 0;
  const lamhull_status st =
      lamhull_verify(prob.get(), suite.c_str(), cfg.seed, cfg.grid,
                     cfg.samples, cfg.tol_membership, &json, &passed);
  if (st != LAMHULL_OK) return fail_status(st);
  nlohmann::ordered_json reports = nlohmann::ordered_json::parse(json);
  lamhull_string_free(json);

  // The angle diagnostic is always attached, informational only.
  bool has_angles = false;
  for (const auto& r : reports) {
    if (r.value("check", "") == "curves.angle_formulas") has_angles = true;
  }
  if (!has_angles) {
    char* ajson = nullptr;
    if (lamhull_status ast = lamhull_problem_angle_report(prob.get(), &ajson);
        ast != LAMHULL_OK) {
      return fail_status(ast);
    }
    const auto angles = nlohmann::ordered_json::parse(ajson);
    lamhull_string_free(ajson);
    nlohmann::ordered_json witness;
    witness["what"] = "closed-form vs spectral normal angles (informational)";
    for (const auto& [key, value] : angles.items()) {
      witness[key] = value.is_boolean() ? (value.get<bool>() ? 1.0 : 0.0)
                                        : value.get<double>();
    }
    nlohmann::ordered_json entry;
    entry["check"] = "curves.angle_formulas";
    entry["passed"] = true;
    entry["samples"] = 1;
    entry["max_residual"] =
        std::max(angles["rel_gap_alpha"].get<double>(),
                 angles["rel_gap_beta"].get<double>());
    entry["witnesses"] = nlohmann::ordered_json::array({witness});
    reports.push_back(entry);
  }

  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(cfg.output_dir, ec);
  const fs::path path = fs::path(cfg.output_dir) / "verify.json";
  {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot open " << path.string() << "\n";
      return 1;
    }
    out << reports.dump(2) << "\n";
  }

  int failures = 0;
  for (const auto& r : reports) {
    const bool ok = r.value("passed", false);
    if (!ok) ++failures;
    std::cout << (ok ? "[ ok ] " : "[FAIL] ") << r.value("check", "?")
              << " samples=" << r.value("samples", 0ll)
              << " max_residual=" << fmt(r.value("max_residual", 0.0))
              << "\n";
    for (const auto& w : r.value("witnesses", nlohmann::ordered_json())) {
      if (w.value("what", "") == "s1+2s2-3u_alpha") {
        std::cout << "s1+2s2-3u_alpha = " << fmt(w.value("value", 0.0))
                  << "\n";
      }
    }
  }
  std::cout << "wrote " << path.string() << "\n";
  if (passed && failures == 0) {
    std::cout << "verify: all checks passed\n";
    return 0;
  }
  std::cout << "verify: " << failures << " check(s) failed\n";
  return 1;
}

int append_embedded(Table& t, const std::string& series, int idx, double m1,
                    double m2, double m3) {
  double u = 0.0, v = 0.0;
  if (lamhull_status st = lamhull_spectrum_embed(m1, m2, m3, &u, &v);
      st != LAMHULL_OK) {
    return fail_status(st);
  }
  t.rows.push_back({series, static_cast<double>(idx), u, v, m1, m2, m3});
  return 0;
}

int cmd_figures(const Config& cfg) {
  Problem prob(nullptr, lamhull_problem_destroy);
  if (int rc = open_problem(cfg, prob)) return rc;
  const double s1 = cfg.spectrum[0], s2 = cfg.spectrum[1],
               s3 = cfg.spectrum[2];

  // Panel 1: both curve arcs, the uniaxial guide lines and the
  // quadrilateral through the base point in plane coordinates.
  Table sextant{"fig_sextant",
                {"series", "idx", "u", "v", "m1", "m2", "m3"},
                {}};
  std::array<std::vector<double>, 2> curve_rows;
  for (int b = 0; b < 2; ++b) {
    if (int rc = fetch_curve(prob.get(), b, cfg.samples, curve_rows[b])) {
      return rc;
    }
    const std::string series = std::string("gamma_") + kBranchNames[b];
    for (int i = 0; i < cfg.samples; ++i) {
      const double* r = curve_rows[b].data() + 7 * i;
      if (int rc = append_embedded(sextant, series, i, r[2], r[3], r[4])) {
        return rc;
      }
    }
  }
  const int guide_n = 41;
  for (int i = 0; i < guide_n; ++i) {
    const double c = 1.0 / 3.0 + (0.02 - 1.0 / 3.0) * i / (guide_n - 1);
    if (int rc = append_embedded(sextant, "uniaxial_lower", i, c, c,
                                 1.0 - 2.0 * c)) {
      return rc;
    }
  }
  for (int i = 0; i < guide_n; ++i) {
    const double c = 1.0 / 3.0 + (0.49 - 1.0 / 3.0) * i / (guide_n - 1);
    if (int rc = append_embedded(sextant, "uniaxial_upper", i, 1.0 - 2.0 * c,
                                 c, c)) {
      return rc;
    }
  }
  const double third = 1.0 / 3.0;
  const std::array<std::array<double, 3>, 5> quad = {{
      {s1, s2, s3},
      {(s1 + s2) / 2.0, (s1 + s2) / 2.0, s3},
      {third, third, third},
      {s1, (s2 + s3) / 2.0, (s2 + s3) / 2.0},
      {s1, s2, s3},
  }};
  for (int i = 0; i < 5; ++i) {
    if (int rc = append_embedded(sextant, "quad", i, quad[i][0], quad[i][1],
                                 quad[i][2])) {
      return rc;
    }
  }
  if (int rc = write_table(sextant, cfg)) return rc;

  // Panel 2: the full symmetrized boundary plus the permutation hexagon.
  if (int rc = build_hull(cfg, prob.get())) return rc;
  int n = 0;
  if (lamhull_status st = lamhull_hull_size(prob.get(), &n);
      st != LAMHULL_OK) {
    return fail_status(st);
  }
  std::vector<double> hull_rows(static_cast<size_t>(n) * 5);
  if (lamhull_status st = lamhull_hull_rows(prob.get(), hull_rows.data());
      st != LAMHULL_OK) {
    return fail_status(st);
  }
  Table hexfig{"fig_hexagon",
               {"series", "idx", "u", "v", "m1", "m2", "m3"},
               {}};
  for (int i = 0; i <= n; ++i) {
    const double* r = hull_rows.data() + 5 * (i % n);
    hexfig.rows.push_back({std::string("gamma"), static_cast<double>(i),
                           r[0], r[1], r[2], r[3], r[4]});
  }
  double hex[30];
  if (lamhull_status st = lamhull_hexagon_rows(prob.get(), hex);
      st != LAMHULL_OK) {
    return fail_status(st);
  }
  for (int i = 0; i <= 6; ++i) {
    const double* r = hex + 5 * (i % 6);
    hexfig.rows.push_back({std::string("hexagon"), static_cast<double>(i),
                           r[0], r[1], r[2], r[3], r[4]});
  }
  if (int rc = write_table(hexfig, cfg)) return rc;

  // Panel 3: both curves in invariant coordinates.
  Table inv{"fig_invariants", {"series", "t", "i2", "i3"}, {}};
  for (int b = 0; b < 2; ++b) {
    const std::string series = std::string("gamma_") + kBranchNames[b];
    for (int i = 0; i < cfg.samples; ++i) {
      const double* r = curve_rows[b].data() + 7 * i;
      inv.rows.push_back({series, r[0], r[5], r[6]});
    }
  }
  return write_table(inv, cfg);
}

void add_common(CLI::App* sub, Config& cfg, std::string& spectrum_str) {
  sub->add_option("--spectrum", spectrum_str,
                  "base spectrum as s1,s2,s3 (unit trace)")
      ->required();
  sub->add_option("--samples", cfg.samples, "samples per branch")
      ->check(CLI::Range(2, 1000000));
  sub->add_option("--grid", cfg.grid, "grid density for verification")
      ->check(CLI::Range(8, 1000000));
  sub->add_option("--seed", cfg.seed, "random seed for verification");
  sub->add_option("--tol-membership", cfg.tol_membership,
                  "plane distance treated as Boundary")
      ->check(CLI::PositiveNumber);
  sub->add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--output-dir", cfg.output_dir, "output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lamination hull toolkit for unit-trace spectra"};
  app.require_subcommand(1);

  Config cfg;
  std::string spectrum_str;
  std::string from_str, to_str;
  std::optional<double> lambda;
  std::string suite = "all";

  CLI::App* curves = app.add_subcommand("curves", "sample the optimal curves");
  add_common(curves, cfg, spectrum_str);

  CLI::App* hull =
      app.add_subcommand("hull", "emit the boundary polygon and hexagon");
  add_common(hull, cfg, spectrum_str);

  CLI::App* traj = app.add_subcommand(
      "trajectory", "trace a lamination trajectory between two spectra");
  add_common(traj, cfg, spectrum_str);
  traj->add_option("--from", from_str, "source spectrum f1,f2,f3")
      ->required();
  traj->add_option("--to", to_str, "target spectrum g1,g2,g3")->required();
  traj->add_option("--lambda", lambda,
                   "lamination factor (default: interval endpoints)");

  CLI::App* verify =
      app.add_subcommand("verify", "run a verification suite");
  add_common(verify, cfg, spectrum_str);
  verify->add_option("--suite", suite, "which suite to run")
      ->check(CLI::IsMember({"all", "rankone", "curves", "inequalities",
                             "extremal", "stability"}));

  CLI::App* figures =
      app.add_subcommand("figures", "emit plot-ready figure data");
  add_common(figures, cfg, spectrum_str);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message / help text
    return e.get_exit_code() == 0 ? 0 : 3;
  }

  if (!parse_triple(spectrum_str, cfg.spectrum)) {
    std::cerr << "error: --spectrum expects three comma-separated numbers\n";
    return 3;
  }

  if (app.got_subcommand(curves)) return cmd_curves(cfg);
  if (app.got_subcommand(hull)) return cmd_hull(cfg);
  if (app.got_subcommand(traj)) {
    std::array<double, 3> F{}, G{};
    if (!parse_triple(from_str, F) || !parse_triple(to_str, G)) {
      std::cerr << "error: --from/--to expect three comma-separated numbers\n";
      return 3;
    }
    return cmd_trajectory(cfg, F, G, lambda);
  }
  if (app.got_subcommand(verify)) return cmd_verify(cfg, suite);
  if (app.got_subcommand(figures)) return cmd_figures(cfg);
  return 3;
}
