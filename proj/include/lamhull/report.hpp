#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace lamhull {

struct Witness {
  std::string what;
  std::map<std::string, double> data;
};

// One verification check: a named pass/fail with the worst residual seen
// and up to a handful of witness points for failures (or key values for
// informational checks).
struct CheckReport {
  CheckReport() = default;
  explicit CheckReport(std::string name) : check(std::move(name)) {}

  std::string check;
  bool passed = true;
  long long samples = 0;
  double max_residual = 0.0;
  std::vector<Witness> witnesses;

  void residual(double r) { max_residual = std::max(max_residual, r); }
  void flag(const Witness& w) {
    passed = false;
    if (witnesses.size() < 16) witnesses.push_back(w);
  }
};

// JSON array of the reports, stable key order, round-trip-safe numbers.
std::string reports_to_json(const std::vector<CheckReport>& reports);

}  // namespace lamhull
