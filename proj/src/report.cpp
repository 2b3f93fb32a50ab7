#include "lamhull/report.hpp"

#include <json.hpp>

namespace lamhull {

std::string reports_to_json(const std::vector<CheckReport>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const CheckReport& r : reports) {
    nlohmann::ordered_json item;
    item["check"] = r.check;
    item["passed"] = r.passed;
    item["samples"] = r.samples;
    item["max_residual"] = r.max_residual;
    nlohmann::ordered_json ws = nlohmann::ordered_json::array();
    for (const Witness& w : r.witnesses) {
      nlohmann::ordered_json jw;
      jw["what"] = w.what;
      for (const auto& [key, value] : w.data) jw[key] = value;
      ws.push_back(jw);
    }
    item["witnesses"] = ws;
    arr.push_back(item);
  }
  return arr.dump(2);
}

}  // namespace lamhull
