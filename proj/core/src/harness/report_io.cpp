#include "ggv/harness/report_io.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace ggv {

namespace {

std::string hex_seed(std::uint64_t seed) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "0x%llX", static_cast<unsigned long long>(seed));
  return buf;
}

}  // namespace

std::string to_jsonl(const std::vector<CheckReport>& reports) {
  std::string out;
  for (const CheckReport& r : reports)
    for (const ConditionResult& c : r.conditions) {
      nlohmann::ordered_json j;
      j["suite"] = r.suite;
      j["condition"] = c.id;
      j["max_residual"] = c.max_residual;
      j["worst_point"] = c.worst_point;
      j["points"] = {{"requested", r.points_requested}, {"evaluated", r.points_evaluated}};
      j["seed"] = r.seed;
      j["tol"] = r.tol;
      j["verdict"] = c.pass ? "pass" : "fail";
      out += j.dump();
      out += '\n';
    }
  return out;
}

std::string to_text(const std::vector<CheckReport>& reports) {
  std::ostringstream out;
  for (const CheckReport& r : reports) {
    out << "suite " << r.suite << ": " << (r.pass ? "PASS" : "FAIL") << " (" << r.points_evaluated << "/"
        << r.points_requested << " points, seed " << hex_seed(r.seed) << ", tol " << r.tol << ")\n";
    for (const ConditionResult& c : r.conditions) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.3e", c.max_residual);
      out << "  " << (c.pass ? "pass" : "FAIL") << "  " << c.id << "  " << buf << "\n";
    }
  }
  return out.str();
}

}  // namespace ggv
