#pragma once

#include "snmono/serialize.hpp"

#include <functional>
#include <string>
#include <vector>

namespace snmono {

// One verification record; `anchor` is an opaque reference label tying the
// check to the underlying theory (downstream tooling keys on it).
struct CheckRecord {
  std::string name;
  std::string anchor;
  bool pass = true;
  Json values;  // numbers backing the verdict
};

struct Report {
  std::string command;
  Json config;
  std::vector<CheckRecord> checks;

  void add(std::string name, std::string anchor, bool pass, Json values = Json::object());
  bool all_pass() const;
  int exit_code() const;  // 0 pass, 1 verdict failure
};

Json report_to_json(const Report& rep, bool with_timestamp);
std::string report_to_csv(const Report& rep);

// Fan out fn(0..n-1) over worker threads (SNMONO_THREADS caps the pool,
// 1 disables threading); results are written by index so ordering never
// depends on the schedule.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace snmono
