#include "snmono/report.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <thread>

namespace snmono {

void Report::add(std::string name, std::string anchor, bool pass, Json values) {
  checks.push_back({std::move(name), std::move(anchor), pass, std::move(values)});
}

bool Report::all_pass() const {
  for (const CheckRecord& c : checks)
    if (!c.pass) return false;
  return true;
}

int Report::exit_code() const { return all_pass() ? 0 : 1; }

Json report_to_json(const Report& rep, bool with_timestamp) {
  Json j;
  j["command"] = rep.command;
  j["config"] = rep.config;
  Json checks = Json::array();
  int pass = 0, fail = 0;
  for (const CheckRecord& c : rep.checks) {
    Json r;
    r["name"] = c.name;
    r["anchor"] = c.anchor;
    r["verdict"] = c.pass ? "pass" : "fail";
    r["values"] = c.values;
    checks.push_back(std::move(r));
    (c.pass ? pass : fail)++;
  }
  j["checks"] = std::move(checks);
  j["summary"] = Json{{"pass", pass}, {"fail", fail}};
  if (with_timestamp) {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
    j["timestamp"] = buf;
  }
  return j;
}

std::string report_to_csv(const Report& rep) {
  std::string out = "name,anchor,verdict\n";
  for (const CheckRecord& c : rep.checks)
    out += c.name + "," + c.anchor + "," + (c.pass ? "pass" : "fail") + "\n";
  return out;
}

void parallel_for(int n, const std::function<void(int)>& fn) {
  int workers = static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SNMONO_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) workers = cap;
  }
  workers = std::max(1, std::min({workers, n, 16}));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  for (std::thread& t : pool) t.join();
}

}  // namespace snmono
