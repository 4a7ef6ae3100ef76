// Runs every acceptance criterion and prints one PASS/FAIL line each.
// Usage: acceptance <path to qhe CLI> <scratch directory> [criterion ids...]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qhe/errors.hpp"
#include "qhe/report/suite.hpp"

namespace fs = std::filesystem;
using namespace qhe;
using namespace qhe::report;

namespace {

// Wall-clock limits in seconds; criteria without an entry are unbounded.
const std::map<int, double> kTimeLimits = {{1, 30.0}, {7, 60.0}, {12, 600.0}};

bool report(int id, const std::string& name, bool pass, const std::string& note) {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << id << ": " << name;
  if (!note.empty()) std::cout << " (" << note << ")";
  std::cout << std::endl;
  return pass;
}

std::string seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1fs", s);
  return buf;
}

bool run_suite_criterion(int id) {
  const auto t0 = std::chrono::steady_clock::now();
  if (id < 1 || id > 13) return report(id, "unknown criterion", false, "");
  CriterionResult r;
  try {
    r = run_criterion(id);
  } catch (const Error& e) {
    return report(id, criterion_name(id), false, e.what());
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool pass = r.pass();
  std::string note = seconds(dt);
  if (auto it = kTimeLimits.find(id); it != kTimeLimits.end() && dt >= it->second) {
    pass = false;
    note += ", limit " + seconds(it->second);
  }
  for (const auto& v : r.verdicts)
    if (v.status != VerdictStatus::Pass)
      std::cout << "  " << v.lemma << " " << to_string(v.status) << " margin " << v.margin
                << " " << v.detail << "\n";
  return report(id, r.name, pass, note);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Two `verify` runs of the CLI with one config must write identical bytes.
bool run_determinism(const fs::path& cli, const fs::path& scratch) {
  const int id = 14;
  const std::string name = criterion_name(id);
  fs::remove_all(scratch);
  fs::create_directories(scratch);
  const fs::path config = scratch / "verify.toml";
  std::ofstream(config, std::ios::binary) << "[run]\nthreads = 2\nseed = 7\n\n"
                                             "[verify]\ncriteria = [2, 4, 9, 11]\n";
  for (const char* run : {"a", "b"}) {
    const std::string cmd = "\"" + cli.string() + "\" verify --config \"" + config.string() +
                            "\" --out \"" + (scratch / run).string() + "\" > \"" +
                            (scratch / (std::string(run) + ".log")).string() + "\" 2>&1";
    const int rc = std::system(cmd.c_str());
    if (rc != 0) return report(id, name, false, std::string("verify run ") + run + " failed");
  }
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(scratch / "a")) {
    const fs::path other = scratch / "b" / entry.path().filename();
    if (!fs::exists(other) || slurp(entry.path()) != slurp(other))
      return report(id, name, false, entry.path().filename().string() + " differs");
    ++files;
  }
  if (files < 2) return report(id, name, false, "expected verdicts.jsonl and summary.csv");
  return report(id, name, true, std::to_string(files) + " files identical");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <qhe-cli> <scratch-dir> [criterion ids...]\n";
    return 2;
  }
  std::vector<int> ids;
  for (int i = 3; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  if (ids.empty()) {
    ids = suite_criteria();
    ids.push_back(14);
  }
  int failed = 0;
  for (int id : ids) {
    const bool pass = id == 14 ? run_determinism(argv[1], argv[2]) : run_suite_criterion(id);
    if (!pass) ++failed;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
