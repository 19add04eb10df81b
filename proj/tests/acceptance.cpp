// One line per acceptance criterion; exit status 0 only if all pass.
#include <chrono>
#include <cstdio>
#include <string>

#include "floerkit/verify.hpp"

int main(int argc, char** argv) {
  std::string dir = argc > 1 ? argv[1] : fk::default_data_dir();
  bool all = true;
  for (const std::string& name : fk::suite_names()) {
    auto t0 = std::chrono::steady_clock::now();
    fk::SuiteReport r = fk::run_suite(name, dir);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    all = all && r.ok();
    std::printf("criterion %d %s: %s (%d checks, %d failed, %.1f s)\n", r.criterion, name.c_str(), r.ok() ? "PASS" : "FAIL",
                r.checks, r.failed, secs);
    for (auto& n : r.notes) std::printf("    %s\n", n.c_str());
    for (auto& f : r.failures) std::printf("    failed: %s\n", f.c_str());
  }
  return all ? 0 : 1;
}
