#pragma once

#include <string>
#include <vector>

namespace fk {

// Outcome of one property suite.  Checks are counted; the first failures are kept as witnesses.
struct SuiteReport {
  std::string name;
  int criterion = 0;
  int checks = 0, failed = 0;
  std::vector<std::string> failures;
  std::vector<std::string> notes;  // facts worth printing, e.g. instance counts
  bool ok() const { return checks > 0 && failed == 0; }
  void check(bool c, const std::string& what);
  void note(const std::string& s) { notes.push_back(s); }
};

// tensors eigencubes functoriality limits bordered freemodel consum triangles robustness,
// in criterion order
const std::vector<std::string>& suite_names();
// throws std::invalid_argument for an unknown name
SuiteReport run_suite(const std::string& name, const std::string& data_dir);
std::string default_data_dir();

}  // namespace fk
