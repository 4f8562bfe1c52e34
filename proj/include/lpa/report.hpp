#pragma once

#include <string>
#include <vector>

namespace lpa {

enum class Verdict { pass, fail, unknown, skip };

const char* verdict_name(Verdict v);

struct CheckResult {
  std::string name;
  Verdict verdict = Verdict::pass;
  double elapsed_ms = 0;
  std::string detail;  // witness or failure description
};

struct Report {
  std::vector<CheckResult> checks;

  bool any_fail() const;
  // One line per check: `PASS  name  [12.3 ms]  detail`. Timing can be
  // left out to compare reports byte for byte.
  std::string render(bool with_timing = true) const;
  int exit_code() const { return any_fail() ? 1 : 0; }
};

}  // namespace lpa
