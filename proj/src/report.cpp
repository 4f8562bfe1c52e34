#include "lpa/report.hpp"

#include <cstdio>

namespace lpa {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "PASS";
    case Verdict::fail:
      return "FAIL";
    case Verdict::unknown:
      return "UNKNOWN";
    case Verdict::skip:
      return "SKIP";
  }
  return "?";
}

bool Report::any_fail() const {
  for (const auto& c : checks) {
    if (c.verdict == Verdict::fail) return true;
  }
  return false;
}

std::string Report::render(bool with_timing) const {
  std::string out;
  for (const auto& c : checks) {
    out += verdict_name(c.verdict);
    out += std::string(9 - std::string(verdict_name(c.verdict)).size(), ' ');
    out += c.name;
    if (with_timing) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "  [%.1f ms]", c.elapsed_ms);
      out += buf;
    }
    if (!c.detail.empty()) out += "  " + c.detail;
    out += '\n';
  }
  return out;
}

}  // namespace lpa
