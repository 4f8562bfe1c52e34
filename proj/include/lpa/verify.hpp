#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lpa/element.hpp"
#include "lpa/report.hpp"

namespace lpa {

// The units of the worked examples on rose(2), with their inverses:
// x = e1e2*+e2e1*, y = v+e1²(e2*)², u = y·x and w with f_u(w) = u⁻¹.
struct ExampleUnits {
  GraphPtr g;
  Element v, x, y, yinv, u, uinv, w, winv;
  static ExampleUnits make();
};

// Names accepted by verify_paper, sorted.
std::vector<std::string> paper_check_names();

// Replays the worked examples as exact checks. Independent checks run
// concurrently and the report is sorted by name. In F_p mode the checks
// that depend on rational data are reported as SKIP. Throws Error for an
// unknown `only` name.
Report verify_paper(const std::optional<std::string>& only = std::nullopt);

}  // namespace lpa
