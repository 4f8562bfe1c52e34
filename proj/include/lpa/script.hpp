#pragma once

#include <string>
#include <string_view>

#include "lpa/report.hpp"

namespace lpa {

// Runs a line-oriented script:
//
//   rose 2                      | vertex v / edge e1 v v
//   let x = e1*e2' + e2*e1'
//   matrix P = [0, v; v, 0]     (optional `@w` after the name picks the corner)
//   endo f = phi P [Pinv]       (inverse may be omitted when easy_invertible finds it)
//   endo g = fu u [uinv]        (likewise with easy_unit_inverse)
//   assert x*x == v             (also !=; matrix names, literals and f(M) compare entrywise)
//
// Each assert becomes one report line named `line N`. Errors keep their
// type (ParseError, VerificationError or Error) and gain a `line N:` prefix.
Report run_script_text(std::string_view text);
Report run_script(const std::string& path);

}  // namespace lpa
