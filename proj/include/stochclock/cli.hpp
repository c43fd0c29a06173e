// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stochclock::cli
{

inline constexpr int exit_ok = 0;
inline constexpr int exit_internal = 1;
inline constexpr int exit_invalid = 2;
inline constexpr int exit_physics = 3;  //!< infeasible or blurred, --strict

/*!
 * Run one CLI invocation.
 *
 * `args` excludes the program name. Results go to `out` (or the --out file)
 * as a single document, written only once the computation has finished;
 * diagnostics go to `err`.
 */
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace stochclock::cli
