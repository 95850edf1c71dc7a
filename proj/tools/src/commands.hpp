#pragma once

#include "run_config.hpp"

namespace reebtool {

// Each verb returns the process exit code:
//   0 success, 4 property-suite failure (verify only).
// Configuration problems and numerical failures are reported by throwing;
// main maps them to 2 and 3.
int cmd_obstruction(const RunConfig& rc);
int cmd_decompose(const RunConfig& rc);
int cmd_verify(const RunConfig& rc);
int cmd_dump_cutoffs(const RunConfig& rc);

}  // namespace reebtool
