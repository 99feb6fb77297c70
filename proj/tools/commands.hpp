#pragma once

#include "run_config.hpp"

namespace randkit::cli {

// Each command returns the process exit status. Operational failures are
// reported by throwing Error; main maps those to exit status 3.
int cmd_generate(RunConfig cfg);
int cmd_test(RunConfig cfg);
int cmd_dice(RunConfig cfg);
int cmd_demo_defect(RunConfig cfg);
int cmd_demo_mc(RunConfig cfg);
int cmd_replay(RunConfig cfg);

int dispatch(RunConfig cfg);

}  // namespace randkit::cli
