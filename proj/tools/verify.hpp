#pragma once
#include <string>

// Runs the named verification suite ("sphere", "cylinder", "plane", "cone",
// or "all"), printing one pass/fail line per check. Returns the process exit
// code: 0 all passed, 1 a check failed, 2 unknown suite.
int run_verify(const std::string& suite);
