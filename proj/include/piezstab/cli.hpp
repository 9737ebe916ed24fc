#pragma once

#include <string>
#include <vector>

namespace piezstab {

/// Command-line entry point (also used in-process by the tests).
/// Exit codes: 0 success, 1 usage error, 2 config error, 3 computation error.
int run_cli(const std::vector<std::string>& args);

}  // namespace piezstab
