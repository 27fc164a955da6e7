#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mrphase {

enum ExitCode : int {
    kExitOk = 0,
    kExitParse = 2,
    kExitData = 3,
    kExitBound = 4,
};

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mrphase
