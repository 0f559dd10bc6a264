#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace defseq::cli {

/// Exit codes.
enum Exit : int {
    ok = 0,
    negative = 1,  // check not admissible, bijection refuted, geometry failed
    usage = 2,     // bad arguments or invalid input document
    distinct = 3,  // compare: classes are distinct
    resource = 4,  // expansion cap exceeded
    io = 5,
};

/// Runs one command line (without the program name). JSON goes to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace defseq::cli
