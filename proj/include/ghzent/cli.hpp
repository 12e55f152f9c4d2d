#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ghzent {
namespace cli {

// Full command-line front end; `args` excludes the program name. Streams
// are injected so tests can drive the tool in-process.
//
// Exit codes: 0 fully separable / generic success, 10 entangled but
// biseparable, 20 genuinely entangled, 2 input error, 30 solver or audit
// failure.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace cli
}  // namespace ghzent
