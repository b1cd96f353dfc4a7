#pragma once

#include <iosfwd>

namespace regdepth {

/// Entry point of the `regdepth` command. Results go to `out` as JSON,
/// diagnostics to `err`. Returns 0 on success, 1 on user error (bad flags,
/// unreadable or malformed input, unsupported method) and 2 on internal
/// failure.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace regdepth
