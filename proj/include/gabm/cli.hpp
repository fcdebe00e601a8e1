#pragma once

#include <iosfwd>

namespace gabm {

/// Entry point of the gabm tool. Data goes to files (and `out` for listings); progress and
/// errors go to `err`. Returns 0, 2 (config), 3 (backend) or 4 (io).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv);

} // namespace gabm
