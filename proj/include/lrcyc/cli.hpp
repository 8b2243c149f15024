#pragma once

#include <ostream>

namespace lrcyc {

/// Entry point of the lrcyc tool. Exit codes: 0 success, 1 computation error
/// or a failed check, 2 usage error.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lrcyc
