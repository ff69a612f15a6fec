#pragma once

#include <ostream>

#include "linksmooth_cli/options.hpp"

namespace linksmooth::cli {

// Each command writes its files below options.out and returns an exit code.
// Invalid settings surface as InvalidArgument.

int cmd_histogram(const RunOptions& options, std::ostream& out, std::ostream& err);
int cmd_decompose(const RunOptions& options, std::ostream& out, std::ostream& err);
int cmd_ratestudy(const RunOptions& options, std::ostream& out, std::ostream& err);
int cmd_conventional(const RunOptions& options, std::ostream& out, std::ostream& err);

/// Quick invariant checks; one PASS/FAIL line each.
int cmd_selftest(const RunOptions& options, std::ostream& out, std::ostream& err);

}  // namespace linksmooth::cli
