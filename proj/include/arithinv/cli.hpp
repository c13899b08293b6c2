#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace arithinv::cli {

/// Runs one command; returns the process exit code.
/// 0 success, 1 failed property/verification, 2 parse or usage error,
/// 3 CapExceeded/NotInvertibleOverRing, 4 generator at the bound degree,
/// 5 hsop search failure (SearchBudgetExceeded/ResidueFieldTooSmall).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_main(int argc, char** argv);

}  // namespace arithinv::cli
