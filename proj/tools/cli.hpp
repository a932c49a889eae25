#pragma once

#include <ostream>

namespace cyclineq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

// Results go to `out` as a single JSON document (CSV where requested),
// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cyclineq::cli
