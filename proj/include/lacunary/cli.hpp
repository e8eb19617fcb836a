#pragma once

namespace lacunary {

// Parses argv, runs the selected subcommand, writes its artifacts, and maps
// failures to exit codes: 0 success, 2 validation, 3 capacity/budget
// exhaustion (including inconclusive certificate scans).
int run_cli(int argc, const char* const* argv);

}  // namespace lacunary
