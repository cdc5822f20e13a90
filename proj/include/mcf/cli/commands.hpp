#pragma once

#include <string>

#include "mcf/core.hpp"

namespace mcf::cli {

/// Thresholds a grayscale map into trimap labels: below 0.2 background,
/// above 0.8 foreground, anything in between unknown.
Trimap trimap_from_gray(const AlphaMap& gray);

/// Scales a grayscale map in [0,1] into confidence weights.
ConfidenceMap confidence_from_gray(const AlphaMap& gray, double scale);

/// Entry point behind the binary: parses subcommands (matte, compare,
/// bench) and dispatches. Returns the process exit code: 0 success,
/// 1 usage error, 2 I/O or input-data error, 3 solver failure.
int run(int argc, const char* const* argv);

} // namespace mcf::cli
