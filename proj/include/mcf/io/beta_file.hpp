#pragma once

#include <string>

#include "mcf/core.hpp"

namespace mcf::io {

/// Writes a beta field as "BETAF32 <width> <height>\n" followed by
/// width*height records of four little-endian IEEE-754 32-bit floats
/// (a_R, a_G, a_B, b), row-major. The encoding is byte-exact: writing a
/// field read from a file reproduces the file.
void write_beta(const std::string& path, const BetaField& beta);

/// Reads a BETAF32 file. Throws IoError on malformed headers, truncated
/// payloads or trailing bytes.
BetaField read_beta(const std::string& path);

} // namespace mcf::io
