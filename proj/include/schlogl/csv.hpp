#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "schlogl/linalg.hpp"

namespace schlogl {

/// 17 significant digits, '.' decimal.
std::string format_double(double v);

/// 64-bit FNV-1a, rendered as 16 hex digits.
std::string config_hash(const std::string& canonical_config);

/// Full dense matrix, one row per line.
std::string matrix_to_csv(const RealMatrix& m);
/// Each complex entry is written as two columns re,im.
std::string matrix_to_csv(const ComplexMatrix& m);

/// Prefixes every line of `header` with "# ".
std::string comment_block(const std::string& header);

/// Writes through a temporary file and a rename. Throws IoError.
void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace schlogl
