// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "udep/complex_matrix.hpp"

namespace udep {

/// Text matrix format: line 1 = "rows cols", then `rows` lines of 2*cols
/// whitespace-separated floats, re/im interleaved, row-major, 17 significant
/// digits on write.
void write_matrix(std::ostream& os, const CMat& m);
CMat read_matrix(std::istream& is);

void write_matrix_file(const std::string& path, const CMat& m);
CMat read_matrix_file(const std::string& path);

std::vector<std::uint8_t> read_bytes_file(const std::string& path);

/// Writes to a sibling temp file, then renames over the target.
void write_bytes_file_atomic(const std::string& path, const std::vector<std::uint8_t>& bytes);
void write_text_file_atomic(const std::string& path, const std::string& text);

}  // namespace udep
