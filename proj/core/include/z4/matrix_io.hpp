#pragma once

#include <iosfwd>
#include <string>

#include "z4/matrix.hpp"

namespace z4 {

/// Text format (.z4t):
///   line 1:  "z4m <rows> <cols>" in decimal
///   then `rows` lines of exactly `cols` characters from {0,1,2,3}
/// Newlines are 0x0A, no trailing whitespace anywhere.
void write_text(std::ostream& out, const Matrix& m);
Matrix read_text(std::istream& in);  // FormatError names the offending line

/// Binary format (.z4b):
///   magic 5A 34 4D 01, rows and cols as 32-bit little-endian unsigned,
///   then the elements row-major at 2 bits each, low element in the least
///   significant bits of each byte, rows padded to byte boundaries with
///   zero bits.
void write_binary(std::ostream& out, const Matrix& m);
Matrix read_binary(std::istream& in);  // FormatError names the byte offset

/// Reads a matrix file, sniffing the format from the first bytes.
Matrix load_matrix(const std::string& path);

/// Writes a matrix file; a ".z4b" extension selects the binary format,
/// anything else the text one.
void save_matrix(const std::string& path, const Matrix& m);

}  // namespace z4
