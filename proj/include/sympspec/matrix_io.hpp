#pragma once

#include <istream>
#include <string>

#include "sympspec/core.hpp"

namespace sympspec {

inline constexpr const char* kVersion = "0.1.0";

// Shortest decimal that round-trips to the same binary64 value.
std::string format_double(double v);

// Text format: optional leading '#' comment lines, a "rows cols" header,
// then row-major whitespace-separated entries.
Matrix parse_matrix(std::istream& in);
Matrix read_matrix(const std::string& path);
std::string format_matrix(const Matrix& m, const std::string& comment = "");
void write_matrix(const std::string& path, const Matrix& m, const std::string& comment = "");

// A vector file is a matrix file with one row or one column.
Vec read_vector(const std::string& path);

// Temp file plus rename, so readers never observe a partial file.
void write_text_atomic(const std::string& path, const std::string& content);

}  // namespace sympspec
