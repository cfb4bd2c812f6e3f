#include "sympspec/matrix_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace sympspec {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

Matrix parse_matrix(std::istream& in) {
  std::string line;
  std::size_t rows = 0, cols = 0;
  bool have_header = false;
  std::vector<double> entries;
  while (std::getline(in, line)) {
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    std::istringstream fields(line);
    if (!have_header) {
      long long r = 0, c = 0;
      if (!(fields >> r >> c) || r < 1 || c < 1)
        fail(Errc::parse_error, "matrix header must be 'rows cols'");
      std::string extra;
      if (fields >> extra) fail(Errc::parse_error, "matrix header has trailing tokens");
      rows = static_cast<std::size_t>(r);
      cols = static_cast<std::size_t>(c);
      entries.reserve(rows * cols);
      have_header = true;
      continue;
    }
    double value = 0.0;
    while (fields >> value) entries.push_back(value);
    if (!fields.eof()) fail(Errc::parse_error, "matrix entry is not a number");
  }
  if (!have_header) fail(Errc::parse_error, "matrix file is empty");
  if (entries.size() != rows * cols)
    fail(Errc::parse_error, "entry count does not match the header");
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = entries[i * cols + j];
  if (!m.all_finite()) fail(Errc::parse_error, "matrix entries must be finite");
  return m;
}

Matrix read_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::parse_error, "cannot open '" + path + "'");
  return parse_matrix(in);
}

std::string format_matrix(const Matrix& m, const std::string& comment) {
  std::string out;
  if (!comment.empty()) out += "# " + comment + "\n";
  out += std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += " ";
      out += format_double(m(i, j));
    }
    out += "\n";
  }
  return out;
}

void write_matrix(const std::string& path, const Matrix& m, const std::string& comment) {
  write_text_atomic(path, format_matrix(m, comment));
}

Vec read_vector(const std::string& path) {
  Matrix m = read_matrix(path);
  if (m.rows() != 1 && m.cols() != 1)
    fail(Errc::parse_error, "vector file must have one row or one column");
  return m.data();
}

void write_text_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) fail(Errc::parse_error, "cannot write '" + tmp + "'");
    out << content;
    if (!out) fail(Errc::parse_error, "short write to '" + tmp + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    fail(Errc::parse_error, "cannot rename into '" + path + "'");
}

}  // namespace sympspec
