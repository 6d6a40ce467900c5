// SPDX-License-Identifier: Apache-2.0
#include "udep/matrix_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "udep/errors.hpp"

namespace udep {

void write_matrix(std::ostream& os, const CMat& m) {
  os << m.rows() << ' ' << m.cols() << '\n';
  char buf[64];
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const cplx z = m(i, j);
      std::snprintf(buf, sizeof(buf), "%.17g %.17g", z.real(), z.imag());
      if (j) os << ' ';
      os << buf;
    }
    os << '\n';
  }
  if (!os) throw ParseError("matrix write failed");
}

CMat read_matrix(std::istream& is) {
  long long rows = 0, cols = 0;
  if (!(is >> rows >> cols)) throw ParseError("expected \"rows cols\" header line");
  if (rows < 1 || cols < 1 || rows > (1 << 20) || cols > (1 << 20))
    throw ParseError("invalid matrix dimensions");
  CMat m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      double re = 0.0, im = 0.0;
      if (!(is >> re >> im)) throw ParseError("truncated or malformed matrix body");
      m(i, j) = cplx(re, im);
    }
  }
  std::string tail;
  if (is >> tail) throw ParseError("trailing data after matrix body");
  if (!m.all_finite()) throw ParseError("non-finite matrix entry");
  return m;
}

void write_matrix_file(const std::string& path, const CMat& m) {
  std::ostringstream ss;
  write_matrix(ss, m);
  write_text_file_atomic(path, ss.str());
}

CMat read_matrix_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open matrix file: " + path);
  return read_matrix(f);
}

std::vector<std::uint8_t> read_bytes_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open file: " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                                  std::istreambuf_iterator<char>());
  return bytes;
}

namespace {

void atomic_write(const std::string& path, const char* data, std::size_t size, bool binary) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, binary ? std::ios::binary | std::ios::trunc : std::ios::trunc);
    if (!f) throw ParseError("cannot open output file: " + tmp);
    f.write(data, static_cast<std::streamsize>(size));
    if (!f) throw ParseError("write failed: " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw ParseError("rename failed: " + path);
  }
}

}  // namespace

void write_bytes_file_atomic(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  atomic_write(path, reinterpret_cast<const char*>(bytes.data()), bytes.size(), true);
}

void write_text_file_atomic(const std::string& path, const std::string& text) {
  atomic_write(path, text.data(), text.size(), false);
}

}  // namespace udep
