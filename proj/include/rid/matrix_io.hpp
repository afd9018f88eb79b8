#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "rid/errors.hpp"
#include "rid/matrix.hpp"

// On-disk layout (all little-endian):
//   "RIDM" | u64 rows | u64 cols | rows*cols x (f64 re, f64 im), column-major

namespace rid {

inline constexpr std::array<char, 4> kMatrixMagic{'R', 'I', 'D', 'M'};

namespace detail {

inline void put_u64(std::ostream& os, std::uint64_t v) {
  std::array<char, 8> buf{};
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  os.write(buf.data(), buf.size());
}

inline std::uint64_t get_u64(std::istream& is) {
  std::array<unsigned char, 8> buf{};
  is.read(reinterpret_cast<char*>(buf.data()), buf.size());
  if (!is) throw IoError("matrix file truncated");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t{buf[i]} << (8 * i);
  return v;
}

}  // namespace detail

inline void write_matrix(std::ostream& os, const DenseMatrix& a) {
  os.write(kMatrixMagic.data(), kMatrixMagic.size());
  detail::put_u64(os, a.rows());
  detail::put_u64(os, a.cols());
  for (const Complex& z : a.data()) {
    detail::put_u64(os, std::bit_cast<std::uint64_t>(z.real()));
    detail::put_u64(os, std::bit_cast<std::uint64_t>(z.imag()));
  }
  if (!os) throw IoError("failed writing matrix");
}

inline DenseMatrix read_matrix(std::istream& is) {
  std::array<char, 4> magic{};
  is.read(magic.data(), magic.size());
  if (!is || magic != kMatrixMagic) throw IoError("not a RIDM matrix file (bad magic)");
  const std::uint64_t rows = detail::get_u64(is);
  const std::uint64_t cols = detail::get_u64(is);
  if (rows != 0 && cols > (std::uint64_t{1} << 40) / rows)
    throw IoError("matrix header declares an implausible size");
  DenseMatrix a(rows, cols);
  for (Complex& z : a.data()) {
    const double re = std::bit_cast<double>(detail::get_u64(is));
    const double im = std::bit_cast<double>(detail::get_u64(is));
    z = Complex(re, im);
  }
  return a;
}

inline void write_matrix(const std::filesystem::path& path, const DenseMatrix& a) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  write_matrix(os, a);
}

inline DenseMatrix read_matrix(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path.string());
  return read_matrix(is);
}

}  // namespace rid
