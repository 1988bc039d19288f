#include "z4/matrix_io.hpp"

#include <array>
#include <cstdint>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "z4/error.hpp"

namespace z4 {

namespace {

constexpr std::array<unsigned char, 4> kMagic = {0x5A, 0x34, 0x4D, 0x01};

[[noreturn]] void fail_line(std::size_t line, const std::string& what) {
  throw FormatError("line " + std::to_string(line) + ": " + what);
}

[[noreturn]] void fail_byte(std::uint64_t offset, const std::string& what) {
  throw FormatError("byte " + std::to_string(offset) + ": " + what);
}

bool parse_u32(const std::string& token, std::uint32_t& out) {
  if (token.empty() || token.size() > 10) return false;
  std::uint64_t v = 0;
  for (char c : token) {
    if (c < '0' || c > '9') return false;
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  if (v > std::numeric_limits<std::uint32_t>::max()) return false;
  out = static_cast<std::uint32_t>(v);
  return true;
}

// Keeps a short malformed header from demanding a multi-gigabyte allocation.
constexpr std::uint64_t kMaxElements = std::uint64_t{1} << 32;

void check_element_count(std::uint32_t rows, std::uint32_t cols,
                         const std::function<void(const std::string&)>& fail) {
  if (static_cast<std::uint64_t>(rows) * cols > kMaxElements)
    fail("dimensions " + std::to_string(rows) + "x" + std::to_string(cols) +
         " exceed the supported element count");
}

}  // namespace

void write_text(std::ostream& out, const Matrix& m) {
  out << "z4m " << m.rows() << ' ' << m.cols() << '\n';
  std::string line(m.cols(), '0');
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j)
      line[j] = static_cast<char>('0' + m.get_unchecked(i, j).value());
    out << line << '\n';
  }
}

Matrix read_text(std::istream& in) {
  std::string header;
  if (!std::getline(in, header))
    fail_line(1, "expected header 'z4m <rows> <cols>'");
  std::istringstream hs(header);
  std::string tag, rows_tok, cols_tok, extra;
  hs >> tag >> rows_tok >> cols_tok;
  std::uint32_t rows = 0, cols = 0;
  if (tag != "z4m" || !parse_u32(rows_tok, rows) || !parse_u32(cols_tok, cols) ||
      (hs >> extra))
    fail_line(1, "expected header 'z4m <rows> <cols>'");
  check_element_count(rows, cols, [](const std::string& what) { fail_line(1, what); });

  Matrix m(rows, cols);
  std::string line;
  for (std::size_t i = 0; i < rows; ++i) {
    if (!std::getline(in, line)) fail_line(i + 2, "missing row");
    if (line.size() != cols)
      fail_line(i + 2, "row has " + std::to_string(line.size()) +
                           " characters, expected " + std::to_string(cols));
    for (std::size_t j = 0; j < cols; ++j) {
      char c = line[j];
      if (c < '0' || c > '3')
        fail_line(i + 2, "column " + std::to_string(j + 1) + ": invalid digit");
      m.set_unchecked(i, j, Digit(static_cast<unsigned>(c - '0')));
    }
  }
  if (in.peek() != std::char_traits<char>::eof())
    fail_line(rows + 2, "trailing data after last row");
  return m;
}

void write_binary(std::ostream& out, const Matrix& m) {
  out.write(reinterpret_cast<const char*>(kMagic.data()), kMagic.size());
  auto put_u32 = [&](std::uint64_t v) {
    for (int i = 0; i < 4; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xff));
  };
  put_u32(m.rows());
  put_u32(m.cols());
  std::size_t row_bytes = (m.cols() + 3) / 4;
  std::string row(row_bytes, '\0');
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::fill(row.begin(), row.end(), '\0');
    for (std::size_t j = 0; j < m.cols(); ++j) {
      unsigned v = m.get_unchecked(i, j).value();
      row[j / 4] = static_cast<char>(static_cast<unsigned char>(row[j / 4]) |
                                     (v << ((j % 4) * 2)));
    }
    out.write(row.data(), static_cast<std::streamsize>(row_bytes));
  }
}

Matrix read_binary(std::istream& in) {
  std::uint64_t offset = 0;
  auto get_bytes = [&](char* dst, std::size_t n, const char* what) {
    in.read(dst, static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in.gcount()) != n) fail_byte(offset, what);
    offset += n;
  };

  std::array<char, 4> magic{};
  get_bytes(magic.data(), 4, "bad or truncated magic");
  for (std::size_t i = 0; i < 4; ++i)
    if (static_cast<unsigned char>(magic[i]) != kMagic[i])
      fail_byte(i, "bad magic");

  std::array<char, 8> dims{};
  get_bytes(dims.data(), 8, "truncated dimensions");
  auto u32_at = [&](std::size_t pos) {
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i)
      v = (v << 8) | static_cast<unsigned char>(dims[pos + static_cast<std::size_t>(i)]);
    return v;
  };
  std::uint32_t rows = u32_at(0), cols = u32_at(4);
  check_element_count(rows, cols, [](const std::string& what) { fail_byte(4, what); });

  Matrix m(rows, cols);
  std::size_t row_bytes = (static_cast<std::size_t>(cols) + 3) / 4;
  std::string row(row_bytes, '\0');
  for (std::size_t i = 0; i < rows; ++i) {
    std::uint64_t row_start = offset;
    get_bytes(row.data(), row_bytes, "truncated row data");
    for (std::size_t j = 0; j < cols; ++j) {
      unsigned v = (static_cast<unsigned char>(row[j / 4]) >> ((j % 4) * 2)) & 3u;
      m.set_unchecked(i, j, Digit(v));
    }
    if (cols % 4 != 0) {
      unsigned pad = static_cast<unsigned char>(row[row_bytes - 1]) >> ((cols % 4) * 2);
      if (pad != 0) fail_byte(row_start + row_bytes - 1, "nonzero padding bits");
    }
  }
  if (in.peek() != std::char_traits<char>::eof())
    fail_byte(offset, "trailing data");
  return m;
}

Matrix load_matrix(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "' for reading");
  // Sniff: binary files open with the magic byte 0x5A ('Z'); the text header
  // starts with lowercase 'z'.
  int first = in.peek();
  if (first == kMagic[0]) return read_binary(in);
  return read_text(in);
}

void save_matrix(const std::string& path, const Matrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open '" + path + "' for writing");
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".z4b") == 0)
    write_binary(out, m);
  else
    write_text(out, m);
  out.flush();
  if (!out) throw FormatError("write to '" + path + "' failed");
}

}  // namespace z4
