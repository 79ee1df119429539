// Copyright 2026 The Shadowcarve Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "shadowcarve/io.hpp"

#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>
#include <vector>

namespace shadowcarve {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
         c == '\f';
}

// Cursor over a byte buffer that reports errors with their offset.
class Scanner {
 public:
  explicit Scanner(std::string_view data) : data_(data) {}

  std::size_t pos() const { return pos_; }
  bool done() const { return pos_ >= data_.size(); }
  char peek() const { return data_[pos_]; }
  std::string_view rest() const { return data_.substr(pos_); }
  void advance(std::size_t count) { pos_ += count; }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, pos_);
  }

  // Whitespace and '#' comments, as allowed between PBM header tokens.
  void skip_pbm_space() {
    while (!done()) {
      if (is_space(peek())) {
        ++pos_;
      } else if (peek() == '#') {
        while (!done() && peek() != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::size_t read_decimal(const char* what) {
    if (done() || peek() < '0' || peek() > '9') {
      fail(std::string("expected ") + what);
    }
    std::size_t value = 0;
    while (!done() && peek() >= '0' && peek() <= '9') {
      const std::size_t digit = static_cast<std::size_t>(peek() - '0');
      if (value > (std::numeric_limits<std::size_t>::max() - digit) / 10) {
        fail(std::string(what) + " is too large");
      }
      value = value * 10 + digit;
      ++pos_;
    }
    return value;
  }

  void expect(char c, const char* what) {
    if (done() || peek() != c) fail(std::string("expected ") + what);
    ++pos_;
  }

 private:
  std::string_view data_;
  std::size_t pos_ = 0;
};

std::size_t read_pbm_header(Scanner& in, std::string_view magic) {
  if (in.rest().substr(0, 2) != magic) {
    in.fail("expected magic number " + std::string(magic));
  }
  in.advance(2);
  if (in.done() || !(is_space(in.peek()) || in.peek() == '#')) {
    in.fail("expected whitespace after magic number");
  }
  in.skip_pbm_space();
  const std::size_t header_w = in.pos();
  const std::size_t width = in.read_decimal("width");
  in.skip_pbm_space();
  const std::size_t height = in.read_decimal("height");
  if (width == 0 || height == 0) {
    throw ParseError("image dimensions must be positive", header_w);
  }
  if (width != height) {
    throw ParseError("bitmap is not square (" + std::to_string(width) + "x" +
                         std::to_string(height) + ")",
                     header_w);
  }
  return width;
}

Bitmap read_plain_pbm(std::string_view data) {
  Scanner in(data);
  const std::size_t n = read_pbm_header(in, "P1");
  std::vector<std::uint8_t> bits;
  bits.reserve(n * n);
  while (bits.size() < n * n) {
    in.skip_pbm_space();
    if (in.done()) in.fail("raster ends early");
    const char c = in.peek();
    if (c != '0' && c != '1') in.fail("expected '0' or '1' in raster");
    bits.push_back(c == '1' ? 1 : 0);
    in.advance(1);
  }
  in.skip_pbm_space();
  if (!in.done()) in.fail("trailing data after raster");
  return Bitmap(n, std::move(bits));
}

Bitmap read_raw_pbm(std::string_view data) {
  Scanner in(data);
  const std::size_t n = read_pbm_header(in, "P4");
  if (in.done() || !is_space(in.peek())) {
    in.fail("expected a single whitespace byte before raster");
  }
  in.advance(1);
  const std::size_t row_bytes = (n + 7) / 8;
  if (in.rest().size() < row_bytes * n) in.fail("raster ends early");
  std::vector<std::uint8_t> bits(n * n);
  std::string_view raster = in.rest();
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const auto byte = static_cast<unsigned char>(raster[r * row_bytes + c / 8]);
      bits[r * n + c] = (byte >> (7 - c % 8)) & 1;
    }
  }
  in.advance(row_bytes * n);
  if (!in.done()) in.fail("trailing data after raster");
  return Bitmap(n, std::move(bits));
}

Bitmap read_textgrid(std::string_view data) {
  std::vector<std::uint8_t> bits;
  std::size_t width = 0;
  std::size_t rows = 0;
  std::size_t pos = 0;
  while (pos < data.size()) {
    const std::size_t line_start = pos;
    std::size_t len = 0;
    while (pos < data.size() && data[pos] != '\n') {
      const char c = data[pos];
      if (c != '#' && c != '.') {
        throw ParseError("expected '#' or '.' in textgrid", pos);
      }
      bits.push_back(c == '#' ? 1 : 0);
      ++len;
      ++pos;
    }
    if (len == 0) throw ParseError("empty textgrid line", line_start);
    if (rows == 0) {
      width = len;
    } else if (len != width) {
      throw ParseError("textgrid lines differ in length", line_start);
    }
    ++rows;
    if (pos < data.size()) ++pos;  // consume '\n'
  }
  if (rows == 0) throw ParseError("empty textgrid", 0);
  if (rows != width) {
    throw ParseError("textgrid is not square (" + std::to_string(width) + "x" +
                         std::to_string(rows) + ")",
                     0);
  }
  return Bitmap(width, std::move(bits));
}

}  // namespace

ParseError::ParseError(const std::string& what, std::size_t offset)
    : std::runtime_error(what + " at byte " + std::to_string(offset)),
      offset_(offset) {}

std::string_view to_string(BitmapFormat format) {
  switch (format) {
    case BitmapFormat::PlainPbm: return "p1";
    case BitmapFormat::RawPbm: return "p4";
    case BitmapFormat::TextGrid: return "textgrid";
  }
  return "?";
}

BitmapFormat parse_bitmap_format(std::string_view name) {
  if (name == "p1" || name == "P1") return BitmapFormat::PlainPbm;
  if (name == "p4" || name == "P4") return BitmapFormat::RawPbm;
  if (name == "textgrid") return BitmapFormat::TextGrid;
  throw ContractError("unknown bitmap format '" + std::string(name) + "'");
}

BitmapFormat detect_bitmap_format(std::string_view data) {
  if (data.substr(0, 2) == "P1") return BitmapFormat::PlainPbm;
  if (data.substr(0, 2) == "P4") return BitmapFormat::RawPbm;
  return BitmapFormat::TextGrid;
}

Bitmap read_bitmap(std::string_view data, BitmapFormat format) {
  switch (format) {
    case BitmapFormat::PlainPbm: return read_plain_pbm(data);
    case BitmapFormat::RawPbm: return read_raw_pbm(data);
    case BitmapFormat::TextGrid: return read_textgrid(data);
  }
  throw ContractError("unknown bitmap format");
}

std::string write_bitmap(const Bitmap& bitmap, BitmapFormat format) {
  const std::size_t n = bitmap.size();
  if (n == 0) throw ContractError("cannot write an empty bitmap");
  std::string out;
  switch (format) {
    case BitmapFormat::PlainPbm: {
      out = "P1\n" + std::to_string(n) + " " + std::to_string(n) + "\n";
      // Plain PBM lines stay within 70 characters.
      constexpr std::size_t kBitsPerLine = 35;
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
          if (c > 0) out += (c % kBitsPerLine == 0) ? '\n' : ' ';
          out += bitmap.at(r, c) ? '1' : '0';
        }
        out += '\n';
      }
      break;
    }
    case BitmapFormat::RawPbm: {
      out = "P4\n" + std::to_string(n) + " " + std::to_string(n) + "\n";
      const std::size_t row_bytes = (n + 7) / 8;
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t b = 0; b < row_bytes; ++b) {
          unsigned byte = 0;
          for (std::size_t bit = 0; bit < 8; ++bit) {
            const std::size_t c = b * 8 + bit;
            if (c < n && bitmap.at(r, c)) byte |= 0x80u >> bit;
          }
          out += static_cast<char>(byte);
        }
      }
      break;
    }
    case BitmapFormat::TextGrid: {
      out.reserve(n * (n + 1));
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) out += bitmap.at(r, c) ? '#' : '.';
        out += '\n';
      }
      break;
    }
  }
  return out;
}

HyperGrid read_vgrid(std::string_view data) {
  Scanner in(data);
  if (in.rest().substr(0, 6) != "VGRID ") in.fail("expected 'VGRID ' header");
  in.advance(6);
  const std::size_t dim = in.read_decimal("dimension");
  in.expect(' ', "space after dimension");
  const std::size_t n = in.read_decimal("size");
  in.expect('\n', "newline after header");
  if (dim == 0) throw ParseError("dimension must be positive", 6);
  if (n == 0) throw ParseError("size must be positive", 6);

  std::size_t total = 1;
  for (std::size_t d = 0; d < dim; ++d) {
    if (total > std::numeric_limits<std::size_t>::max() / n) {
      throw ParseError("grid extent overflows", 6);
    }
    total *= n;
  }
  if (in.rest().size() < total + total / n) {
    throw ParseError("body length does not match n^d = " + std::to_string(total),
                     data.size());
  }

  std::vector<std::uint8_t> cells(total);
  for (std::size_t f = 0; f < total; ++f) {
    const char c = in.peek();
    if (c != '0' && c != '1') in.fail("expected '0' or '1' in body");
    cells[f] = c == '1' ? 1 : 0;
    in.advance(1);
    if ((f + 1) % n == 0) in.expect('\n', "newline after every n cells");
  }
  if (!in.done()) in.fail("trailing data after body");
  return HyperGrid(dim, n, std::move(cells));
}

std::string write_vgrid(const HyperGrid& grid) {
  const std::size_t n = grid.size();
  auto cells = grid.cells();
  std::string out = "VGRID " + std::to_string(grid.dim()) + " " +
                    std::to_string(n) + "\n";
  out.reserve(out.size() + cells.size() + cells.size() / n);
  for (std::size_t f = 0; f < cells.size(); ++f) {
    out += cells[f] ? '1' : '0';
    if ((f + 1) % n == 0) out += '\n';
  }
  return out;
}

std::string write_vgrid(const VoxelGrid& grid) {
  return write_vgrid(HyperGrid::from_voxels(grid));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path.string() + "'");
  return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw IoError("error while writing '" + path.string() + "'");
}

}  // namespace shadowcarve
