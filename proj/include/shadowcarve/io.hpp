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

#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "shadowcarve/core.hpp"

namespace shadowcarve {

/// Input bytes do not follow the expected format.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// A file could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// PBM "P1" (plain), PBM "P4" (raw, rows padded to whole bytes), or the
/// textgrid format: square lines of '#' (1) and '.' (0).
enum class BitmapFormat { PlainPbm, RawPbm, TextGrid };

std::string_view to_string(BitmapFormat format);
/// Accepts "p1", "p4" and "textgrid".
BitmapFormat parse_bitmap_format(std::string_view name);
/// Chooses by magic number; anything not starting with "P1"/"P4" is
/// treated as textgrid.
BitmapFormat detect_bitmap_format(std::string_view data);

/// PBM convention: 1 is black, an existent pixel. Non-square images and
/// trailing bytes are rejected.
Bitmap read_bitmap(std::string_view data, BitmapFormat format);
std::string write_bitmap(const Bitmap& bitmap, BitmapFormat format);

/// "VGRID <d> <n>\n" then n^d '0'/'1' characters in row-major order with a
/// newline after every n characters.
HyperGrid read_vgrid(std::string_view data);
std::string write_vgrid(const HyperGrid& grid);
std::string write_vgrid(const VoxelGrid& grid);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view data);

}  // namespace shadowcarve
