// Copyright 2026 The acc8 Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Independent reference data for the tests. Nothing here calls into the
// library's decoder or memory map.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace oracle {

struct OpcodeRow {
  std::string_view mnemonic;
  std::string_view pattern;  // MSB first; 'M' address bit, 'X' immediate bit
};

// The instruction table, row by row.
inline constexpr std::array<OpcodeRow, 24> kTable = {{
    {"ADDI", "1110XXXX"},
    {"LDA", "000MMMMM"},
    {"STA", "001MMMMM"},
    {"ADD", "010MMMMM"},
    {"SUB", "011MMMMM"},
    {"AND", "100MMMMM"},
    {"OR", "101MMMMM"},
    {"XOR", "110MMMMM"},
    {"JMP", "11110000"},
    {"JSR", "11110001"},
    {"BEQ_FWD", "11110010"},
    {"BEQ_BWD", "11110011"},
    {"BNE_FWD", "11110100"},
    {"BNE_BWD", "11110101"},
    {"HLT", "11111111"},
    {"SHL", "11110110"},
    {"SHR", "11110111"},
    {"SHL4", "11111000"},
    {"ROL", "11111001"},
    {"ROR", "11111010"},
    {"LDAR", "11111011"},
    {"DEC", "11111100"},
    {"CLR", "11111101"},
    {"INV", "11111110"},
}};

struct Decoded {
  std::string_view mnemonic;
  unsigned operand = 0;
  int matches = 0;
};

// Matches a byte against every pattern; operand = the free bits.
inline Decoded decode(std::uint8_t byte) {
  Decoded d;
  for (const auto& row : kTable) {
    bool ok = true;
    unsigned operand = 0;
    for (int i = 0; i < 8; ++i) {
      const bool bit = (byte >> (7 - i)) & 1;
      const char p = row.pattern[static_cast<std::size_t>(i)];
      if (p == 'M' || p == 'X')
        operand = (operand << 1) | (bit ? 1u : 0u);
      else if ((p == '1') != bit)
        ok = false;
    }
    if (ok) {
      ++d.matches;
      d.mnemonic = row.mnemonic;
      d.operand = operand;
    }
  }
  return d;
}

// Seven-segment digits drawn as glyphs, three columns per digit:
//    _       a
//   |_|     f g b
//   |_|     e d c
inline constexpr std::array<std::string_view, 3> kGlyphs = {
    " _     _  _     _  _  _  _  _ ",
    "| |  | _| _||_||_ |_   ||_||_|",
    "|_|  ||_  _|  | _||_|  ||_| _|",
};

// Pattern for one digit, bit order gfedcba, active high.
inline std::uint8_t segments(unsigned digit) {
  const std::size_t c = 3 * digit;
  const auto on = [&](std::size_t row, std::size_t col) { return kGlyphs[row][c + col] != ' '; };
  unsigned v = 0;
  v |= on(0, 1) << 0;  // a
  v |= on(1, 2) << 1;  // b
  v |= on(2, 2) << 2;  // c
  v |= on(2, 1) << 3;  // d
  v |= on(2, 0) << 4;  // e
  v |= on(1, 0) << 5;  // f
  v |= on(1, 1) << 6;  // g
  return static_cast<std::uint8_t>(v);
}

}  // namespace oracle
