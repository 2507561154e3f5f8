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

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "acc8/isa.hpp"

namespace acc8 {

// Up to 32 bytes of combined instruction/data memory. Cells are either
// assigned or absent; symbols are metadata and do not take part in equality.
class MemoryImage {
 public:
  using Cells = std::array<std::optional<std::uint8_t>, kAddressSpace>;

  MemoryImage() = default;

  // Throws Errc::address_range for addr >= 32, Errc::duplicate_address when
  // the cell is already assigned.
  void set(unsigned addr, std::uint8_t value);
  std::optional<std::uint8_t> get(unsigned addr) const;
  bool contains(unsigned addr) const { return addr < kAddressSpace && cells_[addr].has_value(); }

  const Cells& cells() const noexcept { return cells_; }
  std::size_t size() const noexcept;
  bool empty() const noexcept { return size() == 0; }

  std::map<std::string, std::uint8_t>& symbols() noexcept { return symbols_; }
  const std::map<std::string, std::uint8_t>& symbols() const noexcept { return symbols_; }

  friend bool operator==(const MemoryImage& a, const MemoryImage& b) { return a.cells_ == b.cells_; }

 private:
  Cells cells_{};
  std::map<std::string, std::uint8_t> symbols_;
};

struct LabelRef {
  std::string name;
  friend bool operator==(const LabelRef&, const LabelRef&) = default;
};

using Operand = std::variant<std::monostate, long, LabelRef>;

struct Statement {
  enum class Kind { Label, Instruction, Byte, Origin };

  Kind kind = Kind::Instruction;
  int line = 0;
  std::string label;                  // Label
  Mnemonic mnemonic = Mnemonic::LDA;  // Instruction
  Operand operand;                    // Instruction, Byte, Origin
  // Listing lines ("05: 55  ADD 21") carry the byte they were printed with;
  // assemble() checks it against the encoding.
  std::optional<std::uint8_t> listed_byte;
};

// Line-oriented syntax:
//   [label:] [MNEMONIC [operand]] [; comment]
//   [label:] .byte <value>
//   [label:] .org <address>
//   HH: HH  MNEMONIC [operand]     (disassembler listing line)
// Operands are decimal, 0x-prefixed hex, or a label. Throws acc8::Error.
std::vector<Statement> parse_source(std::string_view source);

// Two passes: addresses and labels first, then encoding.
MemoryImage assemble(const std::vector<Statement>& statements);

inline MemoryImage assemble_source(std::string_view source) { return assemble(parse_source(source)); }

// One "AA: BB  MNEMONIC [operand]" line per assigned byte.
std::string disassemble(const MemoryImage& image);

// Whitespace separated hex bytes with @HH markers at discontinuities.
std::string format_hex(const MemoryImage& image);
MemoryImage parse_hex(std::string_view text);

}  // namespace acc8
