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
#include <optional>
#include <string>
#include <string_view>

namespace acc8 {

inline constexpr unsigned kAddressSpace = 32;
inline constexpr std::uint8_t kAddressMask = 0x1F;
inline constexpr std::uint8_t kImmediateMask = 0x0F;

// All 24 instructions. Order follows the groups of the instruction table.
enum class Mnemonic : std::uint8_t {
  ADDI,
  LDA, STA, ADD, SUB, AND, OR, XOR,
  JMP, JSR, BEQ_FWD, BEQ_BWD, BNE_FWD, BNE_BWD, HLT,
  SHL, SHR, SHL4, ROL, ROR, LDAR, DEC, CLR, INV,
};

inline constexpr std::size_t kMnemonicCount = 24;

enum class InstructionClass : std::uint8_t {
  Immediate,
  VariableData,
  ControlBranch,
  DataManipulation,
};

enum class OperandKind : std::uint8_t { None, MemAddr, Immediate };

// One decoded byte. The operand is stored as a plain integer: a 5-bit
// address for the memory ops, a 4-bit immediate for ADDI, 0 otherwise.
struct Instruction {
  Mnemonic kind = Mnemonic::LDA;
  std::uint8_t operand = 0;

  static constexpr Instruction plain(Mnemonic m) { return {m, 0}; }
  static constexpr Instruction memory(Mnemonic m, std::uint8_t addr) { return {m, addr}; }
  static constexpr Instruction immediate(std::uint8_t value) { return {Mnemonic::ADDI, value}; }

  friend constexpr bool operator==(const Instruction&, const Instruction&) = default;
};

constexpr OperandKind operand_kind(Mnemonic m) noexcept {
  switch (m) {
    case Mnemonic::ADDI:
      return OperandKind::Immediate;
    case Mnemonic::LDA: case Mnemonic::STA: case Mnemonic::ADD: case Mnemonic::SUB:
    case Mnemonic::AND: case Mnemonic::OR: case Mnemonic::XOR:
      return OperandKind::MemAddr;
    default:
      return OperandKind::None;
  }
}

constexpr bool is_branch(Mnemonic m) noexcept {
  return m == Mnemonic::BEQ_FWD || m == Mnemonic::BEQ_BWD ||
         m == Mnemonic::BNE_FWD || m == Mnemonic::BNE_BWD;
}

// Total over 0..255.
Instruction decode(std::uint8_t byte) noexcept;

// Throws acc8::Error(Errc::operand_range) when the operand does not fit its
// field, or when an operand-free instruction carries a nonzero operand.
std::uint8_t encode(const Instruction& instr);

InstructionClass class_of(Mnemonic m) noexcept;
inline InstructionClass class_of(const Instruction& i) noexcept { return class_of(i.kind); }

std::string_view mnemonic_of(Mnemonic m) noexcept;
inline std::string_view mnemonic_of(const Instruction& i) noexcept { return mnemonic_of(i.kind); }

std::string_view to_string(InstructionClass c) noexcept;

// Case-insensitive lookup of a mnemonic name.
std::optional<Mnemonic> parse_mnemonic(std::string_view text) noexcept;

// "ADD 21", "ADDI 5", "HLT".
std::string format_instruction(const Instruction& instr);

const std::array<Mnemonic, kMnemonicCount>& all_mnemonics() noexcept;

}  // namespace acc8
