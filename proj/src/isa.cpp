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

#include "acc8/isa.hpp"

#include <algorithm>
#include <cctype>

#include "acc8/error.hpp"

namespace acc8 {

namespace {

constexpr std::array<Mnemonic, kMnemonicCount> kAll = {
    Mnemonic::ADDI,    Mnemonic::LDA,     Mnemonic::STA,     Mnemonic::ADD,
    Mnemonic::SUB,     Mnemonic::AND,     Mnemonic::OR,      Mnemonic::XOR,
    Mnemonic::JMP,     Mnemonic::JSR,     Mnemonic::BEQ_FWD, Mnemonic::BEQ_BWD,
    Mnemonic::BNE_FWD, Mnemonic::BNE_BWD, Mnemonic::HLT,     Mnemonic::SHL,
    Mnemonic::SHR,     Mnemonic::SHL4,    Mnemonic::ROL,     Mnemonic::ROR,
    Mnemonic::LDAR,    Mnemonic::DEC,     Mnemonic::CLR,     Mnemonic::INV,
};

// Memory ops by their top three bits, 000..110.
constexpr std::array<Mnemonic, 7> kMemoryOps = {
    Mnemonic::LDA, Mnemonic::STA, Mnemonic::ADD, Mnemonic::SUB,
    Mnemonic::AND, Mnemonic::OR,  Mnemonic::XOR,
};

// 1111xxxx, indexed by the low nibble.
constexpr std::array<Mnemonic, 16> kFixedOps = {
    Mnemonic::JMP,  Mnemonic::JSR, Mnemonic::BEQ_FWD, Mnemonic::BEQ_BWD,
    Mnemonic::BNE_FWD, Mnemonic::BNE_BWD, Mnemonic::SHL, Mnemonic::SHR,
    Mnemonic::SHL4, Mnemonic::ROL, Mnemonic::ROR, Mnemonic::LDAR,
    Mnemonic::DEC,  Mnemonic::CLR, Mnemonic::INV, Mnemonic::HLT,
};

}  // namespace

Instruction decode(std::uint8_t byte) noexcept {
  const unsigned top3 = byte >> 5;
  if (top3 < 7) return Instruction::memory(kMemoryOps[top3], byte & kAddressMask);
  if ((byte & 0xF0) == 0xE0) return Instruction::immediate(byte & kImmediateMask);
  return Instruction::plain(kFixedOps[byte & 0x0F]);
}

std::uint8_t encode(const Instruction& instr) {
  switch (operand_kind(instr.kind)) {
    case OperandKind::MemAddr: {
      if (instr.operand > kAddressMask)
        throw Error(Errc::operand_range, "memory address " + std::to_string(instr.operand) +
                                             " does not fit in 5 bits");
      const auto it = std::find(kMemoryOps.begin(), kMemoryOps.end(), instr.kind);
      return static_cast<std::uint8_t>(((it - kMemoryOps.begin()) << 5) | instr.operand);
    }
    case OperandKind::Immediate:
      if (instr.operand > kImmediateMask)
        throw Error(Errc::operand_range,
                    "immediate " + std::to_string(instr.operand) + " does not fit in 4 bits");
      return static_cast<std::uint8_t>(0xE0 | instr.operand);
    case OperandKind::None:
      break;
  }
  if (instr.operand != 0)
    throw Error(Errc::operand_range,
                std::string(mnemonic_of(instr.kind)) + " takes no operand");
  const auto it = std::find(kFixedOps.begin(), kFixedOps.end(), instr.kind);
  return static_cast<std::uint8_t>(0xF0 | (it - kFixedOps.begin()));
}

InstructionClass class_of(Mnemonic m) noexcept {
  switch (m) {
    case Mnemonic::ADDI:
      return InstructionClass::Immediate;
    case Mnemonic::LDA: case Mnemonic::STA: case Mnemonic::ADD: case Mnemonic::SUB:
    case Mnemonic::AND: case Mnemonic::OR: case Mnemonic::XOR:
      return InstructionClass::VariableData;
    case Mnemonic::JMP: case Mnemonic::JSR: case Mnemonic::BEQ_FWD: case Mnemonic::BEQ_BWD:
    case Mnemonic::BNE_FWD: case Mnemonic::BNE_BWD: case Mnemonic::HLT:
      return InstructionClass::ControlBranch;
    default:
      return InstructionClass::DataManipulation;
  }
}

std::string_view mnemonic_of(Mnemonic m) noexcept {
  switch (m) {
    case Mnemonic::ADDI: return "ADDI";
    case Mnemonic::LDA: return "LDA";
    case Mnemonic::STA: return "STA";
    case Mnemonic::ADD: return "ADD";
    case Mnemonic::SUB: return "SUB";
    case Mnemonic::AND: return "AND";
    case Mnemonic::OR: return "OR";
    case Mnemonic::XOR: return "XOR";
    case Mnemonic::JMP: return "JMP";
    case Mnemonic::JSR: return "JSR";
    case Mnemonic::BEQ_FWD: return "BEQ_FWD";
    case Mnemonic::BEQ_BWD: return "BEQ_BWD";
    case Mnemonic::BNE_FWD: return "BNE_FWD";
    case Mnemonic::BNE_BWD: return "BNE_BWD";
    case Mnemonic::HLT: return "HLT";
    case Mnemonic::SHL: return "SHL";
    case Mnemonic::SHR: return "SHR";
    case Mnemonic::SHL4: return "SHL4";
    case Mnemonic::ROL: return "ROL";
    case Mnemonic::ROR: return "ROR";
    case Mnemonic::LDAR: return "LDAR";
    case Mnemonic::DEC: return "DEC";
    case Mnemonic::CLR: return "CLR";
    case Mnemonic::INV: return "INV";
  }
  return "?";
}

std::string_view to_string(InstructionClass c) noexcept {
  switch (c) {
    case InstructionClass::Immediate: return "Immediate";
    case InstructionClass::VariableData: return "VariableData";
    case InstructionClass::ControlBranch: return "ControlBranch";
    case InstructionClass::DataManipulation: return "DataManipulation";
  }
  return "?";
}

std::optional<Mnemonic> parse_mnemonic(std::string_view text) noexcept {
  std::string upper(text);
  for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (Mnemonic m : kAll)
    if (mnemonic_of(m) == upper) return m;
  return std::nullopt;
}

std::string format_instruction(const Instruction& instr) {
  std::string out(mnemonic_of(instr.kind));
  if (operand_kind(instr.kind) != OperandKind::None) {
    out += ' ';
    out += std::to_string(instr.operand);
  }
  return out;
}

const std::array<Mnemonic, kMnemonicCount>& all_mnemonics() noexcept { return kAll; }

}  // namespace acc8
