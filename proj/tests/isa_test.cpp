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

#include <set>

#include "acc8/error.hpp"
#include "acc8/isa.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace acc8;

TEST_CASE("decode agrees with the bit-pattern table on all 256 bytes") {
  for (unsigned b = 0; b < 256; ++b) {
    const auto byte = static_cast<std::uint8_t>(b);
    const oracle::Decoded expect = oracle::decode(byte);
    REQUIRE(expect.matches == 1);
    const Instruction got = decode(byte);
    CHECK(mnemonic_of(got) == expect.mnemonic);
    CHECK(got.operand == expect.operand);
  }
}

TEST_CASE("decode examples") {
  CHECK(decode(0x00) == Instruction::memory(Mnemonic::LDA, 0));
  CHECK(decode(0xFF) == Instruction::plain(Mnemonic::HLT));
  CHECK(decode(0xE5) == Instruction::immediate(5));
  CHECK(decode(0x35) == Instruction::memory(Mnemonic::STA, 21));
}

TEST_CASE("encode examples") {
  CHECK(encode(Instruction::plain(Mnemonic::LDAR)) == 0xFB);
  CHECK(encode(Instruction::immediate(0)) == 0xE0);
  CHECK(encode(Instruction::memory(Mnemonic::XOR, 31)) == 0xDF);
}

TEST_CASE("encode rejects operands outside their field") {
  CHECK_THROWS_AS(encode(Instruction::memory(Mnemonic::LDA, 32)), Error);
  CHECK_THROWS_AS(encode(Instruction::immediate(16)), Error);
  CHECK_THROWS_AS(encode(Instruction{Mnemonic::HLT, 1}), Error);
  try {
    encode(Instruction::immediate(16));
  } catch (const Error& e) {
    CHECK(e.code() == Errc::operand_range);
  }
}

TEST_CASE("round trip and operand masking over every byte") {
  for (unsigned b = 0; b < 256; ++b) {
    const auto byte = static_cast<std::uint8_t>(b);
    const Instruction in = decode(byte);
    CHECK(encode(in) == byte);
    if (operand_kind(in.kind) == OperandKind::MemAddr) CHECK(in.operand == b % 32);
    if (in.kind == Mnemonic::ADDI) CHECK(in.operand == b % 16);
  }
}

TEST_CASE("encodings partition as 7x32 + 16 + 16") {
  unsigned memory = 0, immediate = 0, fixed = 0;
  std::set<Mnemonic> fixed_kinds;
  for (unsigned b = 0; b < 256; ++b) {
    const Instruction in = decode(static_cast<std::uint8_t>(b));
    switch (operand_kind(in.kind)) {
      case OperandKind::MemAddr: ++memory; break;
      case OperandKind::Immediate: ++immediate; break;
      case OperandKind::None: ++fixed; fixed_kinds.insert(in.kind); break;
    }
  }
  CHECK(memory == 7 * 32);
  CHECK(immediate == 16);
  CHECK(fixed == 16);
  CHECK(fixed_kinds.size() == 16);
}

TEST_CASE("instruction classes") {
  CHECK(class_of(Mnemonic::HLT) == InstructionClass::ControlBranch);
  CHECK(class_of(Mnemonic::ADDI) == InstructionClass::Immediate);
  CHECK(class_of(Mnemonic::ROL) == InstructionClass::DataManipulation);
  CHECK(class_of(Mnemonic::LDAR) == InstructionClass::DataManipulation);
  CHECK(class_of(Mnemonic::XOR) == InstructionClass::VariableData);
  CHECK(class_of(Mnemonic::BNE_BWD) == InstructionClass::ControlBranch);

  std::array<int, 4> counts{};
  for (Mnemonic m : all_mnemonics()) ++counts[static_cast<std::size_t>(class_of(m))];
  CHECK(counts == std::array<int, 4>{1, 7, 7, 9});
}

TEST_CASE("mnemonic names") {
  CHECK(mnemonic_of(Mnemonic::SHL4) == "SHL4");
  CHECK(mnemonic_of(Mnemonic::BEQ_FWD) == "BEQ_FWD");
  CHECK(mnemonic_of(Instruction::memory(Mnemonic::LDA, 3)) == "LDA");
  for (Mnemonic m : all_mnemonics()) CHECK(parse_mnemonic(mnemonic_of(m)) == m);
  CHECK(parse_mnemonic("beq_fwd") == Mnemonic::BEQ_FWD);
  CHECK_FALSE(parse_mnemonic("NOP").has_value());
  CHECK(format_instruction(decode(0x55)) == "ADD 21");
  CHECK(format_instruction(decode(0xFD)) == "CLR");
}
