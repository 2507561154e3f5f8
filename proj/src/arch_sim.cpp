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

#include "acc8/arch_sim.hpp"

#include "acc8/error.hpp"

namespace acc8 {

MemoryMapConfig MemoryMapConfig::with_ram(unsigned ram_size, bool with_rom) {
  MemoryMapConfig config;
  config.ram_size = ram_size;
  config.io_addr = ram_size == 0 ? 0 : ram_size - 1;
  if (!with_rom) config.rom.clear();
  return config;
}

void MemoryMapConfig::validate() const {
  if (ram_size < 1) throw Error(Errc::bad_config, "ram_size must be at least 1");
  if (ram_size + rom.size() > kAddressSpace)
    throw Error(Errc::bad_config, "ram_size " + std::to_string(ram_size) + " plus " +
                                      std::to_string(rom.size()) + " ROM bytes exceeds 32");
  if (io_addr >= ram_size)
    throw Error(Errc::bad_config, "io_addr " + std::to_string(io_addr) + " must lie inside RAM");
}

ArchState reset(const MemoryMapConfig& config, const MemoryImage& image) {
  config.validate();
  ArchState state;
  state.ram.assign(config.ram_size, 0);
  for (unsigned addr = 0; addr < kAddressSpace; ++addr) {
    const auto byte = image.get(addr);
    if (!byte) continue;
    if (addr < config.ram_size) {
      state.ram[addr] = *byte;
    } else if (config.is_rom(addr)) {
      if (config.rom[addr - config.rom_base()] != *byte)
        throw Error(Errc::rom_conflict, "image byte at " + std::to_string(addr) +
                                            " differs from the constant table");
    } else {
      throw Error(Errc::unmapped_address, "image byte at " + std::to_string(addr) +
                                              " is outside RAM and ROM");
    }
  }
  return state;
}

std::uint8_t mem_read(const ArchState& state, const MemoryMapConfig& config, IoInputs inputs,
                      std::uint8_t addr) {
  addr &= kAddressMask;
  if (addr == config.io_addr) return inputs.button ? 1 : 0;
  if (addr < config.ram_size) return state.ram[addr];
  if (config.is_rom(addr)) return config.rom[addr - config.rom_base()];
  return 0;
}

void mem_write(ArchState& state, const MemoryMapConfig& config, std::uint8_t addr, std::uint8_t value) {
  addr &= kAddressMask;
  if (addr >= config.ram_size) return;
  state.ram[addr] = value;
  if (addr == config.io_addr) state.out_latch = value;
}

std::uint8_t alu_eval(Mnemonic op, std::uint8_t a, std::uint8_t b) noexcept {
  const unsigned x = a;
  switch (op) {
    case Mnemonic::ADD:
    case Mnemonic::ADDI: return static_cast<std::uint8_t>(x + b);
    case Mnemonic::SUB: return static_cast<std::uint8_t>(x - b);
    case Mnemonic::AND: return static_cast<std::uint8_t>(x & b);
    case Mnemonic::OR: return static_cast<std::uint8_t>(x | b);
    case Mnemonic::XOR: return static_cast<std::uint8_t>(x ^ b);
    case Mnemonic::SHL: return static_cast<std::uint8_t>(x << 1);
    case Mnemonic::SHR: return static_cast<std::uint8_t>(x >> 1);
    case Mnemonic::SHL4: return static_cast<std::uint8_t>(x << 4);
    case Mnemonic::ROL: return static_cast<std::uint8_t>((x << 1) | (x >> 7));
    case Mnemonic::ROR: return static_cast<std::uint8_t>((x >> 1) | (x << 7));
    case Mnemonic::DEC: return static_cast<std::uint8_t>(x - 1);
    case Mnemonic::CLR: return 0;
    case Mnemonic::INV: return static_cast<std::uint8_t>(~x);
    default: return a;
  }
}

StepResult step(ArchState& state, const MemoryMapConfig& config, IoInputs inputs) {
  if (state.halted) throw Error(Errc::halted, "cannot step a halted machine; reset first");

  StepResult r;
  const std::uint8_t p = state.pc;
  r.pc_before = p;
  r.acc_before = state.acc;
  r.raw = mem_read(state, config, inputs, p);
  r.executed = decode(r.raw);

  const auto wrap = [](int v) { return static_cast<std::uint8_t>(v & kAddressMask); };
  std::uint8_t next_pc = wrap(p + 1);
  std::uint8_t acc = state.acc;
  const Instruction& in = r.executed;

  switch (in.kind) {
    case Mnemonic::LDA:
      acc = mem_read(state, config, inputs, in.operand);
      break;
    case Mnemonic::STA:
      mem_write(state, config, in.operand, acc);
      if (in.operand < config.ram_size) r.memory_write = MemoryWrite{in.operand, acc};
      break;
    case Mnemonic::ADD: case Mnemonic::SUB: case Mnemonic::AND: case Mnemonic::OR: case Mnemonic::XOR:
      acc = alu_eval(in.kind, acc, mem_read(state, config, inputs, in.operand));
      break;
    case Mnemonic::ADDI:
      acc = alu_eval(Mnemonic::ADD, acc, in.operand);
      break;
    case Mnemonic::JMP:
      next_pc = wrap(acc);
      break;
    case Mnemonic::JSR:
      next_pc = wrap(acc);
      acc = wrap(p + 1);
      break;
    case Mnemonic::BEQ_FWD:
      if (acc == 0) next_pc = wrap(p + 3);
      break;
    case Mnemonic::BEQ_BWD:
      if (acc == 0) next_pc = wrap(p - 2);
      break;
    case Mnemonic::BNE_FWD:
      if (acc != 0) next_pc = wrap(p + 3);
      break;
    case Mnemonic::BNE_BWD:
      if (acc != 0) next_pc = wrap(p - 2);
      break;
    case Mnemonic::HLT:
      state.halted = true;
      break;
    case Mnemonic::LDAR:
      acc = mem_read(state, config, inputs, wrap(acc));
      break;
    default:
      acc = alu_eval(in.kind, acc, 0);
      break;
  }

  state.acc = acc;
  state.pc = next_pc;
  r.acc_after = acc;
  r.pc_after = next_pc;
  r.halted_now = state.halted;
  return r;
}

RunResult run(ArchState state, const MemoryMapConfig& config, const InputSchedule& schedule,
              std::uint64_t max_steps, bool keep_trace) {
  RunResult result;
  while (!state.halted && result.steps < max_steps) {
    StepResult r = step(state, config, schedule.at(result.steps));
    ++result.steps;
    if (keep_trace) result.trace.push_back(r);
  }
  result.stop = state.halted ? StopReason::Halted : StopReason::StepLimit;
  result.state = std::move(state);
  return result;
}

}  // namespace acc8
