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

#include "acc8/rtl_sim.hpp"

#include <array>
#include <cctype>

#include "acc8/error.hpp"

namespace acc8::rtl {

std::string_view to_string(Phase p) noexcept {
  switch (p) {
    case Phase::Fetch: return "FETCH";
    case Phase::Execute: return "EXECUTE";
    case Phase::Halt: return "HALT";
  }
  return "?";
}

std::uint8_t alu(std::uint8_t opcode, std::uint8_t a, std::uint8_t b) noexcept {
  const unsigned x = a;
  unsigned y = x;
  switch (static_cast<AluOp>(opcode & 0x0F)) {
    case AluOp::Add: y = x + b; break;
    case AluOp::Sub: y = x + (~static_cast<unsigned>(b) & 0xFF) + 1; break;
    case AluOp::And: y = x & b; break;
    case AluOp::Or: y = x | b; break;
    case AluOp::Xor: y = x ^ b; break;
    case AluOp::Shl: y = x << 1; break;
    case AluOp::Shr: y = x >> 1; break;
    case AluOp::Shl4: y = x << 4; break;
    case AluOp::Rol: y = (x << 1) | ((x >> 7) & 1); break;
    case AluOp::Ror: y = (x >> 1) | ((x & 1) << 7); break;
    case AluOp::Dec: y = x + 0xFF; break;
    case AluOp::Clr: y = 0; break;
    case AluOp::Inv: y = x ^ 0xFF; break;
  }
  return static_cast<std::uint8_t>(y & 0xFF);
}

namespace {

constexpr std::array<std::string_view, kControlFieldCount> kFieldNames = {
    "pc_write_enable",     "pc_mux_select",         "acc_write_enable",
    "acc_mux_select",      "ir_load_enable",        "alu_opcode",
    "alu_inputB_mux_select", "memory_write_enable", "memory_address_mux_select",
};

constexpr std::array<unsigned, kControlFieldCount> kFieldWidths = {1, 2, 1, 2, 1, 4, 1, 1, 2};

std::uint8_t bits(auto e) { return static_cast<std::uint8_t>(e); }

std::optional<AluOp> alu_op_for(Mnemonic m) {
  switch (m) {
    case Mnemonic::ADD: case Mnemonic::ADDI: return AluOp::Add;
    case Mnemonic::SUB: return AluOp::Sub;
    case Mnemonic::AND: return AluOp::And;
    case Mnemonic::OR: return AluOp::Or;
    case Mnemonic::XOR: return AluOp::Xor;
    case Mnemonic::SHL: return AluOp::Shl;
    case Mnemonic::SHR: return AluOp::Shr;
    case Mnemonic::SHL4: return AluOp::Shl4;
    case Mnemonic::ROL: return AluOp::Rol;
    case Mnemonic::ROR: return AluOp::Ror;
    case Mnemonic::DEC: return AluOp::Dec;
    case Mnemonic::CLR: return AluOp::Clr;
    case Mnemonic::INV: return AluOp::Inv;
    default: return std::nullopt;
  }
}

Phase next_phase(Phase phase, std::uint8_t ir) noexcept {
  switch (phase) {
    case Phase::Fetch: return Phase::Execute;
    case Phase::Execute: return decode(ir).kind == Mnemonic::HLT ? Phase::Halt : Phase::Fetch;
    case Phase::Halt: return Phase::Halt;
  }
  return Phase::Halt;
}

// Memory bank as seen from the datapath: RAM with the I/O register, the
// constant table behind it, zeros elsewhere.
std::uint8_t bank_read(const RtlState& s, const MemoryMapConfig& c, bool button, std::uint8_t addr) {
  if (addr == c.io_addr) return button ? 0x01 : 0x00;
  if (addr < c.ram_size) return s.ram[addr];
  if (addr < c.ram_size + c.rom.size()) return c.rom[addr - c.ram_size];
  return 0x00;
}

}  // namespace

std::string_view to_string(ControlField f) noexcept { return kFieldNames[static_cast<std::size_t>(f)]; }

std::optional<ControlField> parse_control_field(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kFieldNames.size(); ++i)
    if (kFieldNames[i] == name) return static_cast<ControlField>(i);
  return std::nullopt;
}

unsigned field_width(ControlField f) noexcept { return kFieldWidths[static_cast<std::size_t>(f)]; }

std::uint8_t& field_ref(ControlSignals& s, ControlField f) noexcept {
  switch (f) {
    case ControlField::PcWriteEnable: return s.pc_write_enable;
    case ControlField::PcMuxSelect: return s.pc_mux_select;
    case ControlField::AccWriteEnable: return s.acc_write_enable;
    case ControlField::AccMuxSelect: return s.acc_mux_select;
    case ControlField::IrLoadEnable: return s.ir_load_enable;
    case ControlField::AluOpcode: return s.alu_opcode;
    case ControlField::AluInputBMuxSelect: return s.alu_inputB_mux_select;
    case ControlField::MemoryWriteEnable: return s.memory_write_enable;
    case ControlField::MemoryAddressMuxSelect: return s.memory_address_mux_select;
  }
  return s.pc_write_enable;
}

std::string format_signals(const ControlSignals& s) {
  ControlSignals copy = s;
  std::string out;
  for (std::size_t i = 0; i < kControlFieldCount; ++i) {
    const auto f = static_cast<ControlField>(i);
    const unsigned width = field_width(f);
    const unsigned value = field_ref(copy, f);
    if (i) out += '.';
    for (unsigned b = width; b-- > 0;) out += ((value >> b) & 1) ? '1' : '0';
  }
  return out;
}

ControlSignals control_signals(Phase phase, std::uint8_t ir, bool acc_is_zero) noexcept {
  ControlSignals s;
  if (phase == Phase::Halt) return s;
  if (phase == Phase::Fetch) {
    s.ir_load_enable = 1;
    s.memory_address_mux_select = bits(AddressSource::Pc);
    s.pc_write_enable = 1;
    s.pc_mux_select = bits(PcSource::Increment);
    return s;
  }

  const Instruction in = decode(ir);
  const auto write_acc = [&](AccSource src) {
    s.acc_write_enable = 1;
    s.acc_mux_select = bits(src);
  };
  const auto branch = [&](bool taken, PcSource src) {
    s.pc_write_enable = taken ? 1 : 0;
    s.pc_mux_select = bits(src);
  };

  switch (in.kind) {
    case Mnemonic::LDA:
      write_acc(AccSource::Memory);
      break;
    case Mnemonic::STA:
      s.memory_write_enable = 1;
      break;
    case Mnemonic::ADDI:
      s.alu_inputB_mux_select = bits(AluInputB::Immediate);
      [[fallthrough]];
    case Mnemonic::ADD: case Mnemonic::SUB: case Mnemonic::AND: case Mnemonic::OR: case Mnemonic::XOR:
      write_acc(AccSource::Alu);
      s.alu_opcode = bits(*alu_op_for(in.kind));
      break;
    case Mnemonic::JMP:
      branch(true, PcSource::Acc);
      break;
    case Mnemonic::JSR:
      branch(true, PcSource::Acc);
      write_acc(AccSource::Pc);
      break;
    case Mnemonic::BEQ_FWD: branch(acc_is_zero, PcSource::Plus2); break;
    case Mnemonic::BEQ_BWD: branch(acc_is_zero, PcSource::Minus3); break;
    case Mnemonic::BNE_FWD: branch(!acc_is_zero, PcSource::Plus2); break;
    case Mnemonic::BNE_BWD: branch(!acc_is_zero, PcSource::Minus3); break;
    case Mnemonic::HLT:
      break;
    case Mnemonic::LDAR:
      write_acc(AccSource::Memory);
      s.memory_address_mux_select = bits(AddressSource::Acc);
      break;
    default:
      write_acc(AccSource::Alu);
      s.alu_opcode = bits(*alu_op_for(in.kind));
      break;
  }
  return s;
}

RtlState reset(const MemoryMapConfig& config, const MemoryImage& image) {
  const ArchState arch = acc8::reset(config, image);
  RtlState s;
  s.ram = arch.ram;
  return s;
}

ArchState project(const RtlState& state) {
  ArchState a;
  a.acc = state.acc;
  a.pc = state.pc;
  a.halted = state.halted();
  a.ram = state.ram;
  a.out_latch = state.out_latch;
  return a;
}

TickRecord tick(RtlState& state, const MemoryMapConfig& config, IoInputs inputs, const FaultInjection& fault) {
  TickRecord rec;
  rec.phase = state.phase;
  rec.pc_before = state.pc;
  rec.ir_before = state.ir;
  rec.acc_before = state.acc;

  if (state.phase != Phase::Halt) {
    ControlSignals sig = control_signals(state.phase, state.ir, state.acc == 0);
    if (fault.field) {
      const unsigned width_mask = (1u << field_width(*fault.field)) - 1;
      field_ref(sig, *fault.field) ^= static_cast<std::uint8_t>(fault.mask & width_mask);
    }
    rec.signals = sig;

    std::uint8_t addr = 0;
    switch (sig.memory_address_mux_select & 0b11) {
      case 0b00: addr = state.ir & kAddressMask; break;
      case 0b01: addr = state.acc & kAddressMask; break;
      case 0b10: addr = state.pc; break;
      default: addr = 0; break;
    }
    const std::uint8_t mem_data = bank_read(state, config, inputs.button, addr);
    const std::uint8_t alu_b = (sig.alu_inputB_mux_select & 1) ? (state.ir & kImmediateMask) : mem_data;
    const std::uint8_t alu_out = alu(sig.alu_opcode, state.acc, alu_b);

    std::uint8_t pc_next = 0;
    switch (sig.pc_mux_select & 0b11) {
      case 0b00: pc_next = static_cast<std::uint8_t>((state.pc + 1) & kAddressMask); break;
      case 0b01: pc_next = state.acc & kAddressMask; break;
      case 0b10: pc_next = static_cast<std::uint8_t>((state.pc + fault.minus_modifier) & kAddressMask); break;
      case 0b11: pc_next = static_cast<std::uint8_t>((state.pc + fault.plus_modifier) & kAddressMask); break;
    }
    std::uint8_t acc_next = 0;
    switch (sig.acc_mux_select & 0b11) {
      case 0b00: acc_next = alu_out; break;
      case 0b01: acc_next = mem_data; break;
      case 0b10: acc_next = state.pc; break;
      default: acc_next = 0; break;
    }

    const Phase phase_next = next_phase(state.phase, state.ir);
    if ((sig.memory_write_enable & 1) && addr < config.ram_size) {
      state.ram[addr] = state.acc;
      if (addr == config.io_addr) state.out_latch = state.acc;
      rec.memory_write = MemoryWrite{addr, state.acc};
    }
    if (sig.ir_load_enable & 1) state.ir = mem_data;
    if (sig.pc_write_enable & 1) state.pc = pc_next;
    if (sig.acc_write_enable & 1) state.acc = acc_next;
    state.phase = phase_next;
  }

  rec.pc_after = state.pc;
  rec.ir_after = state.ir;
  rec.acc_after = state.acc;
  rec.phase_after = state.phase;
  return rec;
}

RtlRunResult run_cycles(RtlState state, const MemoryMapConfig& config, const InputSchedule& schedule,
                        std::uint64_t max_ticks, bool keep_trace, const FaultInjection& fault) {
  RtlRunResult result;
  while (!state.halted() && result.ticks < max_ticks) {
    const Phase before = state.phase;
    TickRecord rec = tick(state, config, schedule.at(result.instructions), fault);
    rec.tick = result.ticks++;
    if (before == Phase::Execute) ++result.instructions;
    if (keep_trace) result.trace.push_back(rec);
  }
  result.state = std::move(state);
  return result;
}

std::size_t scan_length(const MemoryMapConfig& config) noexcept { return 21 + 8 * config.ram_size; }

namespace {

void push_bits(std::vector<bool>& out, unsigned value, unsigned width) {
  for (unsigned b = width; b-- > 0;) out.push_back((value >> b) & 1);
}

std::uint8_t pull_bits(const std::vector<bool>& in, std::size_t& pos, unsigned width) {
  unsigned v = 0;
  for (unsigned b = 0; b < width; ++b) v = (v << 1) | (in[pos++] ? 1u : 0u);
  return static_cast<std::uint8_t>(v);
}

}  // namespace

std::vector<bool> scan_export(const RtlState& state) {
  std::vector<bool> out;
  out.reserve(21 + 8 * state.ram.size());
  push_bits(out, state.pc, 5);
  push_bits(out, state.acc, 8);
  push_bits(out, state.ir, 8);
  for (std::uint8_t byte : state.ram) push_bits(out, byte, 8);
  return out;
}

RtlState scan_import(const MemoryMapConfig& config, const std::vector<bool>& bits) {
  const std::size_t expected = scan_length(config);
  if (bits.size() != expected)
    throw Error(Errc::scan_length, "scan stream has " + std::to_string(bits.size()) + " bits, expected " +
                                       std::to_string(expected));
  RtlState s;
  std::size_t pos = 0;
  s.pc = pull_bits(bits, pos, 5);
  s.acc = pull_bits(bits, pos, 8);
  s.ir = pull_bits(bits, pos, 8);
  s.ram.resize(config.ram_size);
  for (auto& byte : s.ram) byte = pull_bits(bits, pos, 8);
  s.out_latch = s.ram[config.io_addr];
  s.phase = Phase::Fetch;
  return s;
}

bool scan_shift(RtlState& state, const MemoryMapConfig& config, bool scan_in) {
  std::vector<bool> chain = scan_export(state);
  const bool out = chain.front();
  chain.erase(chain.begin());
  chain.push_back(scan_in);
  const Phase phase = state.phase;
  const std::uint8_t latch = state.out_latch;
  state = scan_import(config, chain);
  state.phase = phase;
  state.out_latch = latch;
  return out;
}

std::string bits_to_string(const std::vector<bool>& bits) {
  std::string s;
  s.reserve(bits.size());
  for (bool b : bits) s += b ? '1' : '0';
  return s;
}

std::vector<bool> bits_from_string(std::string_view text) {
  std::vector<bool> bits;
  for (char c : text) {
    if (c == '0' || c == '1')
      bits.push_back(c == '1');
    else if (!std::isspace(static_cast<unsigned char>(c)))
      throw Error(Errc::malformed_token, std::string("scan stream contains '") + c + "'");
  }
  return bits;
}

TopLevel::TopLevel(MemoryMapConfig config, RtlState state) : config_(std::move(config)), state_(std::move(state)) {
  config_.validate();
}

void TopLevel::clock(std::uint8_t ui_in) {
  const bool rst = ui_in & 0x01;
  const bool scan_enable = ui_in & 0x02;
  const bool scan_in = ui_in & 0x04;
  const bool button = ui_in & 0x08;
  if (rst) {
    state_.acc = 0;
    state_.pc = 0;
    state_.ir = 0;
    state_.out_latch = 0;
    state_.phase = Phase::Fetch;
  } else if (scan_enable) {
    scan_out_ = scan_shift(state_, config_, scan_in);
    state_.phase = Phase::Fetch;
    state_.out_latch = state_.ram[config_.io_addr];
  } else {
    tick(state_, config_, IoInputs{button});
  }
}

std::uint8_t TopLevel::outputs() const noexcept {
  return static_cast<std::uint8_t>((state_.out_latch & 0x7F) | (state_.halted() ? 0x80 : 0x00));
}

}  // namespace acc8::rtl
