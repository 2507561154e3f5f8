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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "acc8/arch_sim.hpp"

namespace acc8::rtl {

enum class Phase : std::uint8_t { Fetch, Execute, Halt };

std::string_view to_string(Phase p) noexcept;

// Multiplexer encodings of the datapath.
enum class PcSource : std::uint8_t { Increment = 0b00, Acc = 0b01, Minus3 = 0b10, Plus2 = 0b11 };
enum class AccSource : std::uint8_t { Alu = 0b00, Memory = 0b01, Pc = 0b10 };
enum class AluInputB : std::uint8_t { Memory = 0, Immediate = 1 };
enum class AddressSource : std::uint8_t { IrAddress = 0b00, Acc = 0b01, Pc = 0b10 };

// 4-bit ALU opcode.
enum class AluOp : std::uint8_t {
  Add = 0b0000, Sub = 0b0001, And = 0b0010, Or = 0b0011, Xor = 0b0100,
  Shl = 0b0101, Shr = 0b0110, Shl4 = 0b0111, Rol = 0b1000, Ror = 0b1001,
  Dec = 0b1010, Clr = 0b1011, Inv = 0b1100,
};

// Datapath ALU, keyed by opcode. Opcodes 1101..1111 pass a through.
std::uint8_t alu(std::uint8_t opcode, std::uint8_t a, std::uint8_t b) noexcept;

// Fields are raw bit values so that injected faults can take any value the
// wires can carry.
struct ControlSignals {
  std::uint8_t pc_write_enable = 0;            // 1 bit
  std::uint8_t pc_mux_select = 0;              // 2 bits, PcSource
  std::uint8_t acc_write_enable = 0;           // 1 bit
  std::uint8_t acc_mux_select = 0;             // 2 bits, AccSource
  std::uint8_t ir_load_enable = 0;             // 1 bit
  std::uint8_t alu_opcode = 0;                 // 4 bits, AluOp
  std::uint8_t alu_inputB_mux_select = 0;      // 1 bit, AluInputB
  std::uint8_t memory_write_enable = 0;        // 1 bit
  std::uint8_t memory_address_mux_select = 0;  // 2 bits, AddressSource

  friend bool operator==(const ControlSignals&, const ControlSignals&) = default;
};

enum class ControlField : std::uint8_t {
  PcWriteEnable,
  PcMuxSelect,
  AccWriteEnable,
  AccMuxSelect,
  IrLoadEnable,
  AluOpcode,
  AluInputBMuxSelect,
  MemoryWriteEnable,
  MemoryAddressMuxSelect,
};

inline constexpr std::size_t kControlFieldCount = 9;

std::string_view to_string(ControlField f) noexcept;
std::optional<ControlField> parse_control_field(std::string_view name) noexcept;
unsigned field_width(ControlField f) noexcept;
std::uint8_t& field_ref(ControlSignals& s, ControlField f) noexcept;

// "1.00.0.00.1.0000.0.0.10", fields in declaration order.
std::string format_signals(const ControlSignals& s);

// Fault hooks for mutation testing. The defaults describe the correct machine.
struct FaultInjection {
  std::optional<ControlField> field;  // XORed with `mask` on every non-HALT tick
  std::uint8_t mask = 1;
  int plus_modifier = 2;    // PC mux input 11
  int minus_modifier = -3;  // PC mux input 10

  bool active() const noexcept { return field || plus_modifier != 2 || minus_modifier != -3; }
};

// The control unit. A pure function of the phase, the instruction register
// and the branch condition input (ACC == 0); a not-taken branch clears
// pc_write_enable.
ControlSignals control_signals(Phase phase, std::uint8_t ir, bool acc_is_zero) noexcept;

struct RtlState {
  std::uint8_t acc = 0;
  std::uint8_t pc = 0;
  std::uint8_t ir = 0;
  Phase phase = Phase::Fetch;
  std::vector<std::uint8_t> ram;
  std::uint8_t out_latch = 0;

  bool halted() const noexcept { return phase == Phase::Halt; }
  bool at_boundary() const noexcept { return phase != Phase::Execute; }

  friend bool operator==(const RtlState&, const RtlState&) = default;
};

RtlState reset(const MemoryMapConfig& config, const MemoryImage& image);

// Architectural view of an RTL state; meaningful at instruction boundaries.
ArchState project(const RtlState& state);

struct TickRecord {
  std::uint64_t tick = 0;
  Phase phase = Phase::Fetch;
  std::uint8_t pc_before = 0;
  std::uint8_t ir_before = 0;
  std::uint8_t acc_before = 0;
  ControlSignals signals;
  std::uint8_t pc_after = 0;
  std::uint8_t ir_after = 0;
  std::uint8_t acc_after = 0;
  std::optional<MemoryWrite> memory_write;
  Phase phase_after = Phase::Fetch;
};

TickRecord tick(RtlState& state, const MemoryMapConfig& config, IoInputs inputs,
                const FaultInjection& fault = {});

struct RtlRunResult {
  RtlState state;
  std::vector<TickRecord> trace;
  std::uint64_t ticks = 0;
  std::uint64_t instructions = 0;  // completed instructions, HLT included
};

// Ticks until HALT or max_ticks. The schedule is indexed by instruction, so
// both ticks of an instruction see the same button level.
RtlRunResult run_cycles(RtlState state, const MemoryMapConfig& config, const InputSchedule& schedule,
                        std::uint64_t max_ticks, bool keep_trace = true, const FaultInjection& fault = {});

// Scan chain, head bit first: PC[4..0], ACC[7..0], IR[7..0], then each RAM
// byte MSB first. ROM and the phase register are not on the chain.
std::size_t scan_length(const MemoryMapConfig& config) noexcept;
std::vector<bool> scan_export(const RtlState& state);

// Throws Errc::scan_length. The result is in FETCH; the output latch is the
// I/O register, so it takes the value of the I/O RAM byte.
RtlState scan_import(const MemoryMapConfig& config, const std::vector<bool>& bits);

// One scan clock: the head bit leaves on scan_out, scan_in enters the tail.
// The phase and the output latch are off the chain and keep their values.
bool scan_shift(RtlState& state, const MemoryMapConfig& config, bool scan_in);

std::string bits_to_string(const std::vector<bool>& bits);
// Accepts '0'/'1' and ignores whitespace; throws Errc::malformed_token.
std::vector<bool> bits_from_string(std::string_view text);

// Pin-level wrapper for an 8-in/8-out budget.
//   in:  [0] reset, [1] scan_enable, [2] scan_in, [3] button, [4..7] unused
//   out: [0..6] segments a..g, [7] processor_halted
// Reset clears the registers and returns to FETCH; RAM keeps its contents.
// A scan clock leaves the machine in FETCH with the latch showing the I/O
// byte, as after scan_import.
class TopLevel {
 public:
  TopLevel(MemoryMapConfig config, RtlState state);

  void clock(std::uint8_t ui_in);
  std::uint8_t outputs() const noexcept;
  bool scan_out() const noexcept { return scan_out_; }
  const RtlState& state() const noexcept { return state_; }

 private:
  MemoryMapConfig config_;
  RtlState state_;
  bool scan_out_ = false;
};

}  // namespace acc8::rtl
