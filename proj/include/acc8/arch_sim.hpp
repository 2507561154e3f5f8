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
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "acc8/assembler.hpp"
#include "acc8/isa.hpp"

namespace acc8 {

// Seven-segment patterns for digits 0..9, active high, bit order gfedcba.
inline constexpr std::array<std::uint8_t, 10> kSegmentDigits = {
    0x3F, 0x06, 0x5B, 0x4F, 0x66, 0x6D, 0x7D, 0x07, 0x7F, 0x6F,
};

// Address map of the 32-byte space:
//   [0, ram_size)                    RAM, with io_addr inside it
//   [ram_size, ram_size + rom.size)  constant table
//   the rest                         unmapped, reads 0, writes ignored
struct MemoryMapConfig {
  unsigned ram_size = 17;
  unsigned io_addr = 16;
  std::vector<std::uint8_t> rom{kSegmentDigits.begin(), kSegmentDigits.end()};

  // RAM of `ram_size` bytes, I/O on its last byte, optional constant table.
  static MemoryMapConfig with_ram(unsigned ram_size, bool with_rom = true);

  // Throws Errc::bad_config.
  void validate() const;

  unsigned rom_base() const noexcept { return ram_size; }
  bool is_rom(unsigned addr) const noexcept { return addr >= ram_size && addr < ram_size + rom.size(); }

  friend bool operator==(const MemoryMapConfig&, const MemoryMapConfig&) = default;
};

struct IoInputs {
  bool button = false;
};

// Button levels per instruction index; unlisted steps read 0.
class InputSchedule {
 public:
  InputSchedule() = default;
  explicit InputSchedule(std::map<std::uint64_t, bool> levels) : levels_(std::move(levels)) {}

  void set(std::uint64_t step, bool button) { levels_[step] = button; }
  IoInputs at(std::uint64_t step) const {
    const auto it = levels_.find(step);
    return IoInputs{it != levels_.end() && it->second};
  }
  const std::map<std::uint64_t, bool>& levels() const noexcept { return levels_; }

 private:
  std::map<std::uint64_t, bool> levels_;
};

struct ArchState {
  std::uint8_t acc = 0;
  std::uint8_t pc = 0;
  bool halted = false;
  std::vector<std::uint8_t> ram;
  std::uint8_t out_latch = 0;

  friend bool operator==(const ArchState&, const ArchState&) = default;
};

struct MemoryWrite {
  std::uint8_t addr = 0;
  std::uint8_t value = 0;
  friend bool operator==(const MemoryWrite&, const MemoryWrite&) = default;
};

struct StepResult {
  Instruction executed;
  std::uint8_t raw = 0;
  std::uint8_t pc_before = 0;
  std::uint8_t pc_after = 0;
  std::uint8_t acc_before = 0;
  std::uint8_t acc_after = 0;
  std::optional<MemoryWrite> memory_write;
  bool halted_now = false;
};

enum class StopReason { Halted, StepLimit };

struct RunResult {
  ArchState state;
  std::vector<StepResult> trace;
  std::uint64_t steps = 0;
  StopReason stop = StopReason::StepLimit;
};

// Throws Errc::rom_conflict when the image disagrees with the constant
// table and Errc::unmapped_address for bytes outside RAM and ROM.
ArchState reset(const MemoryMapConfig& config, const MemoryImage& image);

std::uint8_t mem_read(const ArchState& state, const MemoryMapConfig& config, IoInputs inputs, std::uint8_t addr);
void mem_write(ArchState& state, const MemoryMapConfig& config, std::uint8_t addr, std::uint8_t value);

// b is ignored by the single-operand ops. Kinds outside the ALU set return a.
std::uint8_t alu_eval(Mnemonic op, std::uint8_t a, std::uint8_t b) noexcept;

// Executes one instruction in place. Throws Errc::halted on a halted state.
StepResult step(ArchState& state, const MemoryMapConfig& config, IoInputs inputs);

RunResult run(ArchState state, const MemoryMapConfig& config, const InputSchedule& schedule,
              std::uint64_t max_steps, bool keep_trace = true);

}  // namespace acc8
