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
#include "acc8/assembler.hpp"
#include "acc8/rtl_sim.hpp"

namespace acc8 {

inline constexpr std::uint64_t kDefaultMaxSteps = 4096;
inline constexpr std::uint64_t kDefaultMaxTicks = 8192;

// ---- traces --------------------------------------------------------------

// One executed instruction. Serialized as
//   <step> pc=PP byte=BB op=MNEMONIC[:operand] acc=AA>AA wr=-|AA:VV halted=0|1
struct TraceRecord {
  std::uint64_t step = 0;
  std::uint8_t pc_before = 0;
  std::uint8_t raw = 0;
  std::string mnemonic;  // "ADD:21", "HLT"
  std::uint8_t acc_before = 0;
  std::uint8_t acc_after = 0;
  std::optional<MemoryWrite> memory_write;
  bool halted = false;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

TraceRecord to_trace_record(std::uint64_t step, const StepResult& r);
std::string format_trace_record(const TraceRecord& rec);
// Throws Errc::syntax.
TraceRecord parse_trace_record(std::string_view line);

std::string format_tick_record(const rtl::TickRecord& rec);

// ---- input schedules -----------------------------------------------------

// Lines of "<step-index> <button-bit>"; '#' starts a comment. Throws
// Errc::schedule with the offending line.
InputSchedule parse_schedule(std::string_view text);

// ---- co-simulation -------------------------------------------------------

// 32-byte-space image with every RAM byte drawn uniformly from the seed.
MemoryImage random_image(const MemoryMapConfig& config, std::uint64_t seed, std::uint64_t index);
// One uniform button level per instruction.
InputSchedule random_schedule(std::uint64_t seed, std::uint64_t index, std::uint64_t steps);

struct Divergence {
  std::uint64_t program = 0;
  std::uint64_t step = 0;  // instructions completed when the mismatch was seen
  std::string field;
  std::string arch_value;
  std::string rtl_value;
};

struct CosimOptions {
  std::uint64_t seed = 1;
  std::uint64_t programs = 100;
  std::uint64_t steps_per_program = kDefaultMaxSteps;
  unsigned threads = 0;  // 0: hardware concurrency
  rtl::FaultInjection fault;
};

struct CosimReport {
  std::uint64_t programs = 0;
  std::uint64_t instructions = 0;
  std::uint64_t halted_programs = 0;
  std::optional<Divergence> first_divergence;

  bool passed() const noexcept { return !first_divergence.has_value(); }
};

struct LockstepResult {
  std::uint64_t instructions = 0;
  std::uint64_t ticks = 0;
  bool halted = false;
  std::optional<Divergence> divergence;
};

// Runs both models on one image, comparing (acc, pc, ram, out_latch,
// halted) and the two-tick timing after every instruction.
LockstepResult lockstep(const MemoryMapConfig& config, const MemoryImage& image, const InputSchedule& schedule,
                        std::uint64_t max_steps, const rtl::FaultInjection& fault = {});

// Programs are spread over worker threads; the report keeps the divergence
// with the lowest program index.
CosimReport cosimulate(const MemoryMapConfig& config, const CosimOptions& options);

std::string format_report(const CosimReport& report);

// ---- bundled programs ----------------------------------------------------

// Binary to seven-segment: reads the digit cell, adds the table base with
// ADDI, dereferences with LDAR and writes the pattern to the I/O byte.
std::string demo_program(unsigned digit = 5);

struct BundledProgram {
  std::string name;
  std::string source;
  InputSchedule schedule;
};

// Directed programs that together execute every instruction.
std::vector<BundledProgram> bundled_programs();

std::string format_summary(const ArchState& state);

}  // namespace acc8
