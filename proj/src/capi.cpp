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

#include "acc8/acc8.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <variant>

#include "acc8/error.hpp"
#include "acc8/toolchain.hpp"

struct acc8_image {
  acc8::MemoryImage image;
};

struct acc8_config {
  acc8::MemoryMapConfig config;
};

struct acc8_schedule {
  acc8::InputSchedule schedule;
};

struct acc8_machine {
  acc8::MemoryMapConfig config;
  std::variant<acc8::ArchState, acc8::rtl::RtlState> state;
  std::uint64_t instructions = 0;
  std::uint64_t ticks = 0;
  std::string trace;
};

namespace {

thread_local std::string g_message;
thread_local int g_line = 0;

acc8_status status_for(acc8::Errc code) {
  using acc8::Errc;
  switch (code) {
    case Errc::syntax: return ACC8_E_SYNTAX;
    case Errc::unknown_mnemonic: return ACC8_E_UNKNOWN_MNEMONIC;
    case Errc::duplicate_label: return ACC8_E_DUPLICATE_LABEL;
    case Errc::undefined_label: return ACC8_E_UNDEFINED_LABEL;
    case Errc::operand_range: return ACC8_E_OPERAND_RANGE;
    case Errc::image_overflow: return ACC8_E_IMAGE_OVERFLOW;
    case Errc::address_collision: return ACC8_E_ADDRESS_COLLISION;
    case Errc::malformed_token: return ACC8_E_MALFORMED_TOKEN;
    case Errc::address_range: return ACC8_E_ADDRESS_RANGE;
    case Errc::duplicate_address: return ACC8_E_DUPLICATE_ADDRESS;
    case Errc::rom_conflict: return ACC8_E_ROM_CONFLICT;
    case Errc::unmapped_address: return ACC8_E_UNMAPPED_ADDRESS;
    case Errc::bad_config: return ACC8_E_BAD_CONFIG;
    case Errc::halted: return ACC8_E_HALTED;
    case Errc::scan_length: return ACC8_E_SCAN_LENGTH;
    case Errc::schedule: return ACC8_E_SCHEDULE;
  }
  return ACC8_E_INTERNAL;
}

acc8_status fail(acc8_status status, std::string message, int line = 0) {
  g_message = std::move(message);
  g_line = line;
  return status;
}

template <typename F>
acc8_status guarded(F&& body) {
  g_message.clear();
  g_line = 0;
  try {
    return body();
  } catch (const acc8::Error& e) {
    return fail(status_for(e.code()), e.what(), e.line());
  } catch (const std::bad_alloc&) {
    return fail(ACC8_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(ACC8_E_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void copy_field(char* dst, std::size_t cap, const std::string& src) {
  std::strncpy(dst, src.c_str(), cap - 1);
  dst[cap - 1] = '\0';
}

}  // namespace

extern "C" {

const char* acc8_status_name(acc8_status status) {
  switch (status) {
    case ACC8_OK: return "ok";
    case ACC8_E_INVALID_ARGUMENT: return "invalid-argument";
    case ACC8_E_INTERNAL: return "internal";
    default:
      if (status > ACC8_OK && status < ACC8_E_INVALID_ARGUMENT)
        return acc8::to_string(static_cast<acc8::Errc>(status - 1)).data();
      return "unknown";
  }
}

const char* acc8_last_error_message(void) { return g_message.c_str(); }
int acc8_last_error_line(void) { return g_line; }
void acc8_string_free(char* text) { std::free(text); }

int acc8_mnemonic_count(void) { return static_cast<int>(acc8::kMnemonicCount); }

const char* acc8_mnemonic_name(int mnemonic) {
  if (mnemonic < 0 || mnemonic >= static_cast<int>(acc8::kMnemonicCount)) return nullptr;
  return acc8::mnemonic_of(static_cast<acc8::Mnemonic>(mnemonic)).data();
}

int acc8_mnemonic_from_name(const char* name) {
  if (!name) return -1;
  const auto m = acc8::parse_mnemonic(name);
  return m ? static_cast<int>(*m) : -1;
}

acc8_instruction acc8_decode(uint8_t byte) {
  const acc8::Instruction in = acc8::decode(byte);
  return acc8_instruction{static_cast<int>(in.kind), static_cast<int>(acc8::operand_kind(in.kind)), in.operand};
}

acc8_status acc8_encode(const acc8_instruction* instr, uint8_t* byte_out) {
  if (!instr || !byte_out) return fail(ACC8_E_INVALID_ARGUMENT, "null argument");
  if (instr->mnemonic < 0 || instr->mnemonic >= static_cast<int>(acc8::kMnemonicCount))
    return fail(ACC8_E_INVALID_ARGUMENT, "mnemonic index out of range");
  return guarded([&] {
    if (instr->operand > 0xFF) throw acc8::Error(acc8::Errc::operand_range, "operand does not fit any field");
    *byte_out = acc8::encode({static_cast<acc8::Mnemonic>(instr->mnemonic), static_cast<std::uint8_t>(instr->operand)});
    return ACC8_OK;
  });
}

acc8_image* acc8_image_create(void) { return new (std::nothrow) acc8_image{}; }
void acc8_image_destroy(acc8_image* image) { delete image; }

acc8_status acc8_image_set(acc8_image* image, unsigned addr, uint8_t value) {
  if (!image) return fail(ACC8_E_INVALID_ARGUMENT, "null image");
  return guarded([&] {
    image->image.set(addr, value);
    return ACC8_OK;
  });
}

int acc8_image_get(const acc8_image* image, unsigned addr) {
  if (!image) return -1;
  const auto byte = image->image.get(addr);
  return byte ? *byte : -1;
}

acc8_status acc8_assemble(const char* source, acc8_image** image_out) {
  if (!source || !image_out) return fail(ACC8_E_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *image_out = new acc8_image{acc8::assemble_source(source)};
    return ACC8_OK;
  });
}

acc8_status acc8_image_parse_hex(const char* text, acc8_image** image_out) {
  if (!text || !image_out) return fail(ACC8_E_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *image_out = new acc8_image{acc8::parse_hex(text)};
    return ACC8_OK;
  });
}

char* acc8_image_format_hex(const acc8_image* image) {
  return image ? dup_string(acc8::format_hex(image->image)) : nullptr;
}

char* acc8_disassemble(const acc8_image* image) {
  return image ? dup_string(acc8::disassemble(image->image)) : nullptr;
}

acc8_config* acc8_config_create_default(void) { return new (std::nothrow) acc8_config{}; }

acc8_status acc8_config_create(unsigned ram_size, const uint8_t* rom, size_t rom_len, acc8_config** config_out) {
  if (!config_out || (rom_len && !rom)) return fail(ACC8_E_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    acc8::MemoryMapConfig c = acc8::MemoryMapConfig::with_ram(ram_size, false);
    c.rom.assign(rom, rom + rom_len);
    c.validate();
    *config_out = new acc8_config{std::move(c)};
    return ACC8_OK;
  });
}

acc8_status acc8_config_create_segments(unsigned ram_size, acc8_config** config_out) {
  if (!config_out) return fail(ACC8_E_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    acc8::MemoryMapConfig c = acc8::MemoryMapConfig::with_ram(ram_size, true);
    c.validate();
    *config_out = new acc8_config{std::move(c)};
    return ACC8_OK;
  });
}

void acc8_config_destroy(acc8_config* config) { delete config; }

unsigned acc8_config_ram_size(const acc8_config* config) { return config ? config->config.ram_size : 0; }

size_t acc8_config_scan_length(const acc8_config* config) {
  return config ? acc8::rtl::scan_length(config->config) : 0;
}

acc8_schedule* acc8_schedule_create(void) { return new (std::nothrow) acc8_schedule{}; }

acc8_status acc8_schedule_parse(const char* text, acc8_schedule** schedule_out) {
  if (!text || !schedule_out) return fail(ACC8_E_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *schedule_out = new acc8_schedule{acc8::parse_schedule(text)};
    return ACC8_OK;
  });
}

void acc8_schedule_set(acc8_schedule* schedule, uint64_t step, int button) {
  if (schedule) schedule->schedule.set(step, button != 0);
}

void acc8_schedule_destroy(acc8_schedule* schedule) { delete schedule; }

acc8_status acc8_machine_create(acc8_model model, const acc8_config* config, const acc8_image* image,
                                acc8_machine** machine_out) {
  if (!config || !machine_out) return fail(ACC8_E_INVALID_ARGUMENT, "null argument");
  if (model != ACC8_MODEL_ARCH && model != ACC8_MODEL_RTL) return fail(ACC8_E_INVALID_ARGUMENT, "unknown model");
  return guarded([&] {
    const acc8::MemoryImage empty;
    const acc8::MemoryImage& img = image ? image->image : empty;
    auto m = std::make_unique<acc8_machine>();
    m->config = config->config;
    if (model == ACC8_MODEL_ARCH)
      m->state = acc8::reset(m->config, img);
    else
      m->state = acc8::rtl::reset(m->config, img);
    *machine_out = m.release();
    return ACC8_OK;
  });
}

void acc8_machine_destroy(acc8_machine* machine) { delete machine; }

acc8_status acc8_machine_run(acc8_machine* machine, const acc8_schedule* schedule, uint64_t limit,
                             int record_trace) {
  if (!machine) return fail(ACC8_E_INVALID_ARGUMENT, "null machine");
  return guarded([&] {
    const acc8::InputSchedule none;
    const acc8::InputSchedule& sched = schedule ? schedule->schedule : none;
    if (auto* arch = std::get_if<acc8::ArchState>(&machine->state)) {
      for (std::uint64_t n = 0; n < limit && !arch->halted; ++n) {
        const auto r = acc8::step(*arch, machine->config, sched.at(machine->instructions));
        if (record_trace)
          machine->trace += acc8::format_trace_record(acc8::to_trace_record(machine->instructions, r)) + "\n";
        ++machine->instructions;
      }
    } else {
      auto& rtl = std::get<acc8::rtl::RtlState>(machine->state);
      for (std::uint64_t n = 0; n < limit && !rtl.halted(); ++n) {
        const acc8::rtl::Phase before = rtl.phase;
        auto rec = acc8::rtl::tick(rtl, machine->config, sched.at(machine->instructions));
        rec.tick = machine->ticks++;
        if (before == acc8::rtl::Phase::Execute) ++machine->instructions;
        if (record_trace) machine->trace += acc8::format_tick_record(rec) + "\n";
      }
    }
    return ACC8_OK;
  });
}

acc8_status acc8_machine_state(const acc8_machine* machine, acc8_state_summary* out) {
  if (!machine || !out) return fail(ACC8_E_INVALID_ARGUMENT, "null argument");
  *out = acc8_state_summary{};
  out->instructions = machine->instructions;
  out->ticks = machine->ticks;
  if (const auto* arch = std::get_if<acc8::ArchState>(&machine->state)) {
    out->acc = arch->acc;
    out->pc = arch->pc;
    out->out_latch = arch->out_latch;
    out->halted = arch->halted;
    out->phase = -1;
  } else {
    const auto& rtl = std::get<acc8::rtl::RtlState>(machine->state);
    out->acc = rtl.acc;
    out->pc = rtl.pc;
    out->ir = rtl.ir;
    out->out_latch = rtl.out_latch;
    out->halted = rtl.halted();
    out->phase = static_cast<int>(rtl.phase);
  }
  return ACC8_OK;
}

acc8_status acc8_machine_read_ram(const acc8_machine* machine, uint8_t* buffer, size_t length) {
  if (!machine || (length && !buffer)) return fail(ACC8_E_INVALID_ARGUMENT, "null argument");
  const auto& ram = std::visit([](const auto& s) -> const std::vector<std::uint8_t>& { return s.ram; },
                               machine->state);
  if (length > ram.size()) return fail(ACC8_E_INVALID_ARGUMENT, "buffer longer than RAM");
  std::memcpy(buffer, ram.data(), length);
  return ACC8_OK;
}

char* acc8_machine_summary(const acc8_machine* machine) {
  if (!machine) return nullptr;
  if (const auto* arch = std::get_if<acc8::ArchState>(&machine->state)) return dup_string(acc8::format_summary(*arch));
  return dup_string(acc8::format_summary(acc8::rtl::project(std::get<acc8::rtl::RtlState>(machine->state))));
}

char* acc8_machine_trace(const acc8_machine* machine) { return machine ? dup_string(machine->trace) : nullptr; }

acc8_status acc8_machine_scan_export(const acc8_machine* machine, char** bits_out) {
  if (!machine || !bits_out) return fail(ACC8_E_INVALID_ARGUMENT, "null argument");
  const auto* rtl = std::get_if<acc8::rtl::RtlState>(&machine->state);
  if (!rtl) return fail(ACC8_E_INVALID_ARGUMENT, "scan chain needs the cycle-level model");
  *bits_out = dup_string(acc8::rtl::bits_to_string(acc8::rtl::scan_export(*rtl)));
  return *bits_out ? ACC8_OK : fail(ACC8_E_INTERNAL, "out of memory");
}

acc8_status acc8_machine_scan_import(acc8_machine* machine, const char* bits) {
  if (!machine || !bits) return fail(ACC8_E_INVALID_ARGUMENT, "null argument");
  auto* rtl = std::get_if<acc8::rtl::RtlState>(&machine->state);
  if (!rtl) return fail(ACC8_E_INVALID_ARGUMENT, "scan chain needs the cycle-level model");
  return guarded([&] {
    *rtl = acc8::rtl::scan_import(machine->config, acc8::rtl::bits_from_string(bits));
    return ACC8_OK;
  });
}

acc8_status acc8_machine_scan_shift(acc8_machine* machine, int scan_in, int* scan_out) {
  if (!machine) return fail(ACC8_E_INVALID_ARGUMENT, "null machine");
  auto* rtl = std::get_if<acc8::rtl::RtlState>(&machine->state);
  if (!rtl) return fail(ACC8_E_INVALID_ARGUMENT, "scan chain needs the cycle-level model");
  return guarded([&] {
    const bool out = acc8::rtl::scan_shift(*rtl, machine->config, scan_in != 0);
    if (scan_out) *scan_out = out;
    return ACC8_OK;
  });
}

void acc8_cosim_default_options(acc8_cosim_options* options) {
  if (!options) return;
  *options = acc8_cosim_options{};
  options->seed = 1;
  options->programs = 100;
  options->steps_per_program = acc8::kDefaultMaxSteps;
  options->threads = 0;
  options->fault_field = -1;
  options->fault_mask = 1;
  options->plus_modifier = 2;
  options->minus_modifier = -3;
}

int acc8_control_field_from_name(const char* name) {
  if (!name) return -1;
  const auto f = acc8::rtl::parse_control_field(name);
  return f ? static_cast<int>(*f) : -1;
}

const char* acc8_control_field_name(int field) {
  if (field < 0 || field >= static_cast<int>(acc8::rtl::kControlFieldCount)) return nullptr;
  return acc8::rtl::to_string(static_cast<acc8::rtl::ControlField>(field)).data();
}

acc8_status acc8_cosim_run(const acc8_config* config, const acc8_cosim_options* options,
                           acc8_cosim_report* report_out) {
  if (!config || !options || !report_out) return fail(ACC8_E_INVALID_ARGUMENT, "null argument");
  if (options->fault_field >= static_cast<int>(acc8::rtl::kControlFieldCount) || options->fault_field < -1)
    return fail(ACC8_E_INVALID_ARGUMENT, "unknown control field");
  return guarded([&] {
    acc8::CosimOptions opts;
    opts.seed = options->seed;
    opts.programs = options->programs;
    opts.steps_per_program = options->steps_per_program;
    opts.threads = options->threads;
    if (options->fault_field >= 0) opts.fault.field = static_cast<acc8::rtl::ControlField>(options->fault_field);
    opts.fault.mask = static_cast<std::uint8_t>(options->fault_mask);
    opts.fault.plus_modifier = options->plus_modifier;
    opts.fault.minus_modifier = options->minus_modifier;

    const acc8::CosimReport report = acc8::cosimulate(config->config, opts);
    *report_out = acc8_cosim_report{};
    report_out->programs = report.programs;
    report_out->instructions = report.instructions;
    report_out->halted_programs = report.halted_programs;
    report_out->passed = report.passed();
    if (const auto& d = report.first_divergence) {
      report_out->divergence_program = d->program;
      report_out->divergence_step = d->step;
      copy_field(report_out->divergence_field, sizeof report_out->divergence_field, d->field);
      copy_field(report_out->arch_value, sizeof report_out->arch_value, d->arch_value);
      copy_field(report_out->rtl_value, sizeof report_out->rtl_value, d->rtl_value);
    }
    return ACC8_OK;
  });
}

char* acc8_demo_program(unsigned digit) { return dup_string(acc8::demo_program(digit)); }

}  // extern "C"
