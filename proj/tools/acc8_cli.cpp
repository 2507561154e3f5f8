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

// Command-line front end. Uses only the C interface in acc8/acc8.h.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "acc8/acc8.h"

namespace {

struct CliError {
  std::string message;
};

template <typename T, void (*Destroy)(T*)>
struct Deleter {
  void operator()(T* p) const { Destroy(p); }
};

using Image = std::unique_ptr<acc8_image, Deleter<acc8_image, acc8_image_destroy>>;
using Config = std::unique_ptr<acc8_config, Deleter<acc8_config, acc8_config_destroy>>;
using Schedule = std::unique_ptr<acc8_schedule, Deleter<acc8_schedule, acc8_schedule_destroy>>;
using Machine = std::unique_ptr<acc8_machine, Deleter<acc8_machine, acc8_machine_destroy>>;
using Text = std::unique_ptr<char, Deleter<char, acc8_string_free>>;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{"cannot open '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw CliError{"cannot write '" + path + "'"};
}

void check(acc8_status status, const std::string& context) {
  if (status == ACC8_OK) return;
  throw CliError{context + ": " + acc8_last_error_message()};
}

std::string take(char* raw) {
  Text owned(raw);
  return owned ? std::string(owned.get()) : std::string();
}

Image load_image(const std::string& path) {
  acc8_image* raw = nullptr;
  check(acc8_image_parse_hex(read_file(path).c_str(), &raw), path);
  return Image(raw);
}

struct MapOptions {
  unsigned ram_size = 17;
  std::string rom = "";

  Config make() const {
    if (rom.empty()) {
      acc8_config* raw = nullptr;
      check(acc8_config_create_segments(ram_size, &raw), "memory map");
      return Config(raw);
    }
    std::vector<std::uint8_t> table;
    if (rom != "none") {
      Image image = load_image(rom);
      bool gap = false;
      for (unsigned addr = 0; addr < 32; ++addr) {
        const int byte = acc8_image_get(image.get(), addr);
        if (byte < 0) {
          gap = true;
        } else {
          if (gap) throw CliError{rom + ": constant table must be contiguous from address 0"};
          table.push_back(static_cast<std::uint8_t>(byte));
        }
      }
    }
    acc8_config* raw = nullptr;
    check(acc8_config_create(ram_size, table.data(), table.size(), &raw), "memory map");
    return Config(raw);
  }
};

void add_map_options(CLI::App* cmd, MapOptions& map) {
  cmd->add_option("--ram-size", map.ram_size, "RAM bytes, the last one is the I/O byte")
      ->default_val(17)
      ->check(CLI::Range(1, 32));
  cmd->add_option("--rom", map.rom, "constant table as a hex image file, or 'none' (default: segment table)");
}

int cmd_assemble(const std::string& source_path, const std::string& output) {
  acc8_image* raw = nullptr;
  const acc8_status status = acc8_assemble(read_file(source_path).c_str(), &raw);
  if (status != ACC8_OK) {
    std::cerr << source_path << ":" << acc8_last_error_message() << "\n";
    return 1;
  }
  Image image(raw);
  std::string hex = take(acc8_image_format_hex(image.get()));
  if (!hex.empty()) hex += "\n";
  write_file(output, hex);
  return 0;
}

int cmd_disassemble(const std::string& image_path) {
  Image image = load_image(image_path);
  std::cout << take(acc8_disassemble(image.get()));
  return 0;
}

struct RunOptions {
  std::string image;
  std::string mode = "arch";
  std::uint64_t max_steps = 4096;
  std::uint64_t max_ticks = 8192;
  std::string schedule;
  std::string trace;
};

int cmd_run(const RunOptions& opt, const MapOptions& map) {
  Config config = map.make();
  Image image = load_image(opt.image);
  Schedule schedule(acc8_schedule_create());
  if (!opt.schedule.empty()) {
    acc8_schedule* raw = nullptr;
    check(acc8_schedule_parse(read_file(opt.schedule).c_str(), &raw), opt.schedule);
    schedule.reset(raw);
  }
  const bool rtl = opt.mode == "rtl";
  acc8_machine* raw = nullptr;
  check(acc8_machine_create(rtl ? ACC8_MODEL_RTL : ACC8_MODEL_ARCH, config.get(), image.get(), &raw), opt.image);
  Machine machine(raw);
  check(acc8_machine_run(machine.get(), schedule.get(), rtl ? opt.max_ticks : opt.max_steps, !opt.trace.empty()),
        "run");

  std::cout << take(acc8_machine_summary(machine.get())) << "\n";
  acc8_state_summary s{};
  check(acc8_machine_state(machine.get(), &s), "state");
  if (rtl) std::cout << "ticks=" << s.ticks << " instructions=" << s.instructions << "\n";
  if (!opt.trace.empty()) write_file(opt.trace, take(acc8_machine_trace(machine.get())));
  return 0;
}

struct CosimCliOptions {
  std::uint64_t seed = 1;
  std::uint64_t count = 100;
  std::uint64_t max_steps = 4096;
  unsigned threads = 0;
  std::string fault;
  unsigned fault_mask = 1;
  int plus_modifier = 2;
  int minus_modifier = -3;
};

int cmd_cosim(const CosimCliOptions& opt, const MapOptions& map) {
  Config config = map.make();
  acc8_cosim_options o;
  acc8_cosim_default_options(&o);
  o.seed = opt.seed;
  o.programs = opt.count;
  o.steps_per_program = opt.max_steps;
  o.threads = opt.threads;
  o.fault_mask = opt.fault_mask;
  o.plus_modifier = opt.plus_modifier;
  o.minus_modifier = opt.minus_modifier;
  if (!opt.fault.empty()) {
    o.fault_field = acc8_control_field_from_name(opt.fault.c_str());
    if (o.fault_field < 0) throw CliError{"unknown control field '" + opt.fault + "'"};
  }
  acc8_cosim_report r{};
  check(acc8_cosim_run(config.get(), &o, &r), "cosim");
  std::cout << "programs=" << r.programs << " instructions=" << r.instructions << " halted=" << r.halted_programs
            << " result=" << (r.passed ? "PASS" : "FAIL") << "\n";
  if (!r.passed)
    std::cout << "first divergence: program=" << r.divergence_program << " step=" << r.divergence_step
              << " field=" << r.divergence_field << " arch=" << r.arch_value << " rtl=" << r.rtl_value << "\n";
  return r.passed ? 0 : 1;
}

struct ScanOptions {
  std::string image;
  bool dump = false;
  bool load = false;
  std::string stream;
  std::uint64_t ticks = 0;
};

int cmd_scan(const ScanOptions& opt, const MapOptions& map) {
  Config config = map.make();
  Image image = load_image(opt.image);
  acc8_machine* raw = nullptr;
  check(acc8_machine_create(ACC8_MODEL_RTL, config.get(), image.get(), &raw), opt.image);
  Machine machine(raw);
  if (opt.dump) {
    check(acc8_machine_run(machine.get(), nullptr, opt.ticks, 0), "run");
    char* bits = nullptr;
    check(acc8_machine_scan_export(machine.get(), &bits), "scan");
    write_file(opt.stream, take(bits) + "\n");
    return 0;
  }
  check(acc8_machine_scan_import(machine.get(), read_file(opt.stream).c_str()), opt.stream);
  std::cout << take(acc8_machine_summary(machine.get())) << "\n";
  acc8_state_summary s{};
  check(acc8_machine_state(machine.get(), &s), "state");
  std::vector<std::uint8_t> ram(acc8_config_ram_size(config.get()));
  check(acc8_machine_read_ram(machine.get(), ram.data(), ram.size()), "state");
  char ir[8];
  std::snprintf(ir, sizeof ir, "%02X", s.ir);
  std::cout << "ir=0x" << ir << " ram=";
  for (std::uint8_t b : ram) {
    char buf[4];
    std::snprintf(buf, sizeof buf, "%02X", b);
    std::cout << buf;
  }
  std::cout << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acc8: assembler, simulators and co-simulation for an 8-bit accumulator CPU"};
  app.require_subcommand(1);

  std::string asm_source, asm_output;
  auto* assemble = app.add_subcommand("assemble", "assemble a source file into a hex memory image");
  assemble->add_option("source", asm_source, "assembly source")->required();
  assemble->add_option("-o,--output", asm_output, "hex image to write (default: stdout)");

  std::string dis_image;
  auto* disassemble = app.add_subcommand("disassemble", "list a hex memory image");
  disassemble->add_option("image", dis_image, "hex image")->required();

  RunOptions run_opt;
  MapOptions run_map;
  auto* run = app.add_subcommand("run", "run an image on one of the simulators");
  run->add_option("image", run_opt.image, "hex image")->required();
  run->add_option("--mode", run_opt.mode, "arch or rtl")->check(CLI::IsMember({"arch", "rtl"}));
  run->add_option("--max-steps", run_opt.max_steps, "instruction limit in arch mode")->default_val(4096);
  run->add_option("--max-ticks", run_opt.max_ticks, "tick limit in rtl mode")->default_val(8192);
  run->add_option("--schedule", run_opt.schedule, "button schedule: lines of '<step> <bit>'");
  run->add_option("--trace", run_opt.trace, "write a trace, one line per instruction or tick");
  add_map_options(run, run_map);

  CosimCliOptions cosim_opt;
  MapOptions cosim_map;
  auto* cosim = app.add_subcommand("cosim", "differential co-simulation on random programs");
  cosim->add_option("--seed", cosim_opt.seed, "64-bit seed")->default_val(1);
  cosim->add_option("--count", cosim_opt.count, "number of programs")->default_val(100);
  cosim->add_option("--max-steps", cosim_opt.max_steps, "instructions per program")->default_val(4096);
  cosim->add_option("--threads", cosim_opt.threads, "worker threads (0: all cores)");
  cosim->add_option("--fault", cosim_opt.fault, "control field to corrupt in the cycle-level model");
  cosim->add_option("--fault-mask", cosim_opt.fault_mask, "bits XORed into the corrupted field")->default_val(1);
  cosim->add_option("--plus-modifier", cosim_opt.plus_modifier, "PC offset on forward branches")->default_val(2);
  cosim->add_option("--minus-modifier", cosim_opt.minus_modifier, "PC offset on backward branches")->default_val(-3);
  add_map_options(cosim, cosim_map);

  ScanOptions scan_opt;
  MapOptions scan_map;
  auto* scan = app.add_subcommand("scan", "dump or load machine state through the scan chain");
  scan->add_option("image", scan_opt.image, "hex image to reset from")->required();
  auto* dump_flag = scan->add_flag("--dump", scan_opt.dump, "write the chain contents to the stream file");
  auto* load_flag = scan->add_flag("--load", scan_opt.load, "shift the stream file in and print the state");
  dump_flag->excludes(load_flag);
  scan->add_option("--stream", scan_opt.stream, "'0'/'1' text, head bit first")->required();
  scan->add_option("--max-ticks", scan_opt.ticks, "ticks to run before dumping")->default_val(0);
  add_map_options(scan, scan_map);

  unsigned digit = 5;
  auto* demo = app.add_subcommand("demo", "print the bundled binary-to-seven-segment program");
  demo->add_option("--digit", digit, "digit stored in the program's data cell")->check(CLI::Range(0, 9));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*assemble) return cmd_assemble(asm_source, asm_output);
    if (*disassemble) return cmd_disassemble(dis_image);
    if (*run) return cmd_run(run_opt, run_map);
    if (*cosim) return cmd_cosim(cosim_opt, cosim_map);
    if (*scan) {
      if (!scan_opt.dump && !scan_opt.load) throw CliError{"scan needs --dump or --load"};
      return cmd_scan(scan_opt, scan_map);
    }
    if (*demo) {
      std::cout << take(acc8_demo_program(digit));
      return 0;
    }
  } catch (const CliError& e) {
    std::cerr << "acc8: " << e.message << "\n";
    return 1;
  }
  return 0;
}
