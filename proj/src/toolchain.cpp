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

#include "acc8/toolchain.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdio>
#include <random>
#include <sstream>
#include <thread>

#include "acc8/error.hpp"

namespace acc8 {

namespace {

std::string hex2(unsigned v) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "%02X", v & 0xFF);
  return buf;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<unsigned> parse_hex_field(std::string_view s) {
  if (s.empty() || s.size() > 2) return std::nullopt;
  unsigned v = 0;
  for (char c : s) {
    if (!std::isxdigit(static_cast<unsigned char>(c))) return std::nullopt;
    v = v * 16 + static_cast<unsigned>(std::isdigit(static_cast<unsigned char>(c)) ? c - '0' : std::tolower(c) - 'a' + 10);
  }
  return v;
}

std::optional<std::uint64_t> parse_u64(std::string_view s) {
  if (s.empty() || s.size() > 19) return std::nullopt;
  std::uint64_t v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    v = v * 10 + static_cast<unsigned>(c - '0');
  }
  return v;
}

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t index, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), stream};
  return std::mt19937_64(seq);
}

}  // namespace

// ---- traces --------------------------------------------------------------

TraceRecord to_trace_record(std::uint64_t step, const StepResult& r) {
  TraceRecord rec;
  rec.step = step;
  rec.pc_before = r.pc_before;
  rec.raw = r.raw;
  rec.mnemonic = std::string(mnemonic_of(r.executed));
  if (operand_kind(r.executed.kind) != OperandKind::None) rec.mnemonic += ":" + std::to_string(r.executed.operand);
  rec.acc_before = r.acc_before;
  rec.acc_after = r.acc_after;
  rec.memory_write = r.memory_write;
  rec.halted = r.halted_now;
  return rec;
}

std::string format_trace_record(const TraceRecord& rec) {
  std::string out = std::to_string(rec.step);
  out += " pc=" + hex2(rec.pc_before);
  out += " byte=" + hex2(rec.raw);
  out += " op=" + rec.mnemonic;
  out += " acc=" + hex2(rec.acc_before) + ">" + hex2(rec.acc_after);
  out += " wr=";
  out += rec.memory_write ? hex2(rec.memory_write->addr) + ":" + hex2(rec.memory_write->value) : "-";
  out += rec.halted ? " halted=1" : " halted=0";
  return out;
}

TraceRecord parse_trace_record(std::string_view line) {
  const auto fail = [&](const char* what) -> Error {
    return Error(Errc::syntax, std::string("trace record: ") + what + " in '" + std::string(line) + "'");
  };
  std::istringstream in{std::string(trim(line))};
  std::string step, pc, byte, op, acc, wr, halted, extra;
  if (!(in >> step >> pc >> byte >> op >> acc >> wr >> halted) || (in >> extra)) throw fail("wrong field count");

  const auto value_of = [&](const std::string& tok, std::string_view key) -> std::string_view {
    if (tok.compare(0, key.size(), key) != 0) throw fail("field out of order");
    return std::string_view(tok).substr(key.size());
  };

  TraceRecord rec;
  const auto s = parse_u64(step);
  if (!s) throw fail("bad step index");
  rec.step = *s;
  const auto pcv = parse_hex_field(value_of(pc, "pc="));
  const auto bv = parse_hex_field(value_of(byte, "byte="));
  if (!pcv || !bv) throw fail("bad hex field");
  rec.pc_before = static_cast<std::uint8_t>(*pcv);
  rec.raw = static_cast<std::uint8_t>(*bv);
  rec.mnemonic = std::string(value_of(op, "op="));

  const std::string_view accs = value_of(acc, "acc=");
  const auto sep = accs.find('>');
  if (sep == std::string_view::npos) throw fail("bad acc field");
  const auto a0 = parse_hex_field(accs.substr(0, sep));
  const auto a1 = parse_hex_field(accs.substr(sep + 1));
  if (!a0 || !a1) throw fail("bad acc field");
  rec.acc_before = static_cast<std::uint8_t>(*a0);
  rec.acc_after = static_cast<std::uint8_t>(*a1);

  const std::string_view wrs = value_of(wr, "wr=");
  if (wrs != "-") {
    const auto colon = wrs.find(':');
    if (colon == std::string_view::npos) throw fail("bad write field");
    const auto wa = parse_hex_field(wrs.substr(0, colon));
    const auto wv = parse_hex_field(wrs.substr(colon + 1));
    if (!wa || !wv) throw fail("bad write field");
    rec.memory_write = MemoryWrite{static_cast<std::uint8_t>(*wa), static_cast<std::uint8_t>(*wv)};
  }
  const std::string_view hs = value_of(halted, "halted=");
  if (hs != "0" && hs != "1") throw fail("bad halted field");
  rec.halted = hs == "1";
  return rec;
}

std::string format_tick_record(const rtl::TickRecord& rec) {
  std::string out = std::to_string(rec.tick);
  out += " phase=" + std::string(rtl::to_string(rec.phase));
  out += " pc=" + hex2(rec.pc_before) + ">" + hex2(rec.pc_after);
  out += " ir=" + hex2(rec.ir_before) + ">" + hex2(rec.ir_after);
  out += " acc=" + hex2(rec.acc_before) + ">" + hex2(rec.acc_after);
  out += " ctl=" + rtl::format_signals(rec.signals);
  out += " wr=";
  out += rec.memory_write ? hex2(rec.memory_write->addr) + ":" + hex2(rec.memory_write->value) : "-";
  out += " next=" + std::string(rtl::to_string(rec.phase_after));
  return out;
}

// ---- input schedules -----------------------------------------------------

InputSchedule parse_schedule(std::string_view text) {
  InputSchedule schedule;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view body = raw;
    if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    body = trim(body);
    if (body.empty()) continue;
    std::istringstream fields{std::string(body)};
    std::string step, level, extra;
    if (!(fields >> step >> level) || (fields >> extra))
      throw Error(Errc::schedule, "expected '<step-index> <button-bit>'", line);
    const auto s = parse_u64(step);
    if (!s) throw Error(Errc::schedule, "bad step index '" + step + "'", line);
    if (level != "0" && level != "1") throw Error(Errc::schedule, "button bit must be 0 or 1", line);
    schedule.set(*s, level == "1");
  }
  return schedule;
}

// ---- co-simulation -------------------------------------------------------

MemoryImage random_image(const MemoryMapConfig& config, std::uint64_t seed, std::uint64_t index) {
  auto rng = make_rng(seed, index, 0);
  MemoryImage image;
  for (unsigned addr = 0; addr < config.ram_size; ++addr) image.set(addr, static_cast<std::uint8_t>(rng() & 0xFF));
  return image;
}

InputSchedule random_schedule(std::uint64_t seed, std::uint64_t index, std::uint64_t steps) {
  auto rng = make_rng(seed, index, 1);
  InputSchedule schedule;
  std::uint64_t word = 0;
  for (std::uint64_t i = 0; i < steps; ++i) {
    if (i % 64 == 0) word = rng();
    if ((word >> (i % 64)) & 1) schedule.set(i, true);
  }
  return schedule;
}

namespace {

std::optional<Divergence> compare(const ArchState& a, const rtl::RtlState& r, std::uint64_t step) {
  const auto diff = [&](std::string field, std::string av, std::string rv) {
    return Divergence{0, step, std::move(field), std::move(av), std::move(rv)};
  };
  if (a.halted != r.halted()) return diff("halted", a.halted ? "1" : "0", r.halted() ? "1" : "0");
  if (a.pc != r.pc) return diff("pc", hex2(a.pc), hex2(r.pc));
  if (a.acc != r.acc) return diff("acc", hex2(a.acc), hex2(r.acc));
  if (a.out_latch != r.out_latch) return diff("out_latch", hex2(a.out_latch), hex2(r.out_latch));
  for (std::size_t i = 0; i < a.ram.size(); ++i)
    if (a.ram[i] != r.ram[i]) return diff("ram[" + std::to_string(i) + "]", hex2(a.ram[i]), hex2(r.ram[i]));
  return std::nullopt;
}

}  // namespace

LockstepResult lockstep(const MemoryMapConfig& config, const MemoryImage& image, const InputSchedule& schedule,
                        std::uint64_t max_steps, const rtl::FaultInjection& fault) {
  LockstepResult result;
  ArchState arch = reset(config, image);
  rtl::RtlState rtl_state = rtl::reset(config, image);
  if ((result.divergence = compare(arch, rtl_state, 0))) return result;

  while (!arch.halted && result.instructions < max_steps) {
    const IoInputs inputs = schedule.at(result.instructions);
    step(arch, config, inputs);
    unsigned ticks = 0;
    do {
      rtl::tick(rtl_state, config, inputs, fault);
      ++ticks;
    } while (rtl_state.phase == rtl::Phase::Execute && ticks < 4);
    ++result.instructions;
    result.ticks += ticks;
    if (ticks != 2) {
      result.divergence = Divergence{0, result.instructions, "ticks", "2", std::to_string(ticks)};
      return result;
    }
    if ((result.divergence = compare(arch, rtl_state, result.instructions))) return result;
  }
  result.halted = arch.halted;
  return result;
}

CosimReport cosimulate(const MemoryMapConfig& config, const CosimOptions& options) {
  config.validate();
  std::vector<LockstepResult> results(options.programs);
  std::atomic<std::uint64_t> next{0};

  const auto worker = [&] {
    for (std::uint64_t i = next++; i < options.programs; i = next++) {
      const MemoryImage image = random_image(config, options.seed, i);
      const InputSchedule schedule = random_schedule(options.seed, i, options.steps_per_program);
      results[i] = lockstep(config, image, schedule, options.steps_per_program, options.fault);
      if (results[i].divergence) results[i].divergence->program = i;
    }
  };

  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(options.programs, 1)));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }

  CosimReport report;
  report.programs = options.programs;
  for (const auto& r : results) {
    report.instructions += r.instructions;
    report.halted_programs += r.halted;
    if (r.divergence && !report.first_divergence) report.first_divergence = r.divergence;
  }
  return report;
}

std::string format_report(const CosimReport& report) {
  std::string out = "programs=" + std::to_string(report.programs) +
                    " instructions=" + std::to_string(report.instructions) +
                    " halted=" + std::to_string(report.halted_programs) +
                    " result=" + (report.passed() ? "PASS" : "FAIL") + "\n";
  if (const auto& d = report.first_divergence) {
    out += "first divergence: program=" + std::to_string(d->program) + " step=" + std::to_string(d->step) +
           " field=" + d->field + " arch=" + d->arch_value + " rtl=" + d->rtl_value + "\n";
  }
  return out;
}

// ---- bundled programs ----------------------------------------------------

std::string demo_program(unsigned digit) {
  std::string src =
      "; binary to seven-segment\n"
      "; the constant table holds the digit patterns at 17..26\n"
      "        LDA digit      ; value 0..9\n"
      "        ADDI 15        ; + table base (17) in two steps\n"
      "        ADDI 2\n"
      "        LDAR           ; pattern = M[17 + digit]\n"
      "        STA 16         ; I/O byte drives the segments\n"
      "        HLT\n"
      "digit:  .byte ";
  src += std::to_string(digit);
  src += "\n";
  return src;
}

std::vector<BundledProgram> bundled_programs() {
  std::vector<BundledProgram> programs;
  programs.push_back({"demo", demo_program(5), {}});

  programs.push_back({"alu",
                      "; every ALU operation once, result left in ACC\n"
                      "        LDA a\n"
                      "        ADD b\n"
                      "        SUB b\n"
                      "        AND a\n"
                      "        OR b\n"
                      "        XOR a\n"
                      "        ADDI 7\n"
                      "        SHL\n"
                      "        SHR\n"
                      "        SHL4\n"
                      "        ROL\n"
                      "        ROR\n"
                      "        INV\n"
                      "        HLT\n"
                      "a:      .byte 0x5A\n"
                      "b:      .byte 0x33\n",
                      {}});

  programs.push_back({"branches",
                      "; countdown, then each branch in both directions\n"
                      "        LDA n\n"
                      "loop:   DEC\n"
                      "        STA n\n"
                      "        BNE_BWD        ; back to loop while ACC != 0\n"
                      "        BEQ_FWD        ; ACC == 0: skip to test\n"
                      "        HLT\n"
                      "again:  ADDI 1\n"
                      "test:   BNE_FWD        ; second pass: ACC == 1, go to done\n"
                      "        BEQ_BWD        ; first pass: back to again\n"
                      "        HLT\n"
                      "done:   STA 16\n"
                      "        HLT\n"
                      "n:      .byte 3\n",
                      {}});

  programs.push_back({"subroutine",
                      "; JSR leaves the return address in ACC; the callee saves it\n"
                      "        LDA ptr\n"
                      "        JSR\n"
                      "        LDA val\n"
                      "        STA 16\n"
                      "        HLT\n"
                      "sub:    STA ret\n"
                      "        CLR\n"
                      "        ADDI 9\n"
                      "        STA val\n"
                      "        LDA ret\n"
                      "        JMP\n"
                      "ptr:    .byte sub\n"
                      "ret:    .byte 0\n"
                      "val:    .byte 0\n",
                      {}});

  programs.push_back({"poll",
                      "; wait for the button, then show digit 1\n"
                      "wait:   LDA 16\n"
                      "        AND one\n"
                      "        BEQ_BWD        ; released: poll again\n"
                      "        ADDI 15\n"
                      "        ADDI 2\n"
                      "        LDAR\n"
                      "        STA 16\n"
                      "        HLT\n"
                      "one:    .byte 1\n",
                      InputSchedule({{9, true}})});
  return programs;
}

std::string format_summary(const ArchState& state) {
  return std::string("halted=") + (state.halted ? "true" : "false") + " pc=" + std::to_string(state.pc) +
         " acc=" + std::to_string(state.acc) + " out_latch=0x" + hex2(state.out_latch);
}

}  // namespace acc8
