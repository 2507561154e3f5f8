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

#include <random>

#include "acc8/arch_sim.hpp"
#include "acc8/error.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace acc8;

namespace {

const MemoryMapConfig kDefault{};

ArchState state_with(std::initializer_list<std::pair<unsigned, std::uint8_t>> cells, std::uint8_t acc = 0,
                     std::uint8_t pc = 0, const MemoryMapConfig& config = kDefault) {
  MemoryImage image;
  for (auto [a, v] : cells) image.set(a, v);
  ArchState s = reset(config, image);
  s.acc = acc;
  s.pc = pc;
  return s;
}

std::uint8_t byte_of(Mnemonic m) { return encode(Instruction::plain(m)); }

// 32 bytes of RAM with the I/O byte at 0, so every other cell can hold code.
MemoryMapConfig flat_map() {
  MemoryMapConfig c = MemoryMapConfig::with_ram(32, false);
  c.io_addr = 0;
  return c;
}

}  // namespace

TEST_CASE("default constant table matches the drawn digits") {
  for (unsigned d = 0; d < 10; ++d) {
    CAPTURE(d);
    CHECK(kSegmentDigits[d] == oracle::segments(d));
  }
  CHECK(MemoryMapConfig{}.rom.size() == 10);
}

TEST_CASE("memory map configuration is validated") {
  CHECK_NOTHROW(MemoryMapConfig{}.validate());
  CHECK_NOTHROW(MemoryMapConfig::with_ram(22).validate());
  CHECK_THROWS_AS(MemoryMapConfig::with_ram(23).validate(), Error);
  CHECK_NOTHROW(MemoryMapConfig::with_ram(32, false).validate());
  CHECK_THROWS_AS(MemoryMapConfig::with_ram(0).validate(), Error);
  MemoryMapConfig c;
  c.io_addr = 17;
  CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("reset") {
  const ArchState zero = reset(kDefault, MemoryImage{});
  CHECK(zero.acc == 0);
  CHECK(zero.pc == 0);
  CHECK_FALSE(zero.halted);
  CHECK(zero.out_latch == 0);
  CHECK(zero.ram == std::vector<std::uint8_t>(17, 0));

  CHECK(state_with({{0, 0xFF}}).ram[0] == 0xFF);

  MemoryImage conflict;
  conflict.set(17, 0x00);
  try {
    reset(kDefault, conflict);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::rom_conflict);
  }

  MemoryImage matching;
  matching.set(17, 0x3F);
  CHECK_NOTHROW(reset(kDefault, matching));

  MemoryImage unmapped;
  unmapped.set(27, 0x00);
  CHECK_THROWS_AS(reset(kDefault, unmapped), Error);
}

TEST_CASE("mem_read over the address map") {
  const ArchState s = state_with({{3, 0x42}, {16, 0xAA}});
  CHECK(mem_read(s, kDefault, {true}, 16) == 0x01);
  CHECK(mem_read(s, kDefault, {false}, 16) == 0x00);
  CHECK(mem_read(s, kDefault, {}, 17) == 0x3F);
  CHECK(mem_read(s, kDefault, {}, 26) == 0x6F);
  CHECK(mem_read(s, kDefault, {}, 31) == 0x00);
  CHECK(mem_read(s, kDefault, {}, 3) == 0x42);
}

TEST_CASE("mem_write over the address map") {
  ArchState s = state_with({});
  mem_write(s, kDefault, 3, 0x7E);
  CHECK(s.ram[3] == 0x7E);

  mem_write(s, kDefault, 16, 0x6D);
  CHECK(s.out_latch == oracle::segments(5));
  CHECK(mem_read(s, kDefault, {false}, 16) == 0x00);

  const ArchState before = s;
  mem_write(s, kDefault, 20, 0xAA);
  CHECK(s == before);
  mem_write(s, kDefault, 30, 0xAA);
  CHECK(s == before);
}

TEST_CASE("alu_eval against modular arithmetic") {
  CHECK(alu_eval(Mnemonic::ADD, 250, 10) == 4);
  CHECK(alu_eval(Mnemonic::INV, 0x0F, 0) == 0xF0);
  CHECK(alu_eval(Mnemonic::SHL4, 0x1B, 0) == 0xB0);
  CHECK(alu_eval(Mnemonic::ROR, 0x01, 0) == 0x80);
  CHECK(alu_eval(Mnemonic::DEC, 0, 0) == 255);
  CHECK(alu_eval(Mnemonic::CLR, 0x77, 0) == 0);

  for (int a = 0; a < 256; ++a) {
    for (int b = 0; b < 256; b += 7) {
      const auto ua = static_cast<std::uint8_t>(a);
      const auto ub = static_cast<std::uint8_t>(b);
      CHECK(alu_eval(Mnemonic::ADD, ua, ub) == (a + b) % 256);
      CHECK(alu_eval(Mnemonic::SUB, ua, ub) == (a - b + 256) % 256);
      CHECK(alu_eval(Mnemonic::AND, ua, ub) == (a & b));
      CHECK(alu_eval(Mnemonic::OR, ua, ub) == (a | b));
      CHECK(alu_eval(Mnemonic::XOR, ua, ub) == (a ^ b));
    }
    const auto ua = static_cast<std::uint8_t>(a);
    CHECK(alu_eval(Mnemonic::SHL, ua, 0xFF) == (a * 2) % 256);
    CHECK(alu_eval(Mnemonic::SHR, ua, 0xFF) == a / 2);
    CHECK(alu_eval(Mnemonic::SHL4, ua, 0xFF) == (a * 16) % 256);
    CHECK(alu_eval(Mnemonic::ROL, ua, 0xFF) == ((a * 2) % 256 + a / 128));
    CHECK(alu_eval(Mnemonic::ROR, ua, 0xFF) == (a / 2 + (a % 2) * 128));
    CHECK(alu_eval(Mnemonic::DEC, ua, 0xFF) == (a + 255) % 256);
    CHECK(alu_eval(Mnemonic::INV, ua, 0xFF) == 255 - a);
  }
}

TEST_CASE("step examples") {
  SUBCASE("BEQ_FWD taken") {
    ArchState s = state_with({{5, byte_of(Mnemonic::BEQ_FWD)}}, 0, 5);
    step(s, kDefault, {});
    CHECK(s.pc == 8);
  }
  SUBCASE("BEQ_BWD taken") {
    ArchState s = state_with({{5, byte_of(Mnemonic::BEQ_BWD)}}, 0, 5);
    step(s, kDefault, {});
    CHECK(s.pc == 3);
  }
  SUBCASE("JSR swaps PC and ACC") {
    ArchState s = state_with({{4, byte_of(Mnemonic::JSR)}}, 0x10, 4);
    const StepResult r = step(s, kDefault, {});
    CHECK(s.pc == 16);
    CHECK(s.acc == 5);
    CHECK(r.pc_before == 4);
    CHECK(r.pc_after == 16);
  }
  SUBCASE("LDAR reads the constant table") {
    ArchState s = state_with({{0, byte_of(Mnemonic::LDAR)}}, 19, 0);
    step(s, kDefault, {});
    CHECK(s.acc == 0x5B);
    CHECK(s.acc == oracle::segments(2));
    ArchState t = state_with({{0, byte_of(Mnemonic::LDAR)}}, 0xF2, 0);
    step(t, kDefault, {});
    CHECK(t.acc == oracle::segments(1));
  }
  SUBCASE("PC wraps") {
    const MemoryMapConfig big = flat_map();
    ArchState s = state_with({{31, byte_of(Mnemonic::CLR)}}, 9, 31, big);
    step(s, big, {});
    CHECK(s.pc == 0);
    CHECK(s.acc == 0);
  }
  SUBCASE("JMP truncates ACC to five bits") {
    ArchState s = state_with({{0, byte_of(Mnemonic::JMP)}}, 0xE7, 0);
    step(s, kDefault, {});
    CHECK(s.pc == 7);
  }
  SUBCASE("ADDI zero-extends") {
    ArchState s = state_with({{0, 0xEF}}, 0xF0, 0);
    step(s, kDefault, {});
    CHECK(s.acc == 0xFF);
  }
  SUBCASE("STA records the write") {
    ArchState s = state_with({{0, 0x30}}, 0x99, 0);
    const StepResult r = step(s, kDefault, {});
    REQUIRE(r.memory_write.has_value());
    CHECK(r.memory_write->addr == 16);
    CHECK(s.out_latch == 0x99);
  }
  SUBCASE("HLT sets the flag and leaves PC past it") {
    ArchState s = state_with({{2, 0xFF}}, 3, 2);
    const StepResult r = step(s, kDefault, {});
    CHECK(s.halted);
    CHECK(r.halted_now);
    CHECK(s.pc == 3);
    CHECK_THROWS_AS(step(s, kDefault, {}), Error);
  }
  SUBCASE("fetch from the I/O byte sees the button") {
    ArchState s = state_with({}, 0, 16);
    const StepResult r = step(s, kDefault, {true});
    CHECK(r.raw == 0x01);
    CHECK(r.executed == Instruction::memory(Mnemonic::LDA, 1));
  }
}

TEST_CASE("run") {
  SUBCASE("HLT") {
    const RunResult r = run(state_with({{0, 0xFF}}), kDefault, {}, 100);
    CHECK(r.stop == StopReason::Halted);
    CHECK(r.steps == 1);
    CHECK(r.state.pc == 1);
  }
  SUBCASE("CLR, BEQ_BWD loops through the unmapped top of memory") {
    // 0 CLR; 1 BEQ_BWD -> 31; 31 reads 0x00 = LDA 0 -> ACC = 0xFD; wraps to 0.
    const RunResult r = run(state_with({{0, 0xFD}, {1, 0xF3}}), kDefault, {}, 300);
    CHECK(r.stop == StopReason::StepLimit);
    CHECK(r.steps == 300);
    REQUIRE(r.trace.size() == 300);
    for (std::size_t i = 0; i < r.trace.size(); ++i) {
      static constexpr std::uint8_t kLoop[] = {0, 1, 31};
      CHECK(r.trace[i].pc_before == kLoop[i % 3]);
    }
    CHECK(r.trace[2].acc_after == 0xFD);
  }
  SUBCASE("zero steps leaves the state alone") {
    const ArchState s = state_with({});
    const RunResult r = run(s, kDefault, {}, 0);
    CHECK(r.state == s);
    CHECK(r.steps == 0);
  }
  SUBCASE("the schedule drives the button per step") {
    // LDA 16 twice.
    InputSchedule sched;
    sched.set(1, true);
    const RunResult r = run(state_with({{0, 0x10}, {1, 0x10}, {2, 0xFF}}), kDefault, sched, 10);
    CHECK(r.trace[0].acc_after == 0);
    CHECK(r.trace[1].acc_after == 1);
  }
}

namespace {

ArchState random_state(std::mt19937_64& rng, const MemoryMapConfig& config) {
  MemoryImage image;
  for (unsigned a = 0; a < config.ram_size; ++a) image.set(a, static_cast<std::uint8_t>(rng()));
  ArchState s = reset(config, image);
  s.acc = static_cast<std::uint8_t>(rng());
  s.pc = static_cast<std::uint8_t>(rng() % 32);
  return s;
}

}  // namespace

TEST_CASE("properties over random programs") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    ArchState s = random_state(rng, kDefault);
    for (int i = 0; i < 200 && !s.halted; ++i) {
      step(s, kDefault, {static_cast<bool>(rng() & 1)});
      REQUIRE(s.pc < 32);
      REQUIRE(s.ram.size() == 17);
    }
    if (s.halted) {
      const RunResult again = run(s, kDefault, {}, 50);
      CHECK(again.state == s);
      CHECK(again.steps == 0);
    }
  }
}

TEST_CASE("branch arithmetic is exact for every PC") {
  const MemoryMapConfig flat = flat_map();
  const Mnemonic kinds[] = {Mnemonic::BEQ_FWD, Mnemonic::BEQ_BWD, Mnemonic::BNE_FWD, Mnemonic::BNE_BWD};
  for (unsigned p = 1; p < 32; ++p) {
    for (Mnemonic m : kinds) {
      for (std::uint8_t acc : {std::uint8_t{0}, std::uint8_t{1}, std::uint8_t{0x80}}) {
        ArchState s = state_with({{p, byte_of(m)}}, acc, static_cast<std::uint8_t>(p), flat);
        step(s, flat, {});
        const bool eq = m == Mnemonic::BEQ_FWD || m == Mnemonic::BEQ_BWD;
        const bool fwd = m == Mnemonic::BEQ_FWD || m == Mnemonic::BNE_FWD;
        const bool taken = eq ? acc == 0 : acc != 0;
        const unsigned expect = taken ? (fwd ? (p + 3) % 32 : (p + 30) % 32) : (p + 1) % 32;
        CHECK(s.pc == expect);
        CHECK(s.acc == acc);
      }
    }
  }
}

TEST_CASE("BEQ and BNE are complementary") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto acc = static_cast<std::uint8_t>(rng() % 3 == 0 ? 0 : rng());
    const auto p = static_cast<std::uint8_t>(rng() % 16);
    for (auto [eq, ne] : {std::pair{Mnemonic::BEQ_FWD, Mnemonic::BNE_FWD}, std::pair{Mnemonic::BEQ_BWD, Mnemonic::BNE_BWD}}) {
      ArchState a = state_with({{p, byte_of(eq)}}, acc, p);
      ArchState b = state_with({{p, byte_of(ne)}}, acc, p);
      step(a, kDefault, {});
      step(b, kDefault, {});
      const bool a_taken = a.pc != (p + 1) % 32;
      const bool b_taken = b.pc != (p + 1) % 32;
      CHECK(a_taken != b_taken);
    }
  }
}

TEST_CASE("STA then LDA returns the stored value below the I/O byte") {
  for (unsigned addr = 0; addr < 16; ++addr) {
    if (addr == 0 || addr == 1 || addr == 2) continue;  // program bytes
    const auto sta = encode(Instruction::memory(Mnemonic::STA, static_cast<std::uint8_t>(addr)));
    const auto lda = encode(Instruction::memory(Mnemonic::LDA, static_cast<std::uint8_t>(addr)));
    ArchState s = state_with({{0, sta}, {1, 0xFD}, {2, lda}}, static_cast<std::uint8_t>(0xA0 + addr), 0);
    step(s, kDefault, {});
    step(s, kDefault, {});
    CHECK(s.acc == 0);
    step(s, kDefault, {});
    CHECK(s.acc == 0xA0 + addr);
  }
}

TEST_CASE("no program changes the constant table") {
  std::mt19937_64 rng(99);
  MemoryMapConfig config;
  const auto rom = config.rom;
  for (int trial = 0; trial < 200; ++trial) {
    ArchState s = random_state(rng, config);
    for (int i = 0; i < 200 && !s.halted; ++i) step(s, config, {});
    CHECK(config.rom == rom);
    for (unsigned a = 0; a < rom.size(); ++a)
      CHECK(mem_read(s, config, {}, static_cast<std::uint8_t>(17 + a)) == rom[a]);
  }
}

TEST_CASE("JSR and JMP give a working subroutine linkage") {
  // 0 LDA ptr; 1 JSR; 2 HLT; 3..: callee saves ACC, does work, JMPs back.
  //  3 STA 12; 4 CLR; 5 ADDI 4; 6 STA 13; 7 LDA 12; 8 JMP; 11 ptr=3
  ArchState s = state_with({{0, 0x0B}, {1, 0xF1}, {2, 0xFF}, {3, 0x2C}, {4, 0xFD}, {5, 0xE4},
                            {6, 0x2D}, {7, 0x0C}, {8, 0xF0}, {11, 3}});
  const RunResult r = run(s, kDefault, {}, 50);
  CHECK(r.stop == StopReason::Halted);
  CHECK(r.state.pc == 3);  // HLT at 2 leaves PC at 3
  CHECK(r.state.ram[12] == 2);
  CHECK(r.state.ram[13] == 4);
  CHECK(r.trace.back().pc_before == 2);
}
