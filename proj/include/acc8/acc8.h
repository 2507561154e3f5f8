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

/*
 * C interface to the acc8 toolchain: assembler, disassembler, hex images,
 * the instruction-level and cycle-level simulators, scan chain access and
 * differential co-simulation.
 *
 * Objects are opaque handles created by *_create / producer functions and
 * released with the matching *_destroy. Functions return an acc8_status;
 * on failure acc8_last_error_message() and acc8_last_error_line() describe
 * the most recent error on the calling thread. Strings returned as char*
 * are owned by the caller and released with acc8_string_free().
 */
#ifndef ACC8_H
#define ACC8_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(ACC8_BUILDING_LIBRARY)
#    define ACC8_API __declspec(dllexport)
#  else
#    define ACC8_API __declspec(dllimport)
#  endif
#else
#  define ACC8_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum acc8_status {
  ACC8_OK = 0,
  ACC8_E_SYNTAX,
  ACC8_E_UNKNOWN_MNEMONIC,
  ACC8_E_DUPLICATE_LABEL,
  ACC8_E_UNDEFINED_LABEL,
  ACC8_E_OPERAND_RANGE,
  ACC8_E_IMAGE_OVERFLOW,
  ACC8_E_ADDRESS_COLLISION,
  ACC8_E_MALFORMED_TOKEN,
  ACC8_E_ADDRESS_RANGE,
  ACC8_E_DUPLICATE_ADDRESS,
  ACC8_E_ROM_CONFLICT,
  ACC8_E_UNMAPPED_ADDRESS,
  ACC8_E_BAD_CONFIG,
  ACC8_E_HALTED,
  ACC8_E_SCAN_LENGTH,
  ACC8_E_SCHEDULE,
  ACC8_E_INVALID_ARGUMENT,
  ACC8_E_INTERNAL
} acc8_status;

typedef enum acc8_model { ACC8_MODEL_ARCH = 0, ACC8_MODEL_RTL = 1 } acc8_model;

typedef enum acc8_operand_kind {
  ACC8_OPERAND_NONE = 0,
  ACC8_OPERAND_MEM_ADDR = 1,
  ACC8_OPERAND_IMMEDIATE = 2
} acc8_operand_kind;

typedef struct acc8_instruction {
  int mnemonic; /* index 0..23, see acc8_mnemonic_name */
  int operand_kind;
  unsigned operand;
} acc8_instruction;

typedef struct acc8_image acc8_image;
typedef struct acc8_config acc8_config;
typedef struct acc8_schedule acc8_schedule;
typedef struct acc8_machine acc8_machine;

typedef struct acc8_state_summary {
  uint8_t acc;
  uint8_t pc;
  uint8_t ir;           /* 0 for the instruction-level model */
  uint8_t out_latch;
  int halted;
  int phase;            /* 0 FETCH, 1 EXECUTE, 2 HALT; -1 for the instruction-level model */
  uint64_t instructions;
  uint64_t ticks;       /* 0 for the instruction-level model */
} acc8_state_summary;

typedef struct acc8_cosim_options {
  uint64_t seed;
  uint64_t programs;
  uint64_t steps_per_program;
  unsigned threads;      /* 0: hardware concurrency */
  int fault_field;       /* -1: none, else a control field index 0..8 */
  unsigned fault_mask;
  int plus_modifier;     /* 2 for the correct machine */
  int minus_modifier;    /* -3 for the correct machine */
} acc8_cosim_options;

typedef struct acc8_cosim_report {
  uint64_t programs;
  uint64_t instructions;
  uint64_t halted_programs;
  int passed;
  uint64_t divergence_program;
  uint64_t divergence_step;
  char divergence_field[32];
  char arch_value[16];
  char rtl_value[16];
} acc8_cosim_report;

/* ---- errors and strings ---- */
ACC8_API const char* acc8_status_name(acc8_status status);
ACC8_API const char* acc8_last_error_message(void);
ACC8_API int acc8_last_error_line(void);
ACC8_API void acc8_string_free(char* text);

/* ---- instruction set ---- */
ACC8_API int acc8_mnemonic_count(void);
ACC8_API const char* acc8_mnemonic_name(int mnemonic);
ACC8_API int acc8_mnemonic_from_name(const char* name); /* -1 if unknown */
ACC8_API acc8_instruction acc8_decode(uint8_t byte);
ACC8_API acc8_status acc8_encode(const acc8_instruction* instr, uint8_t* byte_out);

/* ---- memory images ---- */
ACC8_API acc8_image* acc8_image_create(void);
ACC8_API void acc8_image_destroy(acc8_image* image);
ACC8_API acc8_status acc8_image_set(acc8_image* image, unsigned addr, uint8_t value);
ACC8_API int acc8_image_get(const acc8_image* image, unsigned addr); /* -1 when absent */
ACC8_API acc8_status acc8_assemble(const char* source, acc8_image** image_out);
ACC8_API acc8_status acc8_image_parse_hex(const char* text, acc8_image** image_out);
ACC8_API char* acc8_image_format_hex(const acc8_image* image);
ACC8_API char* acc8_disassemble(const acc8_image* image);

/* ---- memory map ---- */
ACC8_API acc8_config* acc8_config_create_default(void);
/* rom may be NULL when rom_len is 0; the I/O byte is the last RAM byte. */
ACC8_API acc8_status acc8_config_create(unsigned ram_size, const uint8_t* rom, size_t rom_len,
                                        acc8_config** config_out);
/* RAM of ram_size bytes followed by the built-in seven-segment table. */
ACC8_API acc8_status acc8_config_create_segments(unsigned ram_size, acc8_config** config_out);
ACC8_API void acc8_config_destroy(acc8_config* config);
ACC8_API unsigned acc8_config_ram_size(const acc8_config* config);
ACC8_API size_t acc8_config_scan_length(const acc8_config* config);

/* ---- input schedules ---- */
ACC8_API acc8_schedule* acc8_schedule_create(void);
ACC8_API acc8_status acc8_schedule_parse(const char* text, acc8_schedule** schedule_out);
ACC8_API void acc8_schedule_set(acc8_schedule* schedule, uint64_t step, int button);
ACC8_API void acc8_schedule_destroy(acc8_schedule* schedule);

/* ---- machines ---- */
ACC8_API acc8_status acc8_machine_create(acc8_model model, const acc8_config* config, const acc8_image* image,
                                         acc8_machine** machine_out);
ACC8_API void acc8_machine_destroy(acc8_machine* machine);
/* Runs up to `limit` instructions (arch) or ticks (rtl), stopping at HALT.
 * schedule may be NULL. With record_trace set, one trace line per
 * instruction or tick is appended to the machine's trace. */
ACC8_API acc8_status acc8_machine_run(acc8_machine* machine, const acc8_schedule* schedule, uint64_t limit,
                                      int record_trace);
ACC8_API acc8_status acc8_machine_state(const acc8_machine* machine, acc8_state_summary* out);
ACC8_API acc8_status acc8_machine_read_ram(const acc8_machine* machine, uint8_t* buffer, size_t length);
ACC8_API char* acc8_machine_summary(const acc8_machine* machine);
ACC8_API char* acc8_machine_trace(const acc8_machine* machine);
/* Scan chain access, cycle-level model only. */
ACC8_API acc8_status acc8_machine_scan_export(const acc8_machine* machine, char** bits_out);
ACC8_API acc8_status acc8_machine_scan_import(acc8_machine* machine, const char* bits);
ACC8_API acc8_status acc8_machine_scan_shift(acc8_machine* machine, int scan_in, int* scan_out);

/* ---- co-simulation ---- */
ACC8_API void acc8_cosim_default_options(acc8_cosim_options* options);
ACC8_API int acc8_control_field_from_name(const char* name); /* -1 if unknown */
ACC8_API const char* acc8_control_field_name(int field);
ACC8_API acc8_status acc8_cosim_run(const acc8_config* config, const acc8_cosim_options* options,
                                    acc8_cosim_report* report_out);

/* ---- bundled programs ---- */
ACC8_API char* acc8_demo_program(unsigned digit);

#ifdef __cplusplus
}
#endif

#endif /* ACC8_H */
