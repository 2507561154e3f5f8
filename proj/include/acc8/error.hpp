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

#include <stdexcept>
#include <string>
#include <string_view>

namespace acc8 {

// Every failure the library reports. The assembler categories come first and
// keep the spelling used in diagnostics ("undefined-label", ...).
enum class Errc {
  syntax,
  unknown_mnemonic,
  duplicate_label,
  undefined_label,
  operand_range,
  image_overflow,
  address_collision,
  malformed_token,
  address_range,
  duplicate_address,
  rom_conflict,
  unmapped_address,
  bad_config,
  halted,
  scan_length,
  schedule,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  // line == 0 means the error has no source position.
  Error(Errc code, std::string message, int line = 0);

  Errc code() const noexcept { return code_; }
  int line() const noexcept { return line_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  int line_;
  std::string detail_;
};

}  // namespace acc8
