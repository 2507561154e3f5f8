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

#include "acc8/error.hpp"

namespace acc8 {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::syntax: return "syntax";
    case Errc::unknown_mnemonic: return "unknown-mnemonic";
    case Errc::duplicate_label: return "duplicate-label";
    case Errc::undefined_label: return "undefined-label";
    case Errc::operand_range: return "operand-range";
    case Errc::image_overflow: return "image-overflow";
    case Errc::address_collision: return "address-collision";
    case Errc::malformed_token: return "malformed-token";
    case Errc::address_range: return "address-range";
    case Errc::duplicate_address: return "duplicate-address";
    case Errc::rom_conflict: return "rom-conflict";
    case Errc::unmapped_address: return "unmapped-address";
    case Errc::bad_config: return "bad-config";
    case Errc::halted: return "halted";
    case Errc::scan_length: return "scan-length";
    case Errc::schedule: return "schedule";
  }
  return "unknown";
}

namespace {

std::string render(Errc code, const std::string& message, int line) {
  std::string out;
  if (line > 0) out += "line " + std::to_string(line) + ": ";
  out += to_string(code);
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(Errc code, std::string message, int line)
    : std::runtime_error(render(code, message, line)),
      code_(code),
      line_(line),
      detail_(std::move(message)) {}

}  // namespace acc8
