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

#include "acc8/assembler.hpp"

#include <cctype>
#include <cstdio>
#include <limits>
#include <sstream>

#include "acc8/error.hpp"

namespace acc8 {

void MemoryImage::set(unsigned addr, std::uint8_t value) {
  if (addr >= kAddressSpace)
    throw Error(Errc::address_range, "address " + std::to_string(addr) + " is outside 0..31");
  if (cells_[addr])
    throw Error(Errc::duplicate_address, "address " + std::to_string(addr) + " assigned twice");
  cells_[addr] = value;
}

std::optional<std::uint8_t> MemoryImage::get(unsigned addr) const {
  if (addr >= kAddressSpace) return std::nullopt;
  return cells_[addr];
}

std::size_t MemoryImage::size() const noexcept {
  std::size_t n = 0;
  for (const auto& c : cells_) n += c.has_value();
  return n;
}

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_hex(char c) { return std::isxdigit(static_cast<unsigned char>(c)) != 0; }

bool is_identifier(std::string_view s) {
  if (s.empty() || !is_ident_start(s[0])) return false;
  for (char c : s)
    if (!is_ident_char(c)) return false;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

// Values too large for any field saturate; range checks happen in assemble().
long parse_number(std::string_view tok, int base, int line) {
  constexpr long kCap = std::numeric_limits<int>::max();
  if (tok.empty()) throw Error(Errc::syntax, "missing digits in literal", line);
  long value = 0;
  for (char c : tok) {
    int digit;
    if (base == 16 && is_hex(c))
      digit = std::isdigit(static_cast<unsigned char>(c)) ? c - '0' : (std::tolower(c) - 'a' + 10);
    else if (base == 10 && std::isdigit(static_cast<unsigned char>(c)))
      digit = c - '0';
    else
      throw Error(Errc::syntax, "malformed literal", line);
    value = value * base + digit;
    if (value > kCap) value = kCap;
  }
  return value;
}

Operand parse_operand(std::string_view tok, int line) {
  if (std::isdigit(static_cast<unsigned char>(tok[0]))) {
    if (tok.size() > 1 && tok[0] == '0' && (tok[1] == 'x' || tok[1] == 'X'))
      return parse_number(tok.substr(2), 16, line);
    return parse_number(tok, 10, line);
  }
  if (is_identifier(tok)) return LabelRef{std::string(tok)};
  throw Error(Errc::syntax, "malformed operand '" + std::string(tok) + "'", line);
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// "HH:" at the start of a line marks a disassembler listing line.
bool is_listing_prefix(std::string_view s) {
  return s.size() >= 3 && is_hex(s[0]) && is_hex(s[1]) && s[2] == ':';
}

Statement statement(Statement::Kind kind, int line) {
  Statement s;
  s.kind = kind;
  s.line = line;
  return s;
}

void parse_line(std::string_view text, int line, std::vector<Statement>& out) {
  if (const auto semi = text.find(';'); semi != std::string_view::npos) text = text.substr(0, semi);
  text = trim(text);

  if (is_listing_prefix(text)) {
    Statement org = statement(Statement::Kind::Origin, line);
    org.operand = parse_number(text.substr(0, 2), 16, line);
    out.push_back(org);
    text = trim(text.substr(3));
    auto toks = split_ws(text);
    if (toks.empty() || toks[0].size() != 2 || !is_hex(toks[0][0]) || !is_hex(toks[0][1]))
      throw Error(Errc::syntax, "listing line needs a two-digit byte after the address", line);
    const auto listed = static_cast<std::uint8_t>(parse_number(toks[0], 16, line));
    text = trim(text.substr(toks[0].data() + toks[0].size() - text.data()));
    if (text.empty()) throw Error(Errc::syntax, "listing line has no mnemonic", line);
    const std::size_t before = out.size();
    parse_line(text, line, out);
    if (out.size() != before + 1 || out.back().kind != Statement::Kind::Instruction)
      throw Error(Errc::syntax, "listing line must hold exactly one instruction", line);
    out.back().listed_byte = listed;
    return;
  }

  // Leading labels.
  for (;;) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) break;
    const std::string_view name = trim(text.substr(0, colon));
    if (!is_identifier(name)) throw Error(Errc::syntax, "bad label '" + std::string(name) + "'", line);
    Statement s = statement(Statement::Kind::Label, line);
    s.label = std::string(name);
    out.push_back(std::move(s));
    text = trim(text.substr(colon + 1));
  }
  if (text.empty()) return;

  const auto toks = split_ws(text);
  if (toks.size() > 2) throw Error(Errc::syntax, "unexpected token '" + std::string(toks[2]) + "'", line);
  const std::string_view head = toks[0];
  const std::optional<std::string_view> arg =
      toks.size() == 2 ? std::optional<std::string_view>(toks[1]) : std::nullopt;

  if (head[0] == '.') {
    const std::string directive = lower(head);
    Statement s = statement(Statement::Kind::Byte, line);
    if (directive == ".byte")
      s.kind = Statement::Kind::Byte;
    else if (directive == ".org")
      s.kind = Statement::Kind::Origin;
    else
      throw Error(Errc::syntax, "unknown directive '" + std::string(head) + "'", line);
    if (!arg) throw Error(Errc::syntax, directive + " needs an operand", line);
    s.operand = parse_operand(*arg, line);
    if (s.kind == Statement::Kind::Origin && std::holds_alternative<LabelRef>(s.operand))
      throw Error(Errc::syntax, ".org needs a numeric address", line);
    out.push_back(std::move(s));
    return;
  }

  const auto mnemonic = parse_mnemonic(head);
  if (!mnemonic) throw Error(Errc::unknown_mnemonic, "unknown mnemonic '" + std::string(head) + "'", line);
  Statement s = statement(Statement::Kind::Instruction, line);
  s.mnemonic = *mnemonic;
  if (operand_kind(*mnemonic) == OperandKind::None) {
    if (arg)
      throw Error(Errc::syntax, std::string(mnemonic_of(*mnemonic)) + " takes no operand", line);
  } else {
    if (!arg) throw Error(Errc::syntax, std::string(mnemonic_of(*mnemonic)) + " needs an operand", line);
    s.operand = parse_operand(*arg, line);
  }
  out.push_back(std::move(s));
}

}  // namespace

std::vector<Statement> parse_source(std::string_view source) {
  std::vector<Statement> out;
  int line = 0;
  for (std::string_view text : split_lines(source)) parse_line(text, ++line, out);
  return out;
}

MemoryImage assemble(const std::vector<Statement>& statements) {
  std::map<std::string, long> labels;
  std::vector<long> where(statements.size(), -1);

  long addr = 0;
  for (std::size_t i = 0; i < statements.size(); ++i) {
    const Statement& s = statements[i];
    switch (s.kind) {
      case Statement::Kind::Label:
        if (!labels.emplace(s.label, addr).second)
          throw Error(Errc::duplicate_label, "label '" + s.label + "' defined twice", s.line);
        break;
      case Statement::Kind::Origin: {
        const long target = std::get<long>(s.operand);
        if (target < 0 || target >= static_cast<long>(kAddressSpace))
          throw Error(Errc::operand_range, ".org " + std::to_string(target) + " is outside 0..31", s.line);
        addr = target;
        break;
      }
      case Statement::Kind::Instruction:
      case Statement::Kind::Byte:
        if (addr >= static_cast<long>(kAddressSpace))
          throw Error(Errc::image_overflow, "program does not fit in 32 bytes", s.line);
        where[i] = addr++;
        break;
    }
  }

  const auto resolve = [&](const Statement& s) -> long {
    if (const auto* ref = std::get_if<LabelRef>(&s.operand)) {
      const auto it = labels.find(ref->name);
      if (it == labels.end()) throw Error(Errc::undefined_label, "label '" + ref->name + "' is not defined", s.line);
      return it->second;
    }
    return std::get<long>(s.operand);
  };

  MemoryImage image;
  for (std::size_t i = 0; i < statements.size(); ++i) {
    const Statement& s = statements[i];
    if (where[i] < 0) continue;
    std::uint8_t byte = 0;
    if (s.kind == Statement::Kind::Byte) {
      const long value = resolve(s);
      if (value > 0xFF) throw Error(Errc::operand_range, ".byte " + std::to_string(value) + " does not fit in 8 bits", s.line);
      byte = static_cast<std::uint8_t>(value);
    } else {
      long value = 0;
      switch (operand_kind(s.mnemonic)) {
        case OperandKind::MemAddr:
          value = resolve(s);
          if (value > kAddressMask)
            throw Error(Errc::operand_range, "memory address " + std::to_string(value) + " is outside 0..31", s.line);
          break;
        case OperandKind::Immediate:
          value = resolve(s);
          if (value > kImmediateMask)
            throw Error(Errc::operand_range, "immediate " + std::to_string(value) + " is outside 0..15", s.line);
          break;
        case OperandKind::None:
          break;
      }
      byte = encode(Instruction{s.mnemonic, static_cast<std::uint8_t>(value)});
      if (s.listed_byte && *s.listed_byte != byte) {
        char msg[64];
        std::snprintf(msg, sizeof msg, "listed byte %02X does not match encoding %02X", *s.listed_byte, byte);
        throw Error(Errc::syntax, msg, s.line);
      }
    }
    const auto at = static_cast<unsigned>(where[i]);
    if (image.contains(at))
      throw Error(Errc::address_collision, "address " + std::to_string(at) + " assigned twice", s.line);
    image.set(at, byte);
  }

  for (const auto& [name, at] : labels)
    if (at < static_cast<long>(kAddressSpace)) image.symbols()[name] = static_cast<std::uint8_t>(at);
  return image;
}

std::string disassemble(const MemoryImage& image) {
  std::string out;
  for (unsigned addr = 0; addr < kAddressSpace; ++addr) {
    const auto byte = image.get(addr);
    if (!byte) continue;
    char prefix[16];
    std::snprintf(prefix, sizeof prefix, "%02X: %02X  ", addr, *byte);
    out += prefix;
    out += format_instruction(decode(*byte));
    out += '\n';
  }
  return out;
}

std::string format_hex(const MemoryImage& image) {
  std::string out;
  unsigned expected = 0;
  char buf[8];
  for (unsigned addr = 0; addr < kAddressSpace; ++addr) {
    const auto byte = image.get(addr);
    if (!byte) continue;
    if (addr != expected) {
      std::snprintf(buf, sizeof buf, "@%02X", addr);
      if (!out.empty()) out += ' ';
      out += buf;
    }
    std::snprintf(buf, sizeof buf, "%02X", *byte);
    if (!out.empty()) out += ' ';
    out += buf;
    expected = addr + 1;
  }
  return out;
}

MemoryImage parse_hex(std::string_view text) {
  MemoryImage image;
  unsigned addr = 0;
  int line = 0;
  for (std::string_view raw : split_lines(text)) {
    ++line;
    if (const auto c = raw.find("//"); c != std::string_view::npos) raw = raw.substr(0, c);
    for (std::string_view tok : split_ws(raw)) {
      const bool marker = tok[0] == '@';
      std::string_view digits = marker ? tok.substr(1) : tok;
      bool ok = !digits.empty() && (marker || digits.size() <= 2);
      for (char c : digits) ok = ok && is_hex(c);
      if (!ok) throw Error(Errc::malformed_token, "malformed token '" + std::string(tok) + "'", line);
      unsigned long value = 0;
      for (char c : digits) {
        value = value * 16 + static_cast<unsigned>(std::isdigit(static_cast<unsigned char>(c)) ? c - '0' : std::tolower(c) - 'a' + 10);
        if (value > 0xFFFF) value = 0xFFFF;
      }
      if (marker) {
        if (value >= kAddressSpace)
          throw Error(Errc::address_range, "address marker " + std::string(tok) + " is outside 0..31", line);
        addr = static_cast<unsigned>(value);
        continue;
      }
      if (addr >= kAddressSpace)
        throw Error(Errc::address_range, "byte '" + std::string(tok) + "' lands past address 31", line);
      if (image.contains(addr))
        throw Error(Errc::duplicate_address, "address " + std::to_string(addr) + " assigned twice", line);
      image.set(addr++, static_cast<std::uint8_t>(value));
    }
  }
  return image;
}

}  // namespace acc8
