#pragma once

// Bit codes and Goedel indices of programs.
//
// code(M) is the concatenation of fixed-width 5-bit symbols (see
// symbol_table()). Subscripts and jump targets are written as a unary length
// (one U per binary digit) followed by the binary digits as D0/D1 symbols,
// most significant first. Instruction labels are implicit (program order).
// A leading HDR <n> declares k_M; it is present only when k_M exceeds the
// largest referenced index register.
//
// K_M = 2^|code(M)| + c_M, where c_M is the integer with binary expansion
// code(M); equivalently, K_M in binary is a 1 followed by code(M).

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bss/program.hpp"

namespace bss {

class BitString {
 public:
  BitString() = default;
  explicit BitString(std::vector<std::uint8_t> bits);

  /// "0101..." (binary) or "<length>:<hex>" (hex digits of c_M, zero-padded).
  static BitString parse(std::string_view text);

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

  std::string to_binary() const;
  std::string to_hex() const;

  /// c_M, the integer with this binary expansion (leading zeros dropped).
  Integer value() const;

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

inline constexpr unsigned kSymbolWidth = 5;

enum class Symbol : std::uint8_t {
  Halt = 1,
  Add = 2,
  Sub = 3,
  Set = 4,
  Eq = 5,
  Ge = 6,
  Copy = 7,
  IdxSet = 8,
  Inc = 9,
  Ieq = 10,
  Oracle = 11,
  Z = 12,
  I = 13,
  Lbl = 14,
  C0 = 15,
  C1 = 16,
  U = 17,
  D0 = 18,
  D1 = 19,
  Hdr = 20,
};

struct SymbolInfo {
  Symbol symbol;
  const char* name;
};

/// The frozen symbol table; codes not listed (0 and 21..31) are invalid.
std::span<const SymbolInfo> symbol_table();

/// Throws NonBinaryConstant for constants outside {0, 1}.
BitString encode(const Program& p);

/// nullopt when the bits are not the code of a valid program.
std::optional<Program> decode(const BitString& code);

/// 2^|code| + c.
Integer index_of_code(const BitString& code);

/// Inverse of index_of_code; nullopt for k <= 1 (empty code).
std::optional<BitString> code_of_index(const Integer& k);

Integer godel_index(const Program& p);

/// The program with index k if it belongs to `dialect`, else trivial_program().
Program machine_at(const Integer& k, Dialect dialect);

/// (k, machine_at(k, dialect)) for k = 1..n.
std::vector<std::pair<Integer, Program>> enumerate_machines(Dialect dialect, std::size_t n);

}  // namespace bss
