#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bss/real.hpp"

namespace bss {

/// Register and index-register subscripts, and labels, are 1-based.
using Label = std::size_t;
using RegIndex = std::size_t;

namespace instr {

struct Add {
  RegIndex dst, lhs, rhs;  // Z_dst := Z_lhs + Z_rhs
  friend bool operator==(const Add&, const Add&) = default;
};
struct Sub {
  RegIndex dst, lhs, rhs;  // Z_dst := Z_lhs - Z_rhs
  friend bool operator==(const Sub&, const Sub&) = default;
};
struct SetConst {
  RegIndex dst;
  RealValue value;  // 0 or 1 outside the M_add dialect
  friend bool operator==(const SetConst&, const SetConst&) = default;
};
struct EqTest {
  RegIndex reg;
  Label if_zero, otherwise;
  friend bool operator==(const EqTest&, const EqTest&) = default;
};
struct GeTest {
  RegIndex reg;
  Label if_nonneg, otherwise;
  friend bool operator==(const GeTest&, const GeTest&) = default;
};
struct CopyIndirect {
  RegIndex dst_index, src_index;  // Z_{I_dst} := Z_{I_src}
  friend bool operator==(const CopyIndirect&, const CopyIndirect&) = default;
};
struct IndexSet {
  RegIndex index;  // I_index := 1
  friend bool operator==(const IndexSet&, const IndexSet&) = default;
};
struct IndexInc {
  RegIndex index;  // I_index := I_index + 1
  friend bool operator==(const IndexInc&, const IndexInc&) = default;
};
struct IndexTest {
  RegIndex lhs, rhs;
  Label if_equal, otherwise;
  friend bool operator==(const IndexTest&, const IndexTest&) = default;
};
struct OracleTest {
  Label if_member, otherwise;  // queries (Z_1, ..., Z_{I_1})
  friend bool operator==(const OracleTest&, const OracleTest&) = default;
};
struct Halt {
  friend bool operator==(const Halt&, const Halt&) = default;
};

}  // namespace instr

using Instruction =
    std::variant<instr::Add, instr::Sub, instr::SetConst, instr::EqTest,
                 instr::GeTest, instr::CopyIndirect, instr::IndexSet,
                 instr::IndexInc, instr::IndexTest, instr::OracleTest,
                 instr::Halt>;

bool is_branch(const Instruction& in);

/// Tests available to a machine class, ordered by strength.
enum class TestLevel : std::uint8_t {
  Equality,     // M_add^{1,=}: equality tests, constants 0 and 1
  Order,        // M_add^1: adds order tests
  RealConstants // M_add: arbitrary real constants
};

struct Dialect {
  TestLevel level = TestLevel::Equality;
  bool oracle = false;

  /// True if every program of `other` is also a program of this dialect.
  bool admits(const Dialect& other) const {
    return other.level <= level && (!other.oracle || oracle);
  }
  std::string name() const;
  friend bool operator==(const Dialect&, const Dialect&) = default;
};

inline constexpr Dialect kEqualityDialect{TestLevel::Equality, false};
inline constexpr Dialect kOrderDialect{TestLevel::Order, false};
inline constexpr Dialect kOrderOracleDialect{TestLevel::Order, true};

/// A labeled instruction list. Labels are 1..size() in program order; control
/// falls through to the next label, and falling past the last instruction
/// halts.
class Program {
 public:
  Program() = default;
  /// Validates jump targets and index subscripts. `index_registers` of 0
  /// means "as many as the instructions reference, at least 1".
  explicit Program(std::vector<Instruction> instructions,
                   std::size_t index_registers = 0);

  const std::vector<Instruction>& instructions() const noexcept { return instructions_; }
  std::size_t size() const noexcept { return instructions_.size(); }
  const Instruction& at(Label label) const { return instructions_.at(label - 1); }

  /// k_M, the number of index registers.
  std::size_t index_registers() const noexcept { return index_registers_; }
  /// Smallest k_M the instructions allow: the largest referenced index
  /// register, or 1.
  std::size_t referenced_index_registers() const noexcept;

  /// Smallest dialect admitting every instruction.
  Dialect dialect() const noexcept { return dialect_; }

  friend bool operator==(const Program& a, const Program& b) {
    return a.index_registers_ == b.index_registers_ &&
           a.instructions_ == b.instructions_;
  }

 private:
  std::vector<Instruction> instructions_;
  std::size_t index_registers_ = 1;
  Dialect dialect_;
};

/// `1: halt`, the fill-in machine for indices that name no program.
const Program& trivial_program();

/// Assembly text, one instruction per line:
///   <label>: add Z<i> = Z<j> + Z<k>      <label>: sub Z<i> = Z<j> - Z<k>
///   <label>: set Z<j> = <value>          <label>: eq Z<j> -> <l1>, <l2>
///   <label>: ge Z<j> -> <l1>, <l2>       <label>: copy Z[I<j>] = Z[I<k>]
///   <label>: idx I<j> = 1                <label>: inc I<j>
///   <label>: ieq I<j>, I<k> -> <l1>, <l2>
///   <label>: oracle -> <l1>, <l2>        <label>: halt
/// `#` starts a comment. An optional `.indices <k>` line declares k_M.
Program parse_program(std::string_view text);
std::string emit_program(const Program& p);

/// Text of a single instruction body (no label), as in the assembly syntax.
std::string instruction_text(const Instruction& in);

}  // namespace bss
