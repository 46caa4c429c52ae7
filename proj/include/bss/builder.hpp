#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bss/program.hpp"

namespace bss {

/// Emits programs with symbolic jump targets; labels are assigned on build().
class ProgramBuilder {
 public:
  struct Target {
    std::size_t id;
  };

  Target new_label();
  /// The next emitted instruction carries `t`.
  void bind(Target t);

  void add(RegIndex dst, RegIndex lhs, RegIndex rhs);
  void sub(RegIndex dst, RegIndex lhs, RegIndex rhs);
  void set(RegIndex dst, const RealValue& value);
  void eq(RegIndex reg, Target if_zero, Target otherwise);
  void ge(RegIndex reg, Target if_nonneg, Target otherwise);
  void copy(RegIndex dst_index, RegIndex src_index);
  void idx_set(RegIndex index);
  void inc(RegIndex index);
  void ieq(RegIndex lhs, RegIndex rhs, Target if_equal, Target otherwise);
  void oracle(Target if_member, Target otherwise);
  void halt();

  /// Unconditional jump, realized as `ieq I1, I1 -> t, t`.
  void jump(Target t);

  /// Z_dst := value (value >= 0) by doubling; `one` must hold 1 and differ
  /// from dst.
  void load_natural(RegIndex dst, const Integer& value, RegIndex one);

  /// I_index := value (value >= 1).
  void load_index(RegIndex index, std::size_t value);

  Program build(std::size_t index_registers = 0) const;

 private:
  void emit(Instruction in);

  std::vector<Instruction> code_;
  std::vector<std::optional<std::size_t>> positions_;  // target id -> instruction position
};

}  // namespace bss
