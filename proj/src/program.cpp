#include "bss/program.hpp"

#include <algorithm>
#include <sstream>

#include "bss/error.hpp"

namespace bss {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

bool is_binary_constant(const RealValue& v) {
  return v.is_rational() && (v.constant() == 0 || v.constant() == 1);
}

}  // namespace

bool is_branch(const Instruction& in) {
  return std::holds_alternative<instr::EqTest>(in) ||
         std::holds_alternative<instr::GeTest>(in) ||
         std::holds_alternative<instr::IndexTest>(in) ||
         std::holds_alternative<instr::OracleTest>(in);
}

std::string Dialect::name() const {
  std::string base;
  switch (level) {
    case TestLevel::Equality: base = "M_add^{1,=}"; break;
    case TestLevel::Order: base = "M_add^1"; break;
    case TestLevel::RealConstants: base = "M_add"; break;
  }
  return oracle ? base + "(O)" : base;
}

Program::Program(std::vector<Instruction> instructions, std::size_t index_registers)
    : instructions_(std::move(instructions)) {
  if (instructions_.empty()) throw Error(ErrorCode::Syntax, "empty program");

  const std::size_t n = instructions_.size();
  auto check_label = [&](Label l) {
    if (l == 0 || l > n) {
      throw Error(ErrorCode::UndefinedLabel, "UndefinedLabel(" + std::to_string(l) + ")");
    }
  };
  auto check_reg = [](RegIndex r) {
    if (r == 0) throw Error(ErrorCode::IndexOutOfRange, "register subscript must be >= 1");
  };

  for (const auto& in : instructions_) {
    std::visit(
        overloaded{
            [&](const instr::Add& a) { check_reg(a.dst), check_reg(a.lhs), check_reg(a.rhs); },
            [&](const instr::Sub& a) { check_reg(a.dst), check_reg(a.lhs), check_reg(a.rhs); },
            [&](const instr::SetConst& a) {
              check_reg(a.dst);
              if (!is_binary_constant(a.value)) dialect_.level = TestLevel::RealConstants;
            },
            [&](const instr::EqTest& a) {
              check_reg(a.reg), check_label(a.if_zero), check_label(a.otherwise);
            },
            [&](const instr::GeTest& a) {
              check_reg(a.reg), check_label(a.if_nonneg), check_label(a.otherwise);
              dialect_.level = std::max(dialect_.level, TestLevel::Order);
            },
            [&](const instr::CopyIndirect& a) { check_reg(a.dst_index), check_reg(a.src_index); },
            [&](const instr::IndexSet& a) { check_reg(a.index); },
            [&](const instr::IndexInc& a) { check_reg(a.index); },
            [&](const instr::IndexTest& a) {
              check_reg(a.lhs), check_reg(a.rhs), check_label(a.if_equal), check_label(a.otherwise);
            },
            [&](const instr::OracleTest& a) {
              check_label(a.if_member), check_label(a.otherwise);
              dialect_.oracle = true;
            },
            [&](const instr::Halt&) {},
        },
        in);
  }

  const std::size_t referenced = referenced_index_registers();
  if (index_registers == 0) {
    index_registers_ = referenced;
  } else if (index_registers < referenced) {
    throw Error(ErrorCode::IndexOutOfRange,
                "index register I" + std::to_string(referenced) +
                    " exceeds declared k_M = " + std::to_string(index_registers));
  } else {
    index_registers_ = index_registers;
  }
}

std::size_t Program::referenced_index_registers() const noexcept {
  std::size_t k = 1;
  for (const auto& in : instructions_) {
    std::visit(overloaded{
                   [&](const instr::CopyIndirect& a) { k = std::max({k, a.dst_index, a.src_index}); },
                   [&](const instr::IndexSet& a) { k = std::max(k, a.index); },
                   [&](const instr::IndexInc& a) { k = std::max(k, a.index); },
                   [&](const instr::IndexTest& a) { k = std::max({k, a.lhs, a.rhs}); },
                   [](const auto&) {},
               },
               in);
  }
  return k;
}

const Program& trivial_program() {
  static const Program p(std::vector<Instruction>{instr::Halt{}});
  return p;
}

std::string instruction_text(const Instruction& in) {
  std::ostringstream out;
  std::visit(
      overloaded{
          [&](const instr::Add& a) { out << "add Z" << a.dst << " = Z" << a.lhs << " + Z" << a.rhs; },
          [&](const instr::Sub& a) { out << "sub Z" << a.dst << " = Z" << a.lhs << " - Z" << a.rhs; },
          [&](const instr::SetConst& a) { out << "set Z" << a.dst << " = " << a.value.to_string(); },
          [&](const instr::EqTest& a) { out << "eq Z" << a.reg << " -> " << a.if_zero << ", " << a.otherwise; },
          [&](const instr::GeTest& a) { out << "ge Z" << a.reg << " -> " << a.if_nonneg << ", " << a.otherwise; },
          [&](const instr::CopyIndirect& a) {
            out << "copy Z[I" << a.dst_index << "] = Z[I" << a.src_index << "]";
          },
          [&](const instr::IndexSet& a) { out << "idx I" << a.index << " = 1"; },
          [&](const instr::IndexInc& a) { out << "inc I" << a.index; },
          [&](const instr::IndexTest& a) {
            out << "ieq I" << a.lhs << ", I" << a.rhs << " -> " << a.if_equal << ", " << a.otherwise;
          },
          [&](const instr::OracleTest& a) { out << "oracle -> " << a.if_member << ", " << a.otherwise; },
          [&](const instr::Halt&) { out << "halt"; },
      },
      in);
  return out.str();
}

std::string emit_program(const Program& p) {
  std::ostringstream out;
  if (p.index_registers() > p.referenced_index_registers()) {
    out << ".indices " << p.index_registers() << '\n';
  }
  Label label = 1;
  for (const auto& in : p.instructions()) {
    out << label++ << ": " << instruction_text(in) << '\n';
  }
  return out.str();
}

}  // namespace bss
