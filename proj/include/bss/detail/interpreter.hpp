#pragma once

// Single-step semantics shared by the concrete machine and the symbolic
// affine tracker. A Domain supplies:
//   using Value;
//   Value zero() const;                     bool is_zero(const Value&) const;
//   Value constant(const RealValue&) const; Value add/sub(const Value&, const Value&) const;
//   int sign(const Value&) const;           RealValue concrete(const Value&) const;

#include <utility>

#include "bss/error.hpp"
#include "bss/vm.hpp"

namespace bss::detail {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

template <class Domain>
typename Domain::Value read(const BasicMachineState<typename Domain::Value>& s,
                            const Domain& d, RegIndex r) {
  auto it = s.registers.find(r);
  return it == s.registers.end() ? d.zero() : it->second;
}

template <class Domain>
void write(BasicMachineState<typename Domain::Value>& s, const Domain& d, RegIndex r,
           typename Domain::Value v) {
  if (d.is_zero(v)) {
    s.registers.erase(r);
  } else {
    s.registers.insert_or_assign(r, std::move(v));
  }
}

template <class Domain>
std::vector<typename Domain::Value> prefix_tuple(
    const BasicMachineState<typename Domain::Value>& s, const Domain& d) {
  std::vector<typename Domain::Value> tuple;
  const std::uint64_t length = s.index.at(0);
  tuple.reserve(length);
  for (std::uint64_t r = 1; r <= length; ++r) tuple.push_back(read(s, d, r));
  return tuple;
}

template <class Domain>
BasicMachineState<typename Domain::Value> init(const Program& p, const Domain& d,
                                               std::span<const typename Domain::Value> input) {
  if (input.empty()) throw Error(ErrorCode::EmptyInput, "EmptyInput: input tuple must be nonempty");
  BasicMachineState<typename Domain::Value> s;
  for (std::size_t i = 0; i < input.size(); ++i) write(s, d, i + 1, input[i]);
  s.index.assign(p.index_registers(), input.size());
  return s;
}

/// Executes one instruction; the returned StepInfo carries concrete values
/// for the query tuple and the output.
template <class Domain>
StepInfo step(BasicMachineState<typename Domain::Value>& s, const Program& p,
              const OracleSpec* oracle, const Domain& d,
              std::vector<typename Domain::Value>* symbolic_query = nullptr) {
  StepInfo info;
  info.label = s.pc;
  ++s.steps;

  auto concrete_tuple = [&](const std::vector<typename Domain::Value>& t) {
    std::vector<RealValue> out;
    out.reserve(t.size());
    for (const auto& v : t) out.push_back(d.concrete(v));
    return out;
  };
  auto branch = [&](bool taken, Label yes, Label no) {
    info.branch = taken;
    s.pc = taken ? yes : no;
  };

  if (s.pc > p.size()) {
    // Falling past the last instruction halts.
    info.output = concrete_tuple(prefix_tuple(s, d));
    return info;
  }

  std::visit(
      overloaded{
          [&](const instr::Add& a) {
            write(s, d, a.dst, d.add(read(s, d, a.lhs), read(s, d, a.rhs)));
            info.changed_register = a.dst;
            ++s.pc;
          },
          [&](const instr::Sub& a) {
            write(s, d, a.dst, d.sub(read(s, d, a.lhs), read(s, d, a.rhs)));
            info.changed_register = a.dst;
            ++s.pc;
          },
          [&](const instr::SetConst& a) {
            write(s, d, a.dst, d.constant(a.value));
            info.changed_register = a.dst;
            ++s.pc;
          },
          [&](const instr::EqTest& a) {
            branch(d.sign(read(s, d, a.reg)) == 0, a.if_zero, a.otherwise);
          },
          [&](const instr::GeTest& a) {
            branch(d.sign(read(s, d, a.reg)) >= 0, a.if_nonneg, a.otherwise);
          },
          [&](const instr::CopyIndirect& a) {
            RegIndex dst = s.index.at(a.dst_index - 1);
            write(s, d, dst, read(s, d, s.index.at(a.src_index - 1)));
            info.changed_register = dst;
            ++s.pc;
          },
          [&](const instr::IndexSet& a) {
            s.index.at(a.index - 1) = 1;
            info.changed_index = a.index;
            ++s.pc;
          },
          [&](const instr::IndexInc& a) {
            ++s.index.at(a.index - 1);
            info.changed_index = a.index;
            ++s.pc;
          },
          [&](const instr::IndexTest& a) {
            branch(s.index.at(a.lhs - 1) == s.index.at(a.rhs - 1), a.if_equal, a.otherwise);
          },
          [&](const instr::OracleTest& a) {
            if (oracle == nullptr) {
              --s.steps;
              throw Error(ErrorCode::OracleMissing,
                          "OracleMissing: oracle test at label " + std::to_string(s.pc));
            }
            auto tuple = prefix_tuple(s, d);
            OracleQuery q{concrete_tuple(tuple), false};
            q.member = oracle->query(q.tuple);
            branch(q.member, a.if_member, a.otherwise);
            if (symbolic_query != nullptr) *symbolic_query = std::move(tuple);
            info.query = std::move(q);
          },
          [&](const instr::Halt&) { info.output = concrete_tuple(prefix_tuple(s, d)); },
      },
      p.at(s.pc));
  return info;
}

}  // namespace bss::detail
