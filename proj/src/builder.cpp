#include "bss/builder.hpp"

#include "bss/error.hpp"

namespace bss {

ProgramBuilder::Target ProgramBuilder::new_label() {
  positions_.emplace_back();
  return {positions_.size() - 1};
}

void ProgramBuilder::bind(Target t) {
  if (positions_.at(t.id)) throw Error(ErrorCode::PreconditionViolated, "label bound twice");
  positions_[t.id] = code_.size();
}

void ProgramBuilder::emit(Instruction in) { code_.push_back(std::move(in)); }

void ProgramBuilder::add(RegIndex d, RegIndex l, RegIndex r) { emit(instr::Add{d, l, r}); }
void ProgramBuilder::sub(RegIndex d, RegIndex l, RegIndex r) { emit(instr::Sub{d, l, r}); }
void ProgramBuilder::set(RegIndex d, const RealValue& v) { emit(instr::SetConst{d, v}); }
void ProgramBuilder::eq(RegIndex reg, Target a, Target b) { emit(instr::EqTest{reg, a.id, b.id}); }
void ProgramBuilder::ge(RegIndex reg, Target a, Target b) { emit(instr::GeTest{reg, a.id, b.id}); }
void ProgramBuilder::copy(RegIndex d, RegIndex s) { emit(instr::CopyIndirect{d, s}); }
void ProgramBuilder::idx_set(RegIndex j) { emit(instr::IndexSet{j}); }
void ProgramBuilder::inc(RegIndex j) { emit(instr::IndexInc{j}); }
void ProgramBuilder::ieq(RegIndex l, RegIndex r, Target a, Target b) {
  emit(instr::IndexTest{l, r, a.id, b.id});
}
void ProgramBuilder::oracle(Target a, Target b) { emit(instr::OracleTest{a.id, b.id}); }
void ProgramBuilder::halt() { emit(instr::Halt{}); }
void ProgramBuilder::jump(Target t) { ieq(1, 1, t, t); }

void ProgramBuilder::load_natural(RegIndex dst, const Integer& value, RegIndex one) {
  if (value < 0) throw Error(ErrorCode::PreconditionViolated, "load_natural: negative value");
  set(dst, 0);
  for (std::size_t bit = mpz_sizeinbase(value.get_mpz_t(), 2); bit-- > 0;) {
    add(dst, dst, dst);
    if (mpz_tstbit(value.get_mpz_t(), bit)) add(dst, dst, one);
  }
}

void ProgramBuilder::load_index(RegIndex index, std::size_t value) {
  if (value == 0) throw Error(ErrorCode::PreconditionViolated, "load_index: value must be >= 1");
  idx_set(index);
  for (std::size_t v = 1; v < value; ++v) inc(index);
}

Program ProgramBuilder::build(std::size_t index_registers) const {
  auto resolve = [&](Label id) -> Label {
    const auto& pos = positions_.at(id);
    if (!pos || *pos >= code_.size()) {
      throw Error(ErrorCode::UndefinedLabel, "builder label bound to no instruction");
    }
    return *pos + 1;
  };
  std::vector<Instruction> out = code_;
  for (auto& in : out) {
    if (auto* a = std::get_if<instr::EqTest>(&in)) {
      a->if_zero = resolve(a->if_zero), a->otherwise = resolve(a->otherwise);
    } else if (auto* b = std::get_if<instr::GeTest>(&in)) {
      b->if_nonneg = resolve(b->if_nonneg), b->otherwise = resolve(b->otherwise);
    } else if (auto* c = std::get_if<instr::IndexTest>(&in)) {
      c->if_equal = resolve(c->if_equal), c->otherwise = resolve(c->otherwise);
    } else if (auto* o = std::get_if<instr::OracleTest>(&in)) {
      o->if_member = resolve(o->if_member), o->otherwise = resolve(o->otherwise);
    }
  }
  return Program(std::move(out), index_registers);
}

}  // namespace bss
