#include "bss/vm.hpp"

#include "bss/detail/interpreter.hpp"

namespace bss {

namespace {

struct ConcreteDomain {
  using Value = RealValue;

  Value zero() const { return {}; }
  bool is_zero(const Value& v) const { return v.is_zero(); }
  Value constant(const RealValue& c) const { return c; }
  Value add(const Value& a, const Value& b) const { return a + b; }
  Value sub(const Value& a, const Value& b) const { return a - b; }
  int sign(const Value& v) const { return bss::sign(v); }
  const RealValue& concrete(const Value& v) const { return v; }
};

}  // namespace

MachineState init_state(const Program& p, std::span<const RealValue> input) {
  return detail::init(p, ConcreteDomain{}, input);
}

StepInfo step(MachineState& s, const Program& p, const OracleSpec* oracle) {
  return detail::step(s, p, oracle, ConcreteDomain{});
}

RealValue read_register(const MachineState& s, RegIndex r) {
  return detail::read(s, ConcreteDomain{}, r);
}

RunOutcome resume(MachineState state, const Program& p, const OracleSpec* oracle,
                  std::uint64_t more, const StepObserver& observer) {
  for (std::uint64_t i = 0; i < more; ++i) {
    StepInfo info = step(state, p, oracle);
    if (observer) observer(state, info);
    if (info.output) return Halted{state.steps, std::move(*info.output)};
  }
  return Running{std::move(state)};
}

RunOutcome run_bounded(const Program& p, std::span<const RealValue> input,
                       const OracleSpec* oracle, std::uint64_t budget,
                       const StepObserver& observer) {
  return resume(init_state(p, input), p, oracle, budget, observer);
}

}  // namespace bss
