#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "bss/program.hpp"
#include "bss/real.hpp"

namespace bss {

/// Membership procedure for an oracle set O, a subset of R^infinity. Must be
/// total and deterministic on every tuple it is asked about.
struct OracleSpec {
  std::string name;
  std::function<bool(std::span<const RealValue>)> contains;

  bool query(std::span<const RealValue> tuple) const { return contains(tuple); }
};

template <class Value>
struct BasicMachineState {
  Label pc = 1;
  std::map<RegIndex, Value> registers;  // absent registers hold 0
  std::vector<std::uint64_t> index;     // I_1 .. I_{k_M}
  std::uint64_t steps = 0;

  friend bool operator==(const BasicMachineState&, const BasicMachineState&) = default;
};

using MachineState = BasicMachineState<RealValue>;

struct OracleQuery {
  std::vector<RealValue> tuple;
  bool member = false;
};

/// What a single step did. `label` is the instruction executed; the state's
/// pc already points at the successor.
struct StepInfo {
  Label label = 0;
  std::optional<RegIndex> changed_register;
  std::optional<RegIndex> changed_index;
  std::optional<OracleQuery> query;
  /// Set when the executed instruction was a test: the branch taken.
  std::optional<bool> branch;
  /// Set when the step halted: (Z_1, ..., Z_{I_1}).
  std::optional<std::vector<RealValue>> output;
};

using StepObserver = std::function<void(const MachineState&, const StepInfo&)>;

/// Z_1..Z_n := input, I_1..I_{k_M} := n, pc := 1. Throws EmptyInput.
MachineState init_state(const Program& p, std::span<const RealValue> input);

/// Executes exactly one instruction. Throws OracleMissing when an oracle test
/// runs without an oracle. Must not be called on a halted state.
StepInfo step(MachineState& s, const Program& p, const OracleSpec* oracle);

struct Halted {
  std::uint64_t halted_at = 0;
  std::vector<RealValue> output;
};
struct Running {
  MachineState state;
};
using RunOutcome = std::variant<Halted, Running>;

inline bool halted(const RunOutcome& r) { return std::holds_alternative<Halted>(r); }

/// Runs until halt or until `budget` steps have executed in total.
RunOutcome run_bounded(const Program& p, std::span<const RealValue> input,
                       const OracleSpec* oracle, std::uint64_t budget,
                       const StepObserver& observer = {});

/// Continues a Running state for at most `more` further steps.
RunOutcome resume(MachineState state, const Program& p, const OracleSpec* oracle,
                  std::uint64_t more, const StepObserver& observer = {});

/// Reads Z_r (0 when unwritten).
RealValue read_register(const MachineState& s, RegIndex r);

}  // namespace bss
