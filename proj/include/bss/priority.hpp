#pragma once

// Stage construction of a simple low set A of positive integers.
//
//   A_1 = {}
//   a(j, s)    greatest integer in a query of M_j^{A_s}(j) if it halts within
//              s steps, else 0
//   phi(i,s,x) 2i < x  and  a(j, s) < x for all j <= i
//   I_s        { i <= s : A_s and W_{i,s} disjoint, some x in W_{i,s} with phi }
//   A_{s+1}    A_s + { min x in W_{i_s,s} with phi(i_s,s,x) },  i_s = min I_s
//
// The W-list and the M-list are pluggable; see GenuineEnumerators and
// load_synthetic().

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bss/simulation.hpp"

namespace bss {

using Members = std::set<std::uint64_t>;

class EnumeratorList {
 public:
  virtual ~EnumeratorList() = default;
  /// W_{i,s}; must be monotone in s.
  virtual Members W(std::uint64_t i, std::uint64_t s) = 0;
  /// Indices known to enumerate infinite sets (for the simplicity check).
  virtual std::vector<std::uint64_t> infinite_indices() const { return {}; }
};

class MachineList {
 public:
  virtual ~MachineList() = default;
  virtual const Program& machine(std::uint64_t j) = 0;
};

/// W_i from machine_at(i, M_add^{1,=}) through the dovetailer.
class GenuineEnumerators final : public EnumeratorList {
 public:
  Members W(std::uint64_t i, std::uint64_t s) override;

 private:
  std::map<std::uint64_t, std::unique_ptr<HaltingEnumerator>> cache_;
};

/// M_j = machine_at(j, M_add^1 with oracle).
class GenuineMachines final : public MachineList {
 public:
  const Program& machine(std::uint64_t j) override;

 private:
  std::map<std::uint64_t, Program> cache_;
};

/// Runs one oracle program on one input against a growing finite set,
/// restarting only when the set changed in a way the run could have seen.
class OracleRunTracker {
 public:
  OracleRunTracker(const Program& p, std::vector<RealValue> input);

  struct Status {
    bool halted = false;
    std::uint64_t steps = 0;
    std::vector<RealValue> output;
    Integer max_query{0};  // greatest integer component of any queried tuple, >= 0
  };

  /// State after min(budget, halting time) steps of the run against `A`.
  const Status& advance(const Members& A, std::uint64_t budget);

 private:
  void restart();

  const Program* program_;
  std::vector<RealValue> input_;
  std::optional<MachineState> state_;
  std::vector<std::vector<RealValue>> queries_;
  Members seen_;  // the set the current run was answered from
  Status status_;
};

using QueryBoundTable = std::map<std::uint64_t, Integer>;

/// a(j, s) by direct simulation of M against A_s.
Integer query_bound(const Program& machine, std::uint64_t j, std::uint64_t s, const Members& A_s);

bool phi(std::uint64_t i, std::uint64_t x, const QueryBoundTable& bounds);

struct ActiveEntry {
  std::uint64_t s = 0;
  std::uint64_t i = 0;
  std::uint64_t x = 0;
  friend bool operator==(const ActiveEntry&, const ActiveEntry&) = default;
};

struct StageRecord {
  std::uint64_t s = 1;
  Members A;
  std::vector<ActiveEntry> active_history;
  /// Indices i <= s-1 whose W_{i,s-1} met A_{s-1} when last examined.
  Members satisfied;
};

/// What stage s did.
struct StageEvent {
  std::uint64_t s = 0;
  std::vector<std::uint64_t> I;
  std::optional<std::uint64_t> i_s;
  std::optional<std::uint64_t> x;
  std::size_t A_size = 0;  // |A_{s+1}|
  friend bool operator==(const StageEvent&, const StageEvent&) = default;
};

/// One stage from scratch: returns the record for stage s + 1.
StageRecord stage_step(const StageRecord& r, EnumeratorList& W, MachineList& M,
                       StageEvent* event = nullptr);

/// Incremental construction; thread-safe.
class Construction {
 public:
  Construction(std::shared_ptr<EnumeratorList> W, std::shared_ptr<MachineList> M);

  /// Performs stages until the current stage is S (so A_S is known).
  void run_to(std::uint64_t S);

  StageRecord record() const;
  std::vector<StageEvent> events() const;
  /// A_s, running stages as needed.
  Members A_at(std::uint64_t s);
  /// Stage at which x entered A (x is in A_{s+1}), if it did by stage S - 1.
  std::optional<std::uint64_t> entered_at(std::uint64_t x) const;

  MachineList& machines() { return *M_; }
  EnumeratorList& enumerators() { return *W_; }

 private:
  void step_locked();
  Integer bound_locked(std::uint64_t j);

  mutable std::mutex mutex_;
  std::shared_ptr<EnumeratorList> W_;
  std::shared_ptr<MachineList> M_;
  StageRecord record_;
  std::vector<StageEvent> events_;
  std::map<std::uint64_t, std::uint64_t> additions_;  // x -> stage
  std::map<std::uint64_t, std::unique_ptr<OracleRunTracker>> trackers_;
};

/// Stages 1..S-1 from A_1 = {}; the record holds A_S.
std::pair<StageRecord, std::vector<StageEvent>> run_stages(std::uint64_t S,
                                                           std::shared_ptr<EnumeratorList> W,
                                                           std::shared_ptr<MachineList> M);

/// Smallest i with |A n {0..2i}| >= i, if any.
std::optional<std::uint64_t> first_sparsity_violation(const Members& A);

/// Checks (N_n) at the computed horizon: after the last stage whose active
/// index is <= n, once M_n^{A_t}(n) halts within t steps, every later stage
/// t' < S agrees on halting and output.
bool lowness_coherent(Construction& c, std::uint64_t n, std::uint64_t S);

struct SyntheticSetup {
  std::shared_ptr<EnumeratorList> enumerators;
  std::shared_ptr<MachineList> machines;
};

/// Fixture format:
/// {
///   "enumerators": [
///     {"i": 1, "kind": "list", "members": [5, [9, 40]]},         // [x, from stage]
///     {"i": 2, "kind": "arithmetic", "start": 3, "step": 4, "every": 2, "from": 1},
///     {"i": 3, "kind": "program", "program": "1: halt", "infinite": true}
///   ],
///   "machines": [ {"j": 2, "program": "..."} ]
/// }
/// Unlisted W_i are empty; unlisted M_j are the trivial machine. Arithmetic
/// enumerators are infinite: W_{i,s} = { start + step*m : m <= (s - from)/every }.
SyntheticSetup load_synthetic(std::string_view json_text);
SyntheticSetup load_synthetic_file(const std::filesystem::path& path);

}  // namespace bss
