#pragma once

// Dovetailed enumeration of the positive-integer part of a halting set.
//
// Round r (r = 1, 2, ...) adds input n = r and lets every input n <= r run
// until it has used r steps in total; inputs that halt during the round are
// emitted ordered by (t, n). The enumeration after R rounds is a prefix of
// the enumeration after R + 1 rounds.

#include <cstdint>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "bss/encoding.hpp"
#include "bss/vm.hpp"

namespace bss {

struct HaltingPair {
  std::uint64_t n = 0;
  std::uint64_t t = 0;
  friend bool operator==(const HaltingPair&, const HaltingPair&) = default;
};

/// Resumable dovetailer for one oracle-free program.
class HaltingEnumerator {
 public:
  /// Throws PreconditionViolated if p has oracle instructions.
  explicit HaltingEnumerator(Program p);

  /// Runs rounds until `rounds()` reaches `r`.
  void advance_to(std::uint64_t r);
  std::uint64_t rounds() const noexcept { return rounds_; }

  /// Pairs emitted so far, in enumeration order.
  const std::vector<HaltingPair>& pairs() const noexcept { return pairs_; }
  /// Number of pairs emitted by the end of round r (r <= rounds()).
  std::size_t emitted_by(std::uint64_t r) const;

  const Program& program() const noexcept { return program_; }

 private:
  Program program_;
  std::uint64_t rounds_ = 0;
  std::vector<std::optional<MachineState>> running_;  // index n - 1; empty once halted
  std::vector<HaltingPair> pairs_;
  std::vector<std::size_t> emitted_after_round_;      // index r - 1
};

/// First pairs of the enumeration after `budget` dovetail rounds.
std::vector<HaltingPair> enumerate_halting_pairs(const Program& p, std::uint64_t budget);

/// True iff p halts on (n) after exactly t steps.
bool replay_halts_exactly(const Program& p, const HaltingPair& pair);

struct NotYet {};

/// The j-th n enumerated by the machine with index i (read in M_add^{1,=})
/// within `budget` rounds.
std::variant<std::uint64_t, NotYet> nbar_output(const Integer& i, std::uint64_t j,
                                                std::uint64_t budget);

struct EnumerationSnapshot {
  Integer i;
  std::uint64_t s = 0;
  std::set<std::uint64_t> members;
};

/// W_{i,s}: everything machine i enumerates within s rounds.
EnumerationSnapshot snapshot_W(const Integer& i, std::uint64_t s);

struct HaltsAt {
  std::uint64_t steps = 0;
  std::vector<RealValue> output;
};
struct NotWithin {};
using DiagonalVerdict = std::variant<HaltsAt, NotWithin>;

/// Runs machine k of M_add^1 with oracle on input (k) for at most t steps.
DiagonalVerdict diagonal_halts(const Integer& k, const OracleSpec& oracle, std::uint64_t t);

/// Same, for an explicit program standing in for machine k.
DiagonalVerdict diagonal_halts(const Program& p, const Integer& k, const OracleSpec& oracle,
                               std::uint64_t t);

}  // namespace bss
