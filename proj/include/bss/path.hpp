#pragma once

// Symbolic runs on one input x. In M_add^1 every register holds k*x + l with
// integers k, l, so each executed test is a sign condition on such a term.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bss/vm.hpp"

namespace bss {

struct Affine {
  Integer k{0};
  Integer l{0};

  RealValue at(const RealValue& x) const;
  std::string to_string() const;
  friend bool operator==(const Affine&, const Affine&) = default;
};

enum class Relation { Ge, Gt, Eq, Ne, OracleIn, OracleOut };

const char* to_string(Relation r);

struct Atom {
  Relation rel = Relation::Ge;
  Affine term;               // sign atoms
  std::vector<Affine> args;  // oracle atoms: the queried tuple
  friend bool operator==(const Atom&, const Atom&) = default;
};

struct BranchStep {
  Label label = 0;
  bool taken = false;
  friend bool operator==(const BranchStep&, const BranchStep&) = default;
};

struct ConstraintSystem {
  std::vector<Atom> atoms;
  std::vector<BranchStep> path;  // every executed test, in order
  std::uint64_t steps = 0;
  bool halted = false;
};

/// Runs p on (x0) for at most t steps with registers tracked as k*x + l.
/// Throws SymbolicOverflow for a constant that is not an integer.
ConstraintSystem extract_path_constraints(const Program& p, const RealValue& x0, std::uint64_t t,
                                          const OracleSpec* oracle = nullptr);

/// Every atom holds at x (oracle atoms are re-asked).
bool satisfies(const ConstraintSystem& sys, const RealValue& x, const OracleSpec* oracle = nullptr);

/// The executed tests of p on (x) within t steps.
std::vector<BranchStep> branch_trace(const Program& p, const RealValue& x, std::uint64_t t,
                                     const OracleSpec* oracle = nullptr);

/// A rational with denominator <= denominator_bound whose t-step run takes
/// the same branches as the run on `target`. Throws PreconditionViolated if
/// p does not halt on the target within t steps.
std::optional<Rational> rational_shadow_search(const Program& p, const RealValue& target,
                                               std::uint64_t t, std::uint64_t denominator_bound,
                                               const OracleSpec* oracle = nullptr);

}  // namespace bss
