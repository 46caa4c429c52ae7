#pragma once

// Witness machines for the lowness of A and the two bounded semi-decisions
// built from them.
//
// Hook form: the machine asks a reserved oracle about the construction.
//   (1, x, s)  answers  x in A_s
//   (2, k, j)  answers  M_k^{A_j}(k) halts within j steps
// Pure form: an oracle-free program with the answers for a fixed stage budget
// folded in. It is encodable, so its Goedel index can be used with K.

#include <cstdint>
#include <memory>
#include <variant>

#include "bss/priority.hpp"

namespace bss {

enum class WitnessMode { Hook, Pure };

OracleSpec construction_hook(std::shared_ptr<Construction> c);

/// L_x: halts iff x enters A (by stage `stage_budget`; 0 means no bound,
/// hook form only). Pure form needs `c`.
Program build_Lx(std::uint64_t x, std::uint64_t stage_budget, WitnessMode mode,
                 Construction* c = nullptr);

/// L_i^(k): halts iff M_k^{A_j}(k) halts within j steps for some j > i
/// (j <= stage_budget when it is nonzero).
Program build_Lik(std::uint64_t i, std::uint64_t k, std::uint64_t stage_budget, WitnessMode mode,
                  Construction* c = nullptr);

/// K^A semi-decision: simulates M_k on k, answering each query "x in A" by
/// running the hook-form L_x for `horizon` steps. Inputs that are not
/// positive integers never halt.
DiagonalVerdict semi_decide_KA(const RealValue& k, std::shared_ptr<Construction> c,
                               std::uint64_t horizon);

struct Witness {
  std::uint64_t i = 0;
};
struct NoWitness {};

/// Complement semi-decision: the first i <= max_i whose L_i^(k) does not halt
/// within `horizon` steps.
std::variant<Witness, NoWitness> semi_decide_not_KA(const RealValue& k,
                                                    std::shared_ptr<Construction> c,
                                                    std::uint64_t max_i, std::uint64_t horizon);

}  // namespace bss
