#pragma once

#include <cstdint>
#include <set>
#include <string_view>
#include <vector>

#include "bss/vm.hpp"

namespace bss {

/// O = {} (every query answers "out").
OracleSpec empty_oracle();

/// Finite set of positive integers, queried as 1-tuples. Tuples of other
/// lengths or with non-integer components answer "out".
OracleSpec integer_set_oracle(std::set<std::uint64_t> members, std::string name = "finite-set");

/// {(x, y) in N^2 | x >= y}.
OracleSpec nat_pair_ge_oracle();

/// O_i = {sqrt(p_1), ..., sqrt(p_i)}, queried as 1-tuples.
OracleSpec sqrt_primes_oracle(unsigned i);

/// Tuples whose components are all rational.
OracleSpec rational_tuples_oracle();

/// An explicit finite list of tuples; membership is exact equality.
OracleSpec tuple_list_oracle(std::vector<std::vector<RealValue>> tuples,
                             std::string name = "tuple-list");

/// Looks up "none", "empty", "nat-pair-ge", "rationals", "sqrt-primes:<i>".
/// Throws InvalidValue for unknown names.
OracleSpec oracle_by_name(std::string_view name);

}  // namespace bss
