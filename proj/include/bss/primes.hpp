#pragma once

#include <optional>

namespace bss {

/// p_1 = 2, p_2 = 3, ... Counts candidates upward from 2 and keeps those
/// without a nontrivial factorization. Results are memoized.
unsigned long nth_prime(unsigned j);

bool is_prime(unsigned long n);

/// j with nth_prime(j) == p, or nullopt if p is not prime.
std::optional<unsigned> prime_index(unsigned long p);

}  // namespace bss
