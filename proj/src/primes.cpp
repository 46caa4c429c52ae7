#include "bss/primes.hpp"

#include <mutex>
#include <vector>

#include "bss/error.hpp"

namespace bss {

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long t = 2; t * t <= n; ++t) {
    if (n % t == 0) return false;
  }
  return true;
}

unsigned long nth_prime(unsigned j) {
  if (j == 0) throw Error(ErrorCode::PreconditionViolated, "nth_prime: j must be >= 1");
  static std::mutex mutex;
  static std::vector<unsigned long> found{2};
  std::lock_guard lock(mutex);
  // k counts primes seen so far, p is the last candidate examined.
  unsigned long p = found.back();
  while (found.size() < j) {
    ++p;
    if (is_prime(p)) found.push_back(p);
  }
  return found[j - 1];
}

std::optional<unsigned> prime_index(unsigned long p) {
  if (!is_prime(p)) return std::nullopt;
  unsigned j = 1;
  while (nth_prime(j) < p) ++j;
  return j;
}

}  // namespace bss
