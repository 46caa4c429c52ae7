#include <algorithm>

#include "bss/builder.hpp"
#include "bss/error.hpp"
#include "bss/oracle.hpp"
#include "bss/primes.hpp"
#include "bss/problems.hpp"

namespace bss {

RQ nth_pair(std::uint64_t position) {
  if (position == 0) throw Error(ErrorCode::PreconditionViolated, "pair positions start at 1");
  // Diagonal d holds d pairs; pairs before diagonal d: d(d-1)/2.
  std::uint64_t d = 1;
  while (d * (d + 1) / 2 < position) ++d;
  const std::uint64_t r = position - d * (d - 1) / 2 - 1;
  return {r, d - r};
}

RQ next_pair(RQ pair) {
  if (pair.q == 1) return {0, pair.r + 2};
  return {pair.r + 1, pair.q - 1};
}

bool kappa_condition(unsigned long p, const RealValue& x, RQ pair) {
  const Rational bound(Integer(static_cast<unsigned long>(pair.r)), Integer(static_cast<unsigned long>(pair.q)));
  const Integer r2 = Integer(static_cast<unsigned long>(pair.r)) * pair.r;
  const Integer pq2 = Integer(p) * pair.q * pair.q;
  const int side = compare(x, RealValue(bound));
  return (side < 0 && r2 < pq2) || (side > 0 && r2 > pq2);
}

KappaResult kappa_semidecide(unsigned i, const RealValue& x, std::uint64_t budget) {
  if (i < 1) throw Error(ErrorCode::PreconditionViolated, "i must be >= 1");
  const unsigned long p = nth_prime(i);
  RQ pair{0, 1};
  for (std::uint64_t tested = 1; tested <= budget; ++tested, pair = next_pair(pair)) {
    if (kappa_condition(p, x, pair)) return KappaHalt{pair, tested};
  }
  return NotWithinBudget{budget};
}

namespace {

// Register layout of the assembled machine.
enum : RegIndex {
  kI = 1, kX = 2, kOne = 3, kZero = 4, kCount = 5, kPrime = 6,
  kT = 7, kS = 8, kProd = 9, kTmp = 10, kD = 11, kR = 12, kQ = 13,
  kQX = 14, kR2 = 15, kPQ2 = 16, kCtr = 17, kTmp2 = 18, kQ2 = 19,
};

// dst := a * n for a register n holding a natural number.
void multiply(ProgramBuilder& b, RegIndex dst, RegIndex a, RegIndex n) {
  auto loop = b.new_label(), body = b.new_label(), done = b.new_label();
  b.set(dst, 0);
  b.set(kCtr, 0);
  b.bind(loop);
  b.sub(kTmp2, kCtr, n);
  b.eq(kTmp2, done, body);
  b.bind(body);
  b.add(dst, dst, a);
  b.add(kCtr, kCtr, kOne);
  b.jump(loop);
  b.bind(done);
}

Program assemble_kappa() {
  ProgramBuilder b;
  b.set(kOne, 1);
  b.set(kZero, 0);

  // p := p_i by trial products t * s.
  auto next_candidate = b.new_label(), trial_t = b.new_label(), trial_s = b.new_label(),
       more_s = b.new_label(), next_t = b.new_label(), is_prime = b.new_label(),
       have_prime = b.new_label(), check_count = b.new_label(), not_equal = b.new_label();
  b.set(kCount, 1);
  b.add(kPrime, kOne, kOne);
  b.bind(check_count);
  b.sub(kTmp, kCount, kI);
  b.ge(kTmp, have_prime, next_candidate);
  b.bind(next_candidate);
  b.add(kPrime, kPrime, kOne);
  b.add(kT, kOne, kOne);
  b.bind(trial_t);
  b.sub(kTmp, kT, kPrime);
  b.ge(kTmp, is_prime, trial_s);  // t >= p: no factor found
  b.bind(trial_s);
  b.add(kProd, kT, kT);
  auto test_s = b.new_label();
  b.bind(test_s);
  b.sub(kTmp, kProd, kPrime);
  b.eq(kTmp, check_count, not_equal);  // composite: try the next candidate
  b.bind(not_equal);
  b.ge(kTmp, next_t, more_s);           // t * s > p
  b.bind(more_s);
  b.add(kProd, kProd, kT);
  b.jump(test_s);
  b.bind(next_t);
  b.add(kT, kT, kOne);
  b.jump(trial_t);
  b.bind(is_prime);
  b.add(kCount, kCount, kOne);
  b.jump(check_count);

  // Diagonal search over (r, q).
  b.bind(have_prime);
  auto diagonal = b.new_label(), pair = b.new_label(), second = b.new_label(),
       advance = b.new_label(), found = b.new_label(), first_b = b.new_label(),
       second_b = b.new_label(), next_diagonal = b.new_label();
  b.set(kD, 1);
  b.bind(diagonal);
  b.set(kR, 0);
  b.bind(pair);
  b.sub(kQ, kD, kR);
  multiply(b, kQX, kX, kQ);
  multiply(b, kR2, kR, kR);
  multiply(b, kQ2, kQ, kQ);
  multiply(b, kPQ2, kQ2, kPrime);
  // x < r/q and r^2 < p q^2
  b.sub(kTmp, kQX, kR);
  b.ge(kTmp, second, first_b);
  b.bind(first_b);
  b.sub(kTmp, kR2, kPQ2);
  b.ge(kTmp, second, found);
  // x > r/q and r^2 > p q^2
  b.bind(second);
  b.sub(kTmp, kR, kQX);
  b.ge(kTmp, advance, second_b);
  b.bind(second_b);
  b.sub(kTmp, kPQ2, kR2);
  b.ge(kTmp, advance, found);
  b.bind(advance);
  b.add(kR, kR, kOne);
  b.sub(kTmp, kR, kD);
  b.eq(kTmp, next_diagonal, pair);
  b.bind(next_diagonal);
  b.add(kD, kD, kOne);
  b.jump(diagonal);
  b.bind(found);
  b.halt();
  return b.build();
}

}  // namespace

const Program& kappa_program() {
  static const Program p = assemble_kappa();
  return p;
}

const BitString& kappa_code() {
  static const BitString code = encode(kappa_program());
  return code;
}

std::vector<RealValue> p_i_point(const RealValue& i, const RealValue& x) {
  std::vector<RealValue> point{RealValue(2), i, x};
  for (auto bit : kappa_code().bits()) point.emplace_back(static_cast<long>(bit));
  return point;
}

bool has_p_shape(std::span<const RealValue> point, unsigned j) {
  const auto& bits = kappa_code().bits();
  if (point.size() != 3 + bits.size()) return false;
  if (point[0] != RealValue(2) || point[1] != RealValue(static_cast<long>(j))) return false;
  for (std::size_t b = 0; b < bits.size(); ++b) {
    if (point[3 + b] != RealValue(static_cast<long>(bits[b]))) return false;
  }
  return true;
}

bool p_i_member(std::span<const RealValue> point, unsigned i) {
  if (i < 1 || !has_p_shape(point, i)) return false;
  return point[2] != RealValue::generator(GeneratorId::sqrt_prime(i));
}

int sqrt_select_decide(unsigned k, const RealValue& x, unsigned i, std::uint64_t* pairs_used) {
  if (k < 1 || k > i) throw Error(ErrorCode::PreconditionViolated, "need 1 <= k <= i");
  if (pairs_used) *pairs_used = 0;
  const OracleSpec O = sqrt_primes_oracle(i);
  const std::vector<RealValue> query{x};
  if (!O.query(query)) return 0;

  std::vector<unsigned> alive;
  std::vector<unsigned long> primes;
  for (unsigned j = 1; j <= i; ++j) alive.push_back(j), primes.push_back(nth_prime(j));
  RQ pair{0, 1};
  for (std::uint64_t used = 1;; ++used, pair = next_pair(pair)) {
    if (alive.size() == 1) return 1;
    if (pairs_used) *pairs_used = used;
    for (auto it = alive.begin(); it != alive.end();) {
      if (kappa_condition(primes[*it - 1], x, pair)) {
        if (*it == k) return 0;
        it = alive.erase(it);
      } else {
        ++it;
      }
    }
  }
}

}  // namespace bss
