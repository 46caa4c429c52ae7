#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "bss/encoding.hpp"
#include "bss/vm.hpp"

namespace bss {

/// x in Q (the one-component case of L_n).
bool rationality_decide(const RealValue& x);

/// q_0 + q_1 x_1 + ... + q_{n-1} x_{n-1} = x_n.
bool satisfies_affine(std::span<const RealValue> xs, std::span<const Rational> q);

/// Exact membership in L_n by Gaussian elimination over Q in generator
/// coordinates. Returns a witness (q_0, ..., q_{n-1}) for members.
std::optional<std::vector<Rational>> l_n_decide(std::span<const RealValue> xs);

/// Height |num| + den; rationals are listed by height, then by denominator,
/// then + before -. Position 1 is 0.
std::uint64_t rational_height(const Rational& q);
std::vector<Rational> rationals_up_to_height(std::uint64_t h);

/// Enumerates Q^m level by level: level H holds the tuples whose largest
/// coordinate height is H, in lexicographic order of the coordinates'
/// positions in rationals_up_to_height(H).
class RationalSpiral {
 public:
  explicit RationalSpiral(std::size_t m);
  const std::vector<Rational>& next();
  std::uint64_t position() const noexcept { return position_; }

 private:
  bool advance_digits();
  void open_level();

  std::size_t m_;
  std::uint64_t level_ = 0;
  std::vector<Rational> table_;
  std::size_t previous_count_ = 0;
  std::vector<std::size_t> digits_;
  std::vector<Rational> current_;
  std::uint64_t position_ = 0;
};

/// 1-based position of q in RationalSpiral(q.size()).
std::uint64_t spiral_position(std::span<const Rational> q);

struct Found {
  std::vector<Rational> witness;
  std::uint64_t tested = 0;
};
struct NotWithinBudget {
  std::uint64_t tested = 0;
};
using SemiResult = std::variant<Found, NotWithinBudget>;

/// Tests the first `budget` coefficient tuples of the spiral.
SemiResult l_n_semidecide(std::span<const RealValue> xs, std::uint64_t budget);

/// (r, q) in N x N_+ by d = r + q = 1, 2, ..., then r = 0 .. d - 1.
struct RQ {
  std::uint64_t r = 0;
  std::uint64_t q = 1;
  friend bool operator==(const RQ&, const RQ&) = default;
};
RQ nth_pair(std::uint64_t position);  // position >= 1
RQ next_pair(RQ pair);

/// (x < r/q and r^2/q^2 < p) or (x > r/q and r^2/q^2 > p).
bool kappa_condition(unsigned long p, const RealValue& x, RQ pair);

struct KappaHalt {
  RQ pair;
  std::uint64_t tested = 0;
};
using KappaResult = std::variant<KappaHalt, NotWithinBudget>;

/// Searches the first `budget` pairs for one meeting the condition for p_i.
KappaResult kappa_semidecide(unsigned i, const RealValue& x, std::uint64_t budget);

/// The assembled machine K on inputs (i, x).
const Program& kappa_program();
const BitString& kappa_code();

/// The tuple (2, i, x, code(K)).
std::vector<RealValue> p_i_point(const RealValue& i, const RealValue& x);
bool has_p_shape(std::span<const RealValue> point, unsigned j);
bool p_i_member(std::span<const RealValue> point, unsigned i);

/// (n, x_1..x_n, code bits).
std::vector<RealValue> h_point(std::span<const RealValue> x, const BitString& code);

struct Accepted {
  std::string route;  // "H^{1,=}" or "P_<j>"
  std::uint64_t rounds = 0;
};
using HResult = std::variant<Accepted, NotWithinBudget>;

/// Round-robin over the H^{1,=} route (one simulated step per round) and the
/// P_j routes for j <= i (one (r, q) pair per round).
HResult h_i_semidecide(std::span<const RealValue> point, unsigned i, std::uint64_t budget);

/// 1 iff x = sqrt(p_k), for 1 <= k <= i; asks O_i first, then deletes
/// indices j by separating rationals.
int sqrt_select_decide(unsigned k, const RealValue& x, unsigned i,
                       std::uint64_t* pairs_used = nullptr);

}  // namespace bss
