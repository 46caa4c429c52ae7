#include "bss/problems.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "bss/error.hpp"
#include "bss/primes.hpp"

namespace bss {

bool rationality_decide(const RealValue& x) { return x.is_rational(); }

bool satisfies_affine(std::span<const RealValue> xs, std::span<const Rational> q) {
  if (xs.empty() || q.size() != xs.size()) return false;
  RealValue sum(q[0]);
  for (std::size_t i = 1; i < q.size(); ++i) sum += xs[i - 1] * q[i];
  return sum == xs.back();
}

std::optional<std::vector<Rational>> l_n_decide(std::span<const RealValue> xs) {
  if (xs.empty()) throw Error(ErrorCode::PreconditionViolated, "empty tuple");
  const std::size_t n = xs.size();

  // Coordinates: row 0 is the constant, then one row per generator.
  std::map<GeneratorId, std::size_t> rows;
  for (const auto& x : xs) {
    for (const auto& [g, c] : x.coeffs()) rows.emplace(g, 0);
  }
  std::size_t next_row = 1;
  for (auto& [g, r] : rows) r = next_row++;
  auto column = [&](const RealValue& v) {
    std::vector<Rational> col(next_row);
    col[0] = v.constant();
    for (const auto& [g, c] : v.coeffs()) col[rows.at(g)] = c;
    return col;
  };

  // Unknowns q_0..q_{n-1}; columns 1, x_1, ..., x_{n-1}; right side x_n.
  const std::size_t m = next_row;
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(n + 1));
  a[0][0] = 1;
  for (std::size_t j = 1; j < n; ++j) {
    auto col = column(xs[j - 1]);
    for (std::size_t r = 0; r < m; ++r) a[r][j] = col[r];
  }
  auto rhs = column(xs[n - 1]);
  for (std::size_t r = 0; r < m; ++r) a[r][n] = rhs[r];

  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t p = row;
    while (p < m && a[p][col] == 0) ++p;
    if (p == m) continue;
    std::swap(a[p], a[row]);
    const Rational inv = 1 / a[row][col];
    for (auto& v : a[row]) v *= inv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == row || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t c = col; c <= n; ++c) a[r][c] -= f * a[row][c];
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (std::size_t r = row; r < m; ++r) {
    if (a[r][n] != 0) return std::nullopt;
  }
  std::vector<Rational> q(n);
  for (std::size_t r = 0; r < pivot_col.size(); ++r) q[pivot_col[r]] = a[r][n];
  return q;
}

std::uint64_t rational_height(const Rational& q) {
  Integer h = abs(q.get_num()) + q.get_den();
  if (!h.fits_ulong_p()) throw Error(ErrorCode::PreconditionViolated, "height too large");
  return h.get_ui();
}

std::vector<Rational> rationals_up_to_height(std::uint64_t h) {
  std::vector<Rational> out;
  for (std::uint64_t height = 1; height <= h; ++height) {
    for (std::uint64_t den = 1; den <= height; ++den) {
      const std::uint64_t num = height - den;
      if (num == 0) {
        if (den == 1) out.emplace_back(0);
        continue;
      }
      if (std::gcd(num, den) != 1) continue;
      Rational q(Integer(static_cast<unsigned long>(num)), Integer(static_cast<unsigned long>(den)));
      out.push_back(q);
      out.push_back(-q);
    }
  }
  return out;
}

RationalSpiral::RationalSpiral(std::size_t m) : m_(m) {
  if (m == 0) throw Error(ErrorCode::PreconditionViolated, "spiral dimension must be >= 1");
}

void RationalSpiral::open_level() {
  ++level_;
  previous_count_ = table_.size();
  table_ = rationals_up_to_height(level_);
  digits_.assign(m_, 0);
}

bool RationalSpiral::advance_digits() {
  for (std::size_t pos = m_; pos-- > 0;) {
    if (++digits_[pos] < table_.size()) return true;
    digits_[pos] = 0;
  }
  return false;
}

const std::vector<Rational>& RationalSpiral::next() {
  auto fresh = [&] {
    return std::any_of(digits_.begin(), digits_.end(),
                       [&](std::size_t d) { return d >= previous_count_; });
  };
  bool have = position_ > 0 && advance_digits();
  for (;;) {
    if (!have) {
      open_level();
      have = true;
    }
    if (fresh()) break;
    have = advance_digits();
  }
  current_.resize(m_);
  for (std::size_t k = 0; k < m_; ++k) current_[k] = table_[digits_[k]];
  ++position_;
  return current_;
}

std::uint64_t spiral_position(std::span<const Rational> q) {
  std::uint64_t height = 1;
  for (const auto& v : q) height = std::max(height, rational_height(v));
  RationalSpiral spiral(q.size());
  for (;;) {
    const auto& t = spiral.next();
    if (std::equal(t.begin(), t.end(), q.begin(), q.end())) return spiral.position();
    std::uint64_t h = 1;
    for (const auto& v : t) h = std::max(h, rational_height(v));
    if (h > height) throw Error(ErrorCode::InvalidValue, "spiral passed the tuple's level");
  }
}

SemiResult l_n_semidecide(std::span<const RealValue> xs, std::uint64_t budget) {
  if (xs.empty()) throw Error(ErrorCode::PreconditionViolated, "empty tuple");
  RationalSpiral spiral(xs.size());
  for (std::uint64_t tested = 1; tested <= budget; ++tested) {
    const auto& q = spiral.next();
    if (satisfies_affine(xs, q)) return Found{q, tested};
  }
  return NotWithinBudget{budget};
}

std::vector<RealValue> h_point(std::span<const RealValue> x, const BitString& code) {
  std::vector<RealValue> point{RealValue(static_cast<long>(x.size()))};
  point.insert(point.end(), x.begin(), x.end());
  for (auto bit : code.bits()) point.emplace_back(static_cast<long>(bit));
  return point;
}

namespace {

// (n . x . code) split by the leading n; nullopt if the shape is wrong.
struct HParts {
  std::vector<RealValue> x;
  Program program;
};

std::optional<HParts> split_h_point(std::span<const RealValue> point) {
  if (point.empty() || !point[0].is_integer()) return std::nullopt;
  const Integer n = point[0].constant().get_num();
  if (n < 1 || n >= static_cast<long>(point.size())) return std::nullopt;
  const std::size_t len = n.get_ui();
  std::vector<std::uint8_t> bits;
  for (std::size_t k = 1 + len; k < point.size(); ++k) {
    if (point[k] == RealValue(0)) {
      bits.push_back(0);
    } else if (point[k] == RealValue(1)) {
      bits.push_back(1);
    } else {
      return std::nullopt;
    }
  }
  auto p = decode(BitString(std::move(bits)));
  if (!p || !kEqualityDialect.admits(p->dialect())) return std::nullopt;
  return HParts{std::vector<RealValue>(point.begin() + 1, point.begin() + 1 + len), std::move(*p)};
}

}  // namespace

HResult h_i_semidecide(std::span<const RealValue> point, unsigned i, std::uint64_t budget) {
  std::optional<HParts> h = split_h_point(point);
  std::optional<MachineState> state;
  if (h) state = init_state(h->program, h->x);

  struct Route {
    unsigned j;
    unsigned long p;
    RQ pair{0, 1};
  };
  std::vector<Route> routes;
  for (unsigned j = 1; j <= i; ++j) {
    if (has_p_shape(point, j)) routes.push_back({j, nth_prime(j)});
  }

  for (std::uint64_t round = 1; round <= budget; ++round) {
    if (state) {
      if (step(*state, h->program, nullptr).output) return Accepted{"H^{1,=}", round};
    }
    for (auto& r : routes) {
      if (kappa_condition(r.p, point[2], r.pair)) {
        return Accepted{"P_" + std::to_string(r.j), round};
      }
      r.pair = next_pair(r.pair);
    }
  }
  return NotWithinBudget{budget};
}

}  // namespace bss
