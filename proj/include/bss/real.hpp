#pragma once

// Exact values of the Q-span of {1} and a set of generators (square roots
// of primes and pi). Every register of an additive machine started on such
// inputs stays inside this span, so all tests become exact.
//
// Equality is decided symbolically: {1, sqrt(p_1), ..., sqrt(p_k), pi} is
// assumed linearly independent over Q (true for square roots of distinct
// primes; pi is transcendental). Order is decided by interval refinement.

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace bss {

using Integer = mpz_class;
using Rational = mpq_class;

std::string to_string(const Rational& q);
Rational parse_rational(std::string_view text);

class GeneratorId {
 public:
  enum class Kind : std::uint8_t { SqrtPrime, Pi };

  /// sqrt(p_index) where p_1 = 2, p_2 = 3, ...
  static GeneratorId sqrt_prime(unsigned index);
  /// sqrt(p) for a prime p; throws InvalidValue if p is not prime.
  static GeneratorId sqrt_of(unsigned long prime);
  static GeneratorId pi() { return GeneratorId(Kind::Pi, 0); }

  Kind kind() const noexcept { return kind_; }
  unsigned index() const noexcept { return index_; }
  /// The prime under the root; only meaningful for SqrtPrime.
  unsigned long prime() const;

  std::string to_string() const;

  friend auto operator<=>(const GeneratorId&, const GeneratorId&) = default;

 private:
  GeneratorId(Kind kind, unsigned index) : kind_(kind), index_(index) {}

  Kind kind_;
  unsigned index_;
};

struct RationalInterval {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  bool contains(const Rational& q) const { return lo <= q && q <= hi; }
  bool intersects(const RationalInterval& other) const {
    return lo <= other.hi && other.lo <= hi;
  }
};

/// An interval of width <= max_width containing the generator. Intervals are
/// produced by a fixed halving schedule, so a smaller width always yields an
/// interval nested inside the one returned for a larger width.
RationalInterval refine_interval(GeneratorId g, const Rational& max_width);

class RealValue {
 public:
  using Coefficients = std::map<GeneratorId, Rational>;

  RealValue() = default;
  RealValue(const Rational& constant);  // NOLINT(google-explicit-constructor)
  RealValue(long constant) : RealValue(Rational(constant)) {}  // NOLINT
  RealValue(Rational constant, Coefficients coeffs);

  static RealValue generator(GeneratorId g,
                             const Rational& coefficient = Rational(1));

  const Rational& constant() const noexcept { return constant_; }
  const Coefficients& coeffs() const noexcept { return coeffs_; }
  Rational coeff(GeneratorId g) const;

  bool is_zero() const noexcept { return coeffs_.empty() && constant_ == 0; }
  bool is_rational() const noexcept { return coeffs_.empty(); }
  bool is_integer() const;

  RealValue operator-() const;
  RealValue& operator+=(const RealValue& other);
  RealValue& operator-=(const RealValue& other);
  RealValue& operator*=(const Rational& factor);

  friend RealValue operator+(RealValue a, const RealValue& b) { return a += b; }
  friend RealValue operator-(RealValue a, const RealValue& b) { return a -= b; }
  friend RealValue operator*(RealValue a, const Rational& f) { return a *= f; }
  friend RealValue operator*(const Rational& f, RealValue a) { return a *= f; }

  friend bool operator==(const RealValue& a, const RealValue& b) {
    return a.constant_ == b.constant_ && a.coeffs_ == b.coeffs_;
  }

  /// Enclosure of the value from generator intervals of width <= max_width.
  RationalInterval enclosure(const Rational& max_width) const;

  /// Canonical text form, e.g. "3 - 2*sqrt(2) + 1/3*pi".
  std::string to_string() const;

 private:
  void erase_zeros();

  Rational constant_{0};
  Coefficients coeffs_;
};

RealValue make_rational(const Rational& q);

enum class ArithOp { Add, Sub };
RealValue combine(const RealValue& a, const RealValue& b, ArithOp op);

/// -1, 0 or +1. Zero is decided on coefficients; otherwise the enclosure is
/// refined (width 1, 1/2, 1/4, ...) until it excludes zero.
int sign(const RealValue& a);

/// Exact three-way comparison through sign(a - b).
int compare(const RealValue& a, const RealValue& b);

/// Parses the text form produced by RealValue::to_string. Accepts terms
/// "q", "q*sqrt(p)", "sqrt(p)", "q*pi", "pi" joined by + and -, where q is
/// "n" or "n/d".
RealValue parse_real(std::string_view text);

}  // namespace bss
