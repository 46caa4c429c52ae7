#include "bss/real.hpp"

#include <cctype>
#include <mutex>
#include <sstream>
#include <vector>

#include "bss/error.hpp"
#include "bss/primes.hpp"

namespace bss {

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&] {
    return Error(ErrorCode::InvalidValue, "not a rational: '" + s + "'");
  };
  if (s.empty()) throw bad();
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool slash = false;
  bool digit_before = false, digit_after = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      (slash ? digit_after : digit_before) = true;
    } else if (c == '/' && !slash) {
      slash = true;
    } else {
      throw bad();
    }
  }
  if (!digit_before || (slash && !digit_after)) throw bad();
  if (s[0] == '+') s.erase(0, 1);
  Rational q;
  if (q.set_str(s, 10) != 0) throw bad();
  if (q.get_den() == 0) throw Error(ErrorCode::InvalidValue, "zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

// ---------------------------------------------------------------------------
// Generators

GeneratorId GeneratorId::sqrt_prime(unsigned index) {
  if (index == 0) throw Error(ErrorCode::InvalidValue, "sqrt_prime index must be >= 1");
  return GeneratorId(Kind::SqrtPrime, index);
}

GeneratorId GeneratorId::sqrt_of(unsigned long prime) {
  auto index = prime_index(prime);
  if (!index) {
    throw Error(ErrorCode::InvalidValue,
                "sqrt(" + std::to_string(prime) + "): radicand must be prime");
  }
  return GeneratorId(Kind::SqrtPrime, *index);
}

unsigned long GeneratorId::prime() const {
  return kind_ == Kind::SqrtPrime ? nth_prime(index_) : 0;
}

std::string GeneratorId::to_string() const {
  if (kind_ == Kind::Pi) return "pi";
  return "sqrt(" + std::to_string(prime()) + ")";
}

namespace {

// Archimedes' bounds 223/71 < pi < 22/7.
const RationalInterval kPiSeed{Rational(223, 71), Rational(22, 7)};

// Brackets arctan(1/m) between two consecutive partial sums of its
// alternating series; the true value lies between any two consecutive ones.
RationalInterval arctan_inverse(unsigned long m, unsigned terms) {
  Rational sum = 0;
  Rational prev = 0;
  Integer power = m;  // m^(2n+1)
  const Integer m2 = Integer(m) * m;
  for (unsigned n = 0; n <= terms; ++n) {
    prev = sum;
    Rational term(Integer(1), Integer(2 * n + 1) * power);
    if (n % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
    power *= m2;
  }
  return prev < sum ? RationalInterval{prev, sum} : RationalInterval{sum, prev};
}

// pi = 16 atan(1/5) - 4 atan(1/239).
RationalInterval pi_series(const Rational& max_width) {
  for (unsigned terms = 1;; terms *= 2) {
    auto a = arctan_inverse(5, terms);
    auto b = arctan_inverse(239, terms);
    RationalInterval r{16 * a.lo - 4 * b.hi, 16 * a.hi - 4 * b.lo};
    if (r.width() <= max_width) return r;
  }
}

RationalInterval intersect(const RationalInterval& a, const RationalInterval& b) {
  return {a.lo > b.lo ? a.lo : b.lo, a.hi < b.hi ? a.hi : b.hi};
}

// Level d holds an interval of width <= 2^-d; level d+1 is nested in level d.
class IntervalCache {
 public:
  RationalInterval at(GeneratorId g, unsigned depth) {
    std::lock_guard lock(mutex_);
    auto& levels = levels_[g];
    if (levels.empty()) levels.push_back(initial(g));
    while (levels.size() <= depth) {
      levels.push_back(next(g, levels.back(), static_cast<unsigned>(levels.size())));
    }
    return levels[depth];
  }

 private:
  static RationalInterval initial(GeneratorId g) {
    if (g.kind() == GeneratorId::Kind::Pi) return {Rational(3), Rational(4)};
    Integer p = static_cast<unsigned long>(g.prime());
    Integer root;
    mpz_sqrt(root.get_mpz_t(), p.get_mpz_t());
    return {Rational(root), Rational(root + 1)};
  }

  static RationalInterval next(GeneratorId g, const RationalInterval& prev,
                               unsigned depth) {
    if (g.kind() == GeneratorId::Kind::Pi) {
      Rational width(Integer(1), Integer(1) << depth);
      return intersect(intersect(prev, kPiSeed), pi_series(width));
    }
    // Bisection on squares: mid^2 vs p.
    Rational mid = (prev.lo + prev.hi) / 2;
    Rational p(static_cast<unsigned long>(g.prime()));
    if (mid * mid < p) return {mid, prev.hi};
    return {prev.lo, mid};
  }

  std::mutex mutex_;
  std::map<GeneratorId, std::vector<RationalInterval>> levels_;
};

IntervalCache& interval_cache() {
  static IntervalCache cache;
  return cache;
}

unsigned depth_for(const Rational& max_width) {
  unsigned depth = 0;
  Rational width = 1;
  while (width > max_width) {
    width /= 2;
    ++depth;
  }
  return depth;
}

}  // namespace

RationalInterval refine_interval(GeneratorId g, const Rational& max_width) {
  if (max_width <= 0) {
    throw Error(ErrorCode::PreconditionViolated, "refine_interval: max_width must be > 0");
  }
  return interval_cache().at(g, depth_for(max_width));
}

// ---------------------------------------------------------------------------
// RealValue

RealValue::RealValue(const Rational& constant) : constant_(constant) { constant_.canonicalize(); }

RealValue::RealValue(Rational constant, Coefficients coeffs)
    : constant_(std::move(constant)), coeffs_(std::move(coeffs)) {
  constant_.canonicalize();
  for (auto& [g, c] : coeffs_) c.canonicalize();
  erase_zeros();
}

RealValue RealValue::generator(GeneratorId g, const Rational& coefficient) {
  return RealValue(Rational(0), Coefficients{{g, coefficient}});
}

Rational RealValue::coeff(GeneratorId g) const {
  auto it = coeffs_.find(g);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

bool RealValue::is_integer() const {
  return coeffs_.empty() && constant_.get_den() == 1;
}

void RealValue::erase_zeros() {
  std::erase_if(coeffs_, [](const auto& kv) { return kv.second == 0; });
}

RealValue RealValue::operator-() const {
  RealValue r = *this;
  r.constant_ = -r.constant_;
  for (auto& [g, c] : r.coeffs_) c = -c;
  return r;
}

RealValue& RealValue::operator+=(const RealValue& other) {
  constant_ += other.constant_;
  for (const auto& [g, c] : other.coeffs_) {
    auto [it, inserted] = coeffs_.try_emplace(g, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) coeffs_.erase(it);
    }
  }
  return *this;
}

RealValue& RealValue::operator-=(const RealValue& other) {
  constant_ -= other.constant_;
  for (const auto& [g, c] : other.coeffs_) {
    auto [it, inserted] = coeffs_.try_emplace(g, -c);
    if (!inserted) {
      it->second -= c;
      if (it->second == 0) coeffs_.erase(it);
    }
  }
  return *this;
}

RealValue& RealValue::operator*=(const Rational& f) {
  Rational factor = f;
  factor.canonicalize();
  if (factor == 0) {
    constant_ = 0;
    coeffs_.clear();
    return *this;
  }
  constant_ *= factor;
  for (auto& [g, c] : coeffs_) c *= factor;
  return *this;
}

RationalInterval RealValue::enclosure(const Rational& max_width) const {
  RationalInterval hull{constant_, constant_};
  for (const auto& [g, c] : coeffs_) {
    auto gi = refine_interval(g, max_width);
    if (c > 0) {
      hull.lo += c * gi.lo;
      hull.hi += c * gi.hi;
    } else {
      hull.lo += c * gi.hi;
      hull.hi += c * gi.lo;
    }
  }
  return hull;
}

std::string RealValue::to_string() const {
  std::ostringstream out;
  bool first = true;
  auto emit = [&](const Rational& c, const std::string& name) {
    Rational magnitude = abs(c);
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (name.empty()) {
      out << bss::to_string(magnitude);
    } else if (magnitude == 1) {
      out << name;
    } else {
      out << bss::to_string(magnitude) << '*' << name;
    }
  };
  if (constant_ != 0 || coeffs_.empty()) emit(constant_, "");
  for (const auto& [g, c] : coeffs_) emit(c, g.to_string());
  return out.str();
}

RealValue make_rational(const Rational& q) { return RealValue(q); }

RealValue combine(const RealValue& a, const RealValue& b, ArithOp op) {
  return op == ArithOp::Add ? a + b : a - b;
}

int sign(const RealValue& a) {
  if (a.is_rational()) return sgn(a.constant());
  Rational width = 1;
  for (;;) {
    auto hull = a.enclosure(width);
    if (hull.lo > 0) return 1;
    if (hull.hi < 0) return -1;
    width /= 2;
  }
}

int compare(const RealValue& a, const RealValue& b) { return sign(a - b); }

// ---------------------------------------------------------------------------
// Parser

namespace {

class ValueParser {
 public:
  explicit ValueParser(std::string_view text) : text_(text) {}

  RealValue parse() {
    RealValue result;
    skip_space();
    bool negative = false;
    if (peek() == '-' || peek() == '+') negative = (take() == '-');
    result += term(negative);
    for (;;) {
      skip_space();
      if (at_end()) break;
      char op = take();
      if (op != '+' && op != '-') fail("expected '+' or '-'");
      skip_space();
      bool neg = (op == '-');
      if (peek() == '-' || peek() == '+') {
        if (take() == '-') neg = !neg;
      }
      result += term(neg);
    }
    return result;
  }

 private:
  RealValue term(bool negative) {
    skip_space();
    Rational coefficient = 1;
    bool have_number = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coefficient = number();
      have_number = true;
      skip_space();
      if (peek() != '*') return RealValue(negative ? Rational(-coefficient) : coefficient);
      take();
      skip_space();
    }
    if (negative) coefficient = -coefficient;
    if (match("pi")) return RealValue::generator(GeneratorId::pi(), coefficient);
    if (match("sqrt")) {
      skip_space();
      expect('(');
      skip_space();
      std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) take();
      if (start == pos_) fail("expected radicand");
      unsigned long p = std::stoul(std::string(text_.substr(start, pos_ - start)));
      skip_space();
      expect(')');
      GeneratorId g = GeneratorId::pi();
      try {
        g = GeneratorId::sqrt_of(p);
      } catch (const Error& e) {
        fail(e.what());
      }
      return RealValue::generator(g, coefficient);
    }
    fail(have_number ? "expected 'sqrt' or 'pi' after '*'" : "expected a term");
  }

  Rational number() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) take();
    if (peek() == '/') {
      take();
      std::size_t den_start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) take();
      if (den_start == pos_) fail("expected denominator");
    }
    try {
      return parse_rational(text_.substr(start, pos_ - start));
    } catch (const Error& e) {
      fail(e.what());
    }
  }

  bool match(std::string_view word) {
    if (text_.substr(pos_, word.size()) != word) return false;
    pos_ += word.size();
    return true;
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    take();
  }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  char take() { return text_[pos_++]; }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(ErrorCode::InvalidValue, 1, pos_ + 1,
                     message + " in value '" + std::string(text_) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

RealValue parse_real(std::string_view text) { return ValueParser(text).parse(); }

}  // namespace bss
