#include "bss/oracle.hpp"

#include <algorithm>
#include <memory>
#include <string>

#include "bss/error.hpp"
#include "bss/primes.hpp"

namespace bss {

namespace {

bool is_natural(const RealValue& v) { return v.is_integer() && v.constant() >= 0; }

}  // namespace

OracleSpec empty_oracle() {
  return {"empty", [](std::span<const RealValue>) { return false; }};
}

OracleSpec integer_set_oracle(std::set<std::uint64_t> members, std::string name) {
  auto shared = std::make_shared<const std::set<std::uint64_t>>(std::move(members));
  return {std::move(name), [shared](std::span<const RealValue> t) {
            if (t.size() != 1 || !t[0].is_integer() || t[0].constant() < 1) return false;
            const Integer& z = t[0].constant().get_num();
            if (!z.fits_ulong_p()) return false;
            return shared->contains(z.get_ui());
          }};
}

OracleSpec nat_pair_ge_oracle() {
  return {"nat-pair-ge", [](std::span<const RealValue> t) {
            return t.size() == 2 && is_natural(t[0]) && is_natural(t[1]) &&
                   t[0].constant() >= t[1].constant();
          }};
}

OracleSpec sqrt_primes_oracle(unsigned i) {
  return {"sqrt-primes:" + std::to_string(i), [i](std::span<const RealValue> t) {
            if (t.size() != 1) return false;
            const RealValue& x = t[0];
            if (x.constant() != 0 || x.coeffs().size() != 1) return false;
            const auto& [g, c] = *x.coeffs().begin();
            return g.kind() == GeneratorId::Kind::SqrtPrime && c == 1 && g.index() <= i;
          }};
}

OracleSpec rational_tuples_oracle() {
  return {"rationals", [](std::span<const RealValue> t) {
            return std::all_of(t.begin(), t.end(), [](const RealValue& v) { return v.is_rational(); });
          }};
}

OracleSpec tuple_list_oracle(std::vector<std::vector<RealValue>> tuples, std::string name) {
  auto shared = std::make_shared<const std::vector<std::vector<RealValue>>>(std::move(tuples));
  return {std::move(name), [shared](std::span<const RealValue> t) {
            return std::any_of(shared->begin(), shared->end(), [&](const auto& member) {
              return std::equal(member.begin(), member.end(), t.begin(), t.end());
            });
          }};
}

OracleSpec oracle_by_name(std::string_view name) {
  if (name == "none" || name == "empty") return empty_oracle();
  if (name == "nat-pair-ge") return nat_pair_ge_oracle();
  if (name == "rationals") return rational_tuples_oracle();
  constexpr std::string_view kSqrt = "sqrt-primes:";
  if (name.starts_with(kSqrt)) {
    std::string digits(name.substr(kSqrt.size()));
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit) &&
        digits.size() < 6) {
      unsigned i = static_cast<unsigned>(std::stoul(digits));
      if (i >= 1) return sqrt_primes_oracle(i);
    }
  }
  throw Error(ErrorCode::InvalidValue, "unknown oracle '" + std::string(name) + "'");
}

}  // namespace bss
