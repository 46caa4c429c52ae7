#include "bss/simulation.hpp"

#include <algorithm>

#include "bss/error.hpp"

namespace bss {

HaltingEnumerator::HaltingEnumerator(Program p) : program_(std::move(p)) {
  if (program_.dialect().oracle) {
    throw Error(ErrorCode::PreconditionViolated,
                "halting-pair enumeration needs an oracle-free program");
  }
}

void HaltingEnumerator::advance_to(std::uint64_t r) {
  while (rounds_ < r) {
    ++rounds_;
    const std::uint64_t n_new = rounds_;
    std::vector<RealValue> input{RealValue(static_cast<long>(n_new))};
    running_.emplace_back(init_state(program_, input));

    std::vector<HaltingPair> found;
    for (std::size_t idx = 0; idx < running_.size(); ++idx) {
      auto& slot = running_[idx];
      if (!slot) continue;
      while (slot->steps < rounds_) {
        StepInfo info = step(*slot, program_, nullptr);
        if (info.output) {
          found.push_back({idx + 1, slot->steps});
          slot.reset();
          break;
        }
      }
    }
    std::sort(found.begin(), found.end(), [](const HaltingPair& a, const HaltingPair& b) {
      return a.t != b.t ? a.t < b.t : a.n < b.n;
    });
    pairs_.insert(pairs_.end(), found.begin(), found.end());
    emitted_after_round_.push_back(pairs_.size());
  }
}

std::size_t HaltingEnumerator::emitted_by(std::uint64_t r) const {
  if (r == 0) return 0;
  if (r > rounds_) throw Error(ErrorCode::PreconditionViolated, "round not reached yet");
  return emitted_after_round_[r - 1];
}

std::vector<HaltingPair> enumerate_halting_pairs(const Program& p, std::uint64_t budget) {
  HaltingEnumerator e(p);
  e.advance_to(budget);
  return e.pairs();
}

bool replay_halts_exactly(const Program& p, const HaltingPair& pair) {
  if (pair.n == 0 || pair.t == 0) return false;
  std::vector<RealValue> input{RealValue(static_cast<long>(pair.n))};
  auto before = run_bounded(p, input, nullptr, pair.t - 1);
  if (halted(before)) return false;
  auto at = run_bounded(p, input, nullptr, pair.t);
  return halted(at) && std::get<Halted>(at).halted_at == pair.t;
}

std::variant<std::uint64_t, NotYet> nbar_output(const Integer& i, std::uint64_t j,
                                                std::uint64_t budget) {
  if (j == 0) throw Error(ErrorCode::PreconditionViolated, "j must be >= 1");
  HaltingEnumerator e(machine_at(i, kEqualityDialect));
  for (std::uint64_t r = 1; r <= budget; ++r) {
    e.advance_to(r);
    if (e.pairs().size() >= j) return e.pairs()[j - 1].n;
  }
  return NotYet{};
}

EnumerationSnapshot snapshot_W(const Integer& i, std::uint64_t s) {
  HaltingEnumerator e(machine_at(i, kEqualityDialect));
  e.advance_to(s);
  EnumerationSnapshot snap{i, s, {}};
  for (const auto& pair : e.pairs()) snap.members.insert(pair.n);
  return snap;
}

DiagonalVerdict diagonal_halts(const Program& p, const Integer& k, const OracleSpec& oracle,
                               std::uint64_t t) {
  std::vector<RealValue> input{RealValue(Rational(k))};
  auto outcome = run_bounded(p, input, &oracle, t);
  if (auto* h = std::get_if<Halted>(&outcome)) return HaltsAt{h->halted_at, std::move(h->output)};
  return NotWithin{};
}

DiagonalVerdict diagonal_halts(const Integer& k, const OracleSpec& oracle, std::uint64_t t) {
  if (k < 1) throw Error(ErrorCode::PreconditionViolated, "k must be >= 1");
  return diagonal_halts(machine_at(k, kOrderOracleDialect), k, oracle, t);
}

}  // namespace bss
