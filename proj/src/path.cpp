#include "bss/path.hpp"

#include "bss/detail/interpreter.hpp"
#include "bss/error.hpp"

namespace bss {

namespace {

struct AffineDomain {
  using Value = Affine;
  RealValue x0;

  Value zero() const { return {}; }
  bool is_zero(const Value& v) const { return v.k == 0 && v.l == 0; }
  Value constant(const RealValue& c) const {
    if (!c.is_integer()) {
      throw Error(ErrorCode::SymbolicOverflow,
                  "SymbolicOverflow: constant " + c.to_string() + " leaves the k*x + l form");
    }
    return {Integer(0), c.constant().get_num()};
  }
  Value add(const Value& a, const Value& b) const { return {a.k + b.k, a.l + b.l}; }
  Value sub(const Value& a, const Value& b) const { return {a.k - b.k, a.l - b.l}; }
  int sign(const Value& v) const { return bss::sign(v.at(x0)); }
  RealValue concrete(const Value& v) const { return v.at(x0); }
};

RationalInterval approximate(const RealValue& x, std::uint64_t den) {
  Rational w(1, Integer(static_cast<unsigned long>(den)) * den * 4);
  return x.enclosure(w);
}

}  // namespace

RealValue Affine::at(const RealValue& x) const { return x * Rational(k) + RealValue(Rational(l)); }

std::string Affine::to_string() const {
  return k.get_str() + "*x" + (l < 0 ? " - " : " + ") + Integer(abs(l)).get_str();
}

const char* to_string(Relation r) {
  switch (r) {
    case Relation::Ge: return ">= 0";
    case Relation::Gt: return "> 0";
    case Relation::Eq: return "= 0";
    case Relation::Ne: return "!= 0";
    case Relation::OracleIn: return "in O";
    case Relation::OracleOut: return "not in O";
  }
  return "?";
}

ConstraintSystem extract_path_constraints(const Program& p, const RealValue& x0, std::uint64_t t,
                                          const OracleSpec* oracle) {
  AffineDomain d{x0};
  std::vector<Affine> input{Affine{Integer(1), Integer(0)}};
  auto state = detail::init<AffineDomain>(p, d, input);
  ConstraintSystem sys;
  while (state.steps < t) {
    const Label label = state.pc;
    Affine tested;
    if (label <= p.size()) {
      if (auto* e = std::get_if<instr::EqTest>(&p.at(label))) tested = detail::read(state, d, e->reg);
      if (auto* g = std::get_if<instr::GeTest>(&p.at(label))) tested = detail::read(state, d, g->reg);
    }
    std::vector<Affine> query;
    StepInfo info = detail::step(state, p, oracle, d, &query);
    if (info.branch) {
      sys.path.push_back({label, *info.branch});
      const Instruction& in = p.at(label);
      if (std::holds_alternative<instr::EqTest>(in)) {
        sys.atoms.push_back({*info.branch ? Relation::Eq : Relation::Ne, tested, {}});
      } else if (std::holds_alternative<instr::GeTest>(in)) {
        if (*info.branch) {
          sys.atoms.push_back({Relation::Ge, tested, {}});
        } else {
          sys.atoms.push_back({Relation::Gt, Affine{-tested.k, -tested.l}, {}});
        }
      } else if (std::holds_alternative<instr::OracleTest>(in)) {
        sys.atoms.push_back({*info.branch ? Relation::OracleIn : Relation::OracleOut, {}, query});
      }
    }
    if (info.output) {
      sys.halted = true;
      break;
    }
  }
  sys.steps = state.steps;
  return sys;
}

bool satisfies(const ConstraintSystem& sys, const RealValue& x, const OracleSpec* oracle) {
  for (const auto& a : sys.atoms) {
    switch (a.rel) {
      case Relation::Ge: if (sign(a.term.at(x)) < 0) return false; break;
      case Relation::Gt: if (sign(a.term.at(x)) <= 0) return false; break;
      case Relation::Eq: if (!a.term.at(x).is_zero()) return false; break;
      case Relation::Ne: if (a.term.at(x).is_zero()) return false; break;
      case Relation::OracleIn:
      case Relation::OracleOut: {
        if (oracle == nullptr) return false;
        std::vector<RealValue> tuple;
        for (const auto& arg : a.args) tuple.push_back(arg.at(x));
        if (oracle->query(tuple) != (a.rel == Relation::OracleIn)) return false;
        break;
      }
    }
  }
  return true;
}

std::vector<BranchStep> branch_trace(const Program& p, const RealValue& x, std::uint64_t t,
                                     const OracleSpec* oracle) {
  std::vector<BranchStep> path;
  std::vector<RealValue> input{x};
  run_bounded(p, input, oracle, t, [&](const MachineState&, const StepInfo& info) {
    if (info.branch) path.push_back({info.label, *info.branch});
  });
  return path;
}

std::optional<Rational> rational_shadow_search(const Program& p, const RealValue& target,
                                               std::uint64_t t, std::uint64_t denominator_bound,
                                               const OracleSpec* oracle) {
  const ConstraintSystem sys = extract_path_constraints(p, target, t, oracle);
  if (!sys.halted) {
    throw Error(ErrorCode::PreconditionViolated, "program does not halt on the target within t steps");
  }
  auto confirmed = [&](const Rational& q) {
    return satisfies(sys, RealValue(q), oracle) && branch_trace(p, RealValue(q), t, oracle) == sys.path;
  };
  if (target.is_rational()) return target.constant();

  // An equality with k != 0 pins x to one rational.
  for (const auto& a : sys.atoms) {
    if (a.rel == Relation::Eq && a.term.k != 0) {
      Rational q(-a.term.l, a.term.k);
      q.canonicalize();
      if (q.get_den() <= denominator_bound && confirmed(q)) return q;
      return std::nullopt;
    }
  }
  for (std::uint64_t den = 1; den <= denominator_bound; ++den) {
    const RationalInterval near = approximate(target, den);
    const Rational mid = (near.lo + near.hi) / 2;
    Integer n0;
    mpz_fdiv_q(n0.get_mpz_t(), Rational(mid * den).get_num_mpz_t(), Rational(mid * den).get_den_mpz_t());
    for (long off : {0L, 1L, -1L, 2L}) {
      Rational q(n0 + off, Integer(static_cast<unsigned long>(den)));
      q.canonicalize();
      if (q.get_den() != den) continue;  // seen with a smaller denominator
      if (confirmed(q)) return q;
    }
  }
  return std::nullopt;
}

}  // namespace bss
