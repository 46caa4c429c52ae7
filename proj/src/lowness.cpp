#include "bss/lowness.hpp"

#include "bss/builder.hpp"
#include "bss/error.hpp"

namespace bss {

namespace {

std::optional<std::uint64_t> positive_integer(const RealValue& v) {
  if (!v.is_integer()) return std::nullopt;
  const Integer z = v.constant().get_num();
  if (z < 1 || !z.fits_ulong_p()) return std::nullopt;
  return z.get_ui();
}

// Registers shared by the hook loops.
constexpr RegIndex kTag = 1, kArg = 2, kStage = 3, kOne = 4, kLimit = 5, kDiff = 6;

// Z1 := tag, Z2 := arg, Z3 := first; ask (Z1, Z2, Z3) for Z3 = first, first+1, ...
Program hook_loop(unsigned tag, std::uint64_t arg, std::uint64_t first, std::uint64_t last) {
  ProgramBuilder b;
  auto loop = b.new_label(), next = b.new_label(), idle = b.new_label(), done = b.new_label();
  b.set(kOne, 1);
  b.load_natural(kTag, tag, kOne);
  b.load_natural(kArg, Integer(static_cast<unsigned long>(arg)), kOne);
  b.load_natural(kStage, Integer(static_cast<unsigned long>(first)), kOne);
  if (last != 0) b.load_natural(kLimit, Integer(static_cast<unsigned long>(last)), kOne);
  b.load_index(1, 3);
  b.bind(loop);
  b.oracle(done, next);
  b.bind(next);
  b.add(kStage, kStage, kOne);
  if (last != 0) {
    b.sub(kDiff, kLimit, kStage);
    b.ge(kDiff, loop, idle);
  } else {
    b.jump(loop);
  }
  b.bind(idle);
  b.jump(idle);
  b.bind(done);
  b.halt();
  return b.build();
}

Program idle_forever() { return parse_program("1: ieq I1, I1 -> 1, 1\n"); }

bool halts_within(Construction& c, std::uint64_t k, std::uint64_t j) {
  const Members A = c.A_at(j);
  OracleRunTracker run(c.machines().machine(k), {RealValue(static_cast<long>(k))});
  return run.advance(A, j).halted;
}

}  // namespace

OracleSpec construction_hook(std::shared_ptr<Construction> c) {
  return {"construction-hook", [c](std::span<const RealValue> t) {
            if (t.size() != 3) return false;
            auto tag = positive_integer(t[0]);
            auto a = positive_integer(t[1]);
            auto s = positive_integer(t[2]);
            if (!tag || !a || !s) return false;
            if (*tag == 1) return c->A_at(*s).count(*a) > 0;
            if (*tag == 2) return halts_within(*c, *a, *s);
            return false;
          }};
}

Program build_Lx(std::uint64_t x, std::uint64_t stage_budget, WitnessMode mode, Construction* c) {
  if (x < 1) throw Error(ErrorCode::PreconditionViolated, "x must be >= 1");
  if (mode == WitnessMode::Hook) return hook_loop(1, x, 1, stage_budget);
  if (c == nullptr || stage_budget == 0) {
    throw Error(ErrorCode::PreconditionViolated, "pure L_x needs a construction and a stage budget");
  }
  // Walk A_budget in order of entry, comparing each element with x.
  c->run_to(stage_budget);
  ProgramBuilder b;
  auto idle = b.new_label(), done = b.new_label();
  b.set(kOne, 1);
  b.load_natural(kArg, Integer(static_cast<unsigned long>(x)), kOne);
  for (const auto& e : c->record().active_history) {
    if (e.s >= stage_budget) break;
    auto next = b.new_label();
    b.load_natural(kStage, Integer(static_cast<unsigned long>(e.x)), kOne);
    b.sub(kDiff, kStage, kArg);
    b.eq(kDiff, done, next);
    b.bind(next);
  }
  b.bind(idle);
  b.jump(idle);
  b.bind(done);
  b.halt();
  return b.build();
}

Program build_Lik(std::uint64_t i, std::uint64_t k, std::uint64_t stage_budget, WitnessMode mode,
                  Construction* c) {
  if (i < 1 || k < 1) throw Error(ErrorCode::PreconditionViolated, "i and k must be >= 1");
  if (mode == WitnessMode::Hook) {
    if (stage_budget != 0 && stage_budget <= i) return idle_forever();
    return hook_loop(2, k, i + 1, stage_budget);
  }
  if (c == nullptr || stage_budget == 0) {
    throw Error(ErrorCode::PreconditionViolated, "pure L_i^(k) needs a construction and a stage budget");
  }
  for (std::uint64_t j = i + 1; j <= stage_budget; ++j) {
    if (halts_within(*c, k, j)) {
      ProgramBuilder b;
      b.set(kOne, 1);
      b.load_natural(kStage, Integer(static_cast<unsigned long>(j)), kOne);
      b.halt();
      return b.build();
    }
  }
  return idle_forever();
}

DiagonalVerdict semi_decide_KA(const RealValue& k, std::shared_ptr<Construction> c,
                               std::uint64_t horizon) {
  auto n = positive_integer(k);
  if (!n) return NotWithin{};
  const OracleSpec hook = construction_hook(c);
  OracleSpec via_Lx{"A-via-L_x", [&](std::span<const RealValue> t) {
                      if (t.size() != 1) return false;
                      auto x = positive_integer(t[0]);
                      if (!x) return false;
                      Program L = build_Lx(*x, 0, WitnessMode::Hook);
                      return halted(run_bounded(L, t, &hook, horizon));
                    }};
  return diagonal_halts(c->machines().machine(*n), Integer(static_cast<unsigned long>(*n)), via_Lx,
                        horizon);
}

std::variant<Witness, NoWitness> semi_decide_not_KA(const RealValue& k,
                                                    std::shared_ptr<Construction> c,
                                                    std::uint64_t max_i, std::uint64_t horizon) {
  auto n = positive_integer(k);
  if (!n) return NoWitness{};
  const OracleSpec hook = construction_hook(c);
  std::vector<RealValue> input{k};
  for (std::uint64_t i = 1; i <= max_i; ++i) {
    Program L = build_Lik(i, *n, 0, WitnessMode::Hook);
    if (!halted(run_bounded(L, input, &hook, horizon))) return Witness{i};
  }
  return NoWitness{};
}

}  // namespace bss
