#include <gtest/gtest.h>

#include "bss/error.hpp"
#include "bss/lowness.hpp"
#include "bss/priority.hpp"

using namespace bss;

namespace {

SyntheticSetup fixture() { return load_synthetic_file(BSS_SOURCE_DIR "/fixtures/w1.json"); }

std::shared_ptr<Construction> fixture_construction() {
  auto s = fixture();
  return std::make_shared<Construction>(s.enumerators, s.machines);
}

}  // namespace

TEST(QueryBound, Examples) {
  EXPECT_EQ(query_bound(trivial_program(), 1, 5, {}), 0);
  Program asks7 = parse_program(
      "1: set Z2 = 1\n2: add Z1 = Z2 + Z2\n3: add Z1 = Z1 + Z2\n4: add Z1 = Z1 + Z1\n"
      "5: add Z1 = Z1 + Z2\n6: oracle -> 7, 7\n7: halt\n");
  EXPECT_EQ(query_bound(asks7, 1, 100, {}), 7);
  EXPECT_EQ(query_bound(asks7, 1, 6, {}), 0);  // not halted within 6 steps
  Program loops = parse_program("1: oracle -> 1, 1\n");
  EXPECT_EQ(query_bound(loops, 9, 100, {}), 0);
  // Negative integers floor at 0.
  Program half = parse_program("1: sub Z1 = Z2 - Z1\n2: oracle -> 3, 3\n3: halt\n");
  EXPECT_EQ(query_bound(half, 4, 10, {}), 0);
}

TEST(Phi, Formula) {
  QueryBoundTable zeros{{1, 0}, {2, 0}, {3, 0}};
  EXPECT_TRUE(phi(3, 7, zeros));
  EXPECT_FALSE(phi(3, 6, zeros));
  QueryBoundTable a{{1, 10}, {2, 0}};
  EXPECT_FALSE(phi(2, 10, a));
  EXPECT_TRUE(phi(2, 11, a));
}

TEST(Stages, SingleListedEnumerator) {
  auto s = load_synthetic(R"({"enumerators": [{"i": 1, "kind": "list", "members": [5]}]})");
  StageRecord r;
  StageEvent ev;
  StageRecord next = stage_step(r, *s.enumerators, *s.machines, &ev);
  EXPECT_EQ(ev.i_s, 1u);
  EXPECT_EQ(ev.x, 5u);
  EXPECT_EQ(ev.I, std::vector<std::uint64_t>{1});
  EXPECT_EQ(next.A, Members{5});
  EXPECT_EQ(next.s, 2u);
  StageRecord after = stage_step(next, *s.enumerators, *s.machines, &ev);
  EXPECT_FALSE(ev.i_s.has_value());
  EXPECT_EQ(after.A, Members{5});
  EXPECT_EQ(after.satisfied, Members{1});
}

TEST(Stages, FirstStageIsEmpty) {
  auto s = fixture();
  auto [record, events] = run_stages(1, s.enumerators, s.machines);
  EXPECT_TRUE(record.A.empty());
  EXPECT_TRUE(events.empty());
  EXPECT_THROW(run_stages(0, s.enumerators, s.machines), Error);
}

TEST(Stages, FixtureLog) {
  auto s = fixture();
  auto [record, events] = run_stages(60, s.enumerators, s.machines);
  // Frozen from the CLI run; each entry follows from the fixture by hand:
  // i = 2 takes 5 at stage 2, i = 1 takes 3, i = 7 takes 50, i = 3 takes 100,
  // and i = 5 waits for an even x above machine 2's query 32.
  std::vector<ActiveEntry> expected{{2, 2, 5}, {3, 1, 3}, {7, 7, 50}, {10, 3, 100}, {55, 5, 34}};
  EXPECT_EQ(record.active_history, expected);
  EXPECT_EQ(record.A, (Members{3, 5, 34, 50, 100}));
  EXPECT_EQ(events.size(), 59u);
}

TEST(Stages, StatelessStepMatchesConstruction) {
  auto s = fixture();
  auto [record, events] = run_stages(150, s.enumerators, s.machines);
  auto fresh = fixture();
  StageRecord r;
  for (std::uint64_t k = 0; k + 1 < 150; ++k) {
    StageEvent ev;
    r = stage_step(r, *fresh.enumerators, *fresh.machines, &ev);
    ASSERT_EQ(ev, events[k]) << "stage " << k + 1;
  }
  EXPECT_EQ(r.A, record.A);
  EXPECT_EQ(r.active_history, record.active_history);
}

TEST(Stages, PrefixProperty) {
  auto a = fixture(), b = fixture();
  auto short_run = run_stages(80, a.enumerators, a.machines).second;
  auto long_run = run_stages(200, b.enumerators, b.machines).second;
  ASSERT_LT(short_run.size(), long_run.size());
  EXPECT_TRUE(std::equal(short_run.begin(), short_run.end(), long_run.begin()));
}

TEST(Stages, SparsityHelper) {
  EXPECT_FALSE(first_sparsity_violation({}).has_value());
  EXPECT_FALSE(first_sparsity_violation({3, 5, 34, 50, 100}).has_value());
  EXPECT_EQ(first_sparsity_violation({2}), 1u);
  EXPECT_EQ(first_sparsity_violation({3, 4}), 2u);
  EXPECT_EQ(first_sparsity_violation({3, 4, 5}), 2u);
  EXPECT_FALSE(first_sparsity_violation({5, 6, 7}).has_value());
  EXPECT_EQ(first_sparsity_violation({0}), 1u);
}

TEST(Stages, GenuineListsAreDeterministic) {
  auto run = [] {
    return run_stages(40, std::make_shared<GenuineEnumerators>(), std::make_shared<GenuineMachines>());
  };
  auto [r1, e1] = run();
  auto [r2, e2] = run();
  EXPECT_EQ(e1, e2);
  EXPECT_FALSE(first_sparsity_violation(r1.A).has_value());
  // Index 1 names the trivial machine, which enumerates every n.
  ASSERT_FALSE(r1.active_history.empty());
  EXPECT_EQ(r1.active_history.front(), (ActiveEntry{3, 1, 3}));
}

TEST(Stages, FixtureRejectsBadInput) {
  EXPECT_THROW(load_synthetic("{"), Error);
  EXPECT_THROW(load_synthetic(R"({"enumerators": [{"i": 1, "kind": "odd"}]})"), Error);
  EXPECT_THROW(load_synthetic(R"({"enumerators": [{"i": 0, "kind": "list", "members": []}]})"), Error);
}

TEST(Lowness, CoherentOnFixture) {
  auto c = fixture_construction();
  for (std::uint64_t n = 1; n <= 20; ++n) EXPECT_TRUE(lowness_coherent(*c, n, 300)) << n;
}

TEST(Lowness, HookOracle) {
  auto c = fixture_construction();
  OracleSpec hook = construction_hook(c);
  auto ask = [&](long a, long b, long s) {
    std::vector<RealValue> t{RealValue(a), RealValue(b), RealValue(s)};
    return hook.query(t);
  };
  EXPECT_FALSE(ask(1, 5, 2));
  EXPECT_TRUE(ask(1, 5, 3));
  EXPECT_FALSE(ask(1, 34, 55));
  EXPECT_TRUE(ask(1, 34, 56));
  EXPECT_TRUE(ask(2, 1, 2));    // machine 1 halts in two steps
  EXPECT_FALSE(ask(2, 4, 50));  // machine 4 loops
  EXPECT_FALSE(ask(2, 3, 3));   // machine 3 waits for 3 to enter A (stage 3)
  EXPECT_TRUE(ask(2, 3, 4));
  EXPECT_FALSE(ask(3, 1, 1));
  EXPECT_FALSE(hook.query(std::vector<RealValue>{RealValue(1), RealValue(5)}));
}

TEST(Lowness, LxHaltsIffMember) {
  auto c = fixture_construction();
  OracleSpec hook = construction_hook(c);
  std::vector<RealValue> input{RealValue(1)};
  for (std::uint64_t x : {3, 5, 34, 50, 100}) {
    Program L = build_Lx(x, 0, WitnessMode::Hook);
    EXPECT_TRUE(halted(run_bounded(L, input, &hook, 2000))) << x;
    Program P = build_Lx(x, 120, WitnessMode::Pure, c.get());
    EXPECT_FALSE(P.dialect().oracle);
    EXPECT_NO_THROW(encode(P));
    EXPECT_TRUE(halted(run_bounded(P, input, nullptr, 2000))) << x;
  }
  for (std::uint64_t x : {4, 12, 30, 99}) {
    Program L = build_Lx(x, 120, WitnessMode::Hook);
    EXPECT_FALSE(halted(run_bounded(L, input, &hook, 3000))) << x;
    Program P = build_Lx(x, 120, WitnessMode::Pure, c.get());
    EXPECT_FALSE(halted(run_bounded(P, input, nullptr, 3000))) << x;
  }
  EXPECT_EQ(build_Lx(7, 50, WitnessMode::Hook), build_Lx(7, 50, WitnessMode::Hook));
  EXPECT_NO_THROW(godel_index(build_Lx(7, 50, WitnessMode::Hook)));
  // 34 enters A at stage 55, so the pure form with budget 55 does not see it.
  EXPECT_FALSE(halted(run_bounded(build_Lx(34, 55, WitnessMode::Pure, c.get()), input, nullptr, 3000)));
  EXPECT_TRUE(halted(run_bounded(build_Lx(34, 56, WitnessMode::Pure, c.get()), input, nullptr, 3000)));
}

TEST(Lowness, LikHaltsIffSomeLaterStageHalts) {
  auto c = fixture_construction();
  OracleSpec hook = construction_hook(c);
  std::vector<RealValue> input{RealValue(1)};
  // Machine 1 halts on 1 in two steps at every stage j >= 2.
  EXPECT_TRUE(halted(run_bounded(build_Lik(1, 1, 0, WitnessMode::Hook), input, &hook, 500)));
  EXPECT_TRUE(halted(run_bounded(build_Lik(1, 1, 30, WitnessMode::Pure, c.get()), input, nullptr, 500)));
  // Machine 4 never halts.
  EXPECT_FALSE(halted(run_bounded(build_Lik(1, 4, 0, WitnessMode::Hook), input, &hook, 2000)));
  EXPECT_FALSE(halted(run_bounded(build_Lik(1, 4, 30, WitnessMode::Pure, c.get()), input, nullptr, 2000)));
  // Machine 3 halts once 3 is in A_j (j >= 4).
  auto steps = [&](std::uint64_t i) {
    auto r = run_bounded(build_Lik(i, 3, 0, WitnessMode::Hook), input, &hook, 5000);
    return halted(r) ? std::get<Halted>(r).output.at(2) : RealValue(-1);
  };
  EXPECT_EQ(steps(1), RealValue(4));
  EXPECT_EQ(steps(6), RealValue(7));
}

TEST(Lowness, SemiDecisions) {
  auto c = fixture_construction();
  c->run_to(200);
  // Machine 1 queries (1) and halts: in K^A.
  EXPECT_TRUE(std::holds_alternative<HaltsAt>(semi_decide_KA(RealValue(1), c, 1000)));
  // Machine 3 halts iff 3 is in A, which it is.
  EXPECT_TRUE(std::holds_alternative<HaltsAt>(semi_decide_KA(RealValue(3), c, 5000)));
  // Machine 4 loops: outside K^A, witnessed by i = 1.
  EXPECT_TRUE(std::holds_alternative<NotWithin>(semi_decide_KA(RealValue(4), c, 1000)));
  auto w = semi_decide_not_KA(RealValue(4), c, 5, 1000);
  ASSERT_TRUE(std::holds_alternative<Witness>(w));
  EXPECT_EQ(std::get<Witness>(w).i, 1u);
  EXPECT_TRUE(std::holds_alternative<NoWitness>(semi_decide_not_KA(RealValue(1), c, 3, 2000)));
  // Runtime guard: non-integers never halt.
  EXPECT_TRUE(std::holds_alternative<NotWithin>(semi_decide_KA(parse_real("1/2"), c, 1000)));
  EXPECT_TRUE(std::holds_alternative<NoWitness>(semi_decide_not_KA(parse_real("sqrt(2)"), c, 3, 100)));
}
