// Acceptance run: one PASS/FAIL line per criterion; exit status 1 if any fail.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "bss/encoding.hpp"
#include "bss/error.hpp"
#include "bss/oracle.hpp"
#include "bss/path.hpp"
#include "bss/primes.hpp"
#include "bss/priority.hpp"
#include "bss/problems.hpp"
#include "bss/simulation.hpp"
#include "support/hand_traced.hpp"
#include "support/random_programs.hpp"

using namespace bss;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<RealValue> values(const std::string& text) {
  std::vector<RealValue> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_real(item));
  return out;
}

RealValue sqrtp(unsigned i) { return RealValue::generator(GeneratorId::sqrt_prime(i)); }
RealValue pi() { return RealValue::generator(GeneratorId::pi()); }

double approx(const RealValue& x) {
  auto e = x.enclosure(Rational(1, 1 << 20));
  return Rational((e.lo + e.hi) / 2).get_d();
}

// 1. Hand-traced programs: exact outputs and step counts.
Verdict vm_semantics() {
  const auto t0 = Clock::now();
  std::size_t cases = 0, bad = 0;
  const auto& table = testkit::hand_traced();
  for (const auto& t : table) {
    Program p = parse_program(t.source);
    OracleSpec o = t.oracle.rfind("set:", 0) == 0
                       ? integer_set_oracle({std::stoull(t.oracle.substr(4))})
                       : oracle_by_name(t.oracle.empty() ? "none" : t.oracle);
    for (const auto& c : t.cases) {
      ++cases;
      auto r = run_bounded(p, values(c.input), &o, 10000);
      const auto* h = std::get_if<Halted>(&r);
      if (!h || h->output != values(c.output) || h->halted_at != c.steps) ++bad;
    }
  }
  const double secs = seconds_since(t0);
  return {table.size() >= 10 && bad == 0 && secs < 1.0,
          fmt("%zu programs, %zu cases, %zu mismatches, %.3f s", table.size(), cases, bad, secs)};
}

// 2. On input sqrt(2), M_add^1 registers stay k*sqrt(2) + l with integers k, l.
Verdict term_shape() {
  std::mt19937_64 rng(2024);
  testkit::RandomProgramOptions opts;
  opts.level = TestLevel::Order;
  opts.max_length = 16;
  opts.registers = 5;
  const GeneratorId r2 = GeneratorId::sqrt_prime(1);
  std::size_t programs = 0, states = 0, bad = 0;
  while (programs < 100) {
    Program p = testkit::random_program(rng, opts);
    ++programs;
    std::vector<RealValue> in{sqrtp(1)};
    auto check = [&](const MachineState& s, const StepInfo&) {
      ++states;
      for (const auto& [r, v] : s.registers) {
        bool ok = v.constant().get_den() == 1;
        for (const auto& [g, c] : v.coeffs()) ok = ok && g == r2 && c.get_den() == 1;
        if (!ok) ++bad;
      }
    };
    try {
      run_bounded(p, in, nullptr, 200, check);
    } catch (const Error&) {
      // runtime faults end the run; the states seen so far were checked
    }
  }
  return {bad == 0 && states > 0,
          fmt("%zu programs, %zu states observed, %zu off-shape registers", programs, states, bad)};
}

// 3. Encoding round trip, injectivity, machine_at, and K = 2^|code| + c.
Verdict encoding() {
  std::mt19937_64 rng(99);
  std::size_t round_trip_bad = 0, machine_at_bad = 0, collisions = 0, formula_bad = 0;
  std::map<std::string, std::string> by_index;
  std::vector<BitString> sample;
  for (int n = 0; n < 1000; ++n) {
    testkit::RandomProgramOptions opts;
    opts.level = n % 2 ? TestLevel::Order : TestLevel::Equality;
    opts.oracle = n % 3 == 0;
    Program p = testkit::random_program(rng, opts);
    BitString code = encode(p);
    auto back = decode(code);
    if (!back || !(*back == p)) ++round_trip_bad;
    Integer K = godel_index(p);
    auto [it, fresh] = by_index.emplace(K.get_str(), emit_program(p));
    if (!fresh && it->second != emit_program(p)) ++collisions;
    if (!(machine_at(K, kOrderOracleDialect) == p)) ++machine_at_bad;
    if (sample.size() < 20 && n % 50 == 0) sample.push_back(code);
  }
  for (const auto& code : sample) {
    Integer c = 0;
    for (auto bit : code.bits()) c = c * 2 + bit;
    Integer two_len;
    mpz_ui_pow_ui(two_len.get_mpz_t(), 2, code.size());
    if (index_of_code(code) != two_len + c) ++formula_bad;
  }
  return {round_trip_bad == 0 && machine_at_bad == 0 && collisions == 0 && formula_bad == 0 &&
              sample.size() == 20,
          fmt("1000 programs (%zu distinct): %zu round-trip failures, %zu index collisions, "
              "%zu machine_at failures; K formula on %zu codes: %zu mismatches",
              by_index.size(), round_trip_bad, collisions, machine_at_bad, sample.size(),
              formula_bad)};
}

// 4. Replay of every emitted pair and monotone snapshots.
Verdict halting_pairs() {
  std::mt19937_64 rng(4);
  testkit::RandomProgramOptions opts;
  opts.level = TestLevel::Equality;
  opts.forward_jumps = true;
  std::vector<Program> machines{parse_program(
      // halts exactly on even n
      "1: set Z2 = 1\n2: eq Z1 -> 7, 3\n3: sub Z1 = Z1 - Z2\n4: eq Z1 -> 8, 5\n"
      "5: sub Z1 = Z1 - Z2\n6: eq Z3 -> 2, 2\n7: halt\n8: eq Z3 -> 8, 8\n")};
  while (machines.size() < 20) {
    Program p = testkit::random_program(rng, opts);
    if (enumerate_halting_pairs(p, 30).empty()) continue;
    machines.push_back(p);
  }
  std::size_t pairs = 0, replay_bad = 0, mono_bad = 0;
  for (const auto& p : machines) {
    HaltingEnumerator e(p);
    e.advance_to(501);
    for (const auto& pair : e.pairs()) {
      ++pairs;
      if (!replay_halts_exactly(p, pair)) ++replay_bad;
    }
    std::set<std::uint64_t> prev;
    for (std::uint64_t s = 1; s <= 501; ++s) {
      std::set<std::uint64_t> cur;
      for (std::size_t k = 0; k < e.emitted_by(s); ++k) cur.insert(e.pairs()[k].n);
      if (!std::includes(cur.begin(), cur.end(), prev.begin(), prev.end())) ++mono_bad;
      prev = std::move(cur);
    }
  }
  // The index route agrees with the direct enumerator.
  std::size_t snap_bad = 0;
  const Integer i = godel_index(machines[0]);
  for (std::uint64_t s : {1, 10, 57, 200}) {
    HaltingEnumerator e(machines[0]);
    e.advance_to(s);
    std::set<std::uint64_t> want;
    for (std::size_t k = 0; k < e.emitted_by(s); ++k) want.insert(e.pairs()[k].n);
    if (snapshot_W(i, s).members != want) ++snap_bad;
  }
  return {replay_bad == 0 && mono_bad == 0 && snap_bad == 0 && pairs > 0,
          fmt("20 machines, %zu pairs replayed (%zu failures), s <= 500 monotonicity "
              "violations %zu, snapshot mismatches %zu",
              pairs, replay_bad, mono_bad, snap_bad)};
}

// 5. The construction against the synthetic fixture.
Verdict priority() {
  const auto t0 = Clock::now();
  const std::uint64_t S = 2000;
  auto setup = load_synthetic_file(BSS_SOURCE_DIR "/fixtures/w1.json");
  auto c = std::make_shared<Construction>(setup.enumerators, setup.machines);
  c->run_to(S);
  const StageRecord rec = c->record();

  std::set<std::uint64_t> actives;
  std::size_t repeats = 0;
  for (const auto& e : rec.active_history) {
    if (!actives.insert(e.i).second) ++repeats;
  }
  std::size_t sparse_bad = 0;
  for (std::uint64_t s = 1; s <= S; ++s) {
    if (first_sparsity_violation(c->A_at(s))) ++sparse_bad;
  }
  std::size_t unmet = 0;
  const auto infinite = setup.enumerators->infinite_indices();
  for (auto i : infinite) {
    const Members W = setup.enumerators->W(i, S);
    bool met = std::any_of(W.begin(), W.end(), [&](auto x) { return rec.A.count(x) > 0; });
    if (!met) ++unmet;
  }
  std::size_t incoherent = 0;
  for (std::uint64_t n = 1; n <= 20; ++n) {
    if (!lowness_coherent(*c, n, S)) ++incoherent;
  }
  const double secs = seconds_since(t0);
  return {repeats == 0 && sparse_bad == 0 && unmet == 0 && incoherent == 0 && secs < 60.0,
          fmt("%llu stages, |A| = %zu, %zu active entries, %zu repeated indices, "
              "%zu sparsity violations, %zu/%zu infinite W_i unmet, %zu incoherent n <= 20, %.1f s",
              static_cast<unsigned long long>(S), rec.A.size(), rec.active_history.size(),
              repeats, sparse_bad, unmet, infinite.size(), incoherent, secs)};
}

// 6. L_n: exact decision against the spiral search.
Verdict l_n() {
  std::mt19937_64 rng(6);
  const std::vector<Rational> coef{Rational(0),  Rational(1),     Rational(-1),    Rational(2),
                                   Rational(-2), Rational(1, 2), Rational(-1, 2), Rational(3)};
  auto pick = [&] { return coef[std::uniform_int_distribution<std::size_t>(0, coef.size() - 1)(rng)]; };
  const std::vector<RealValue> gens{sqrtp(1), sqrtp(2), sqrtp(3), pi()};
  std::size_t disagree = 0, witness_bad = 0, members = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + trial % 4;
    std::vector<RealValue> xs;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      RealValue v(pick());
      for (const auto& g : gens) v += g * pick();
      xs.push_back(v);
    }
    const bool member = trial % 2 == 0;
    RealValue last(pick());
    for (const auto& x : xs) last += x * pick();
    if (!member) last += sqrtp(5 + trial % 3);
    xs.push_back(last);

    auto exact = l_n_decide(xs);
    auto semi = l_n_semidecide(xs, member ? 200000 : 5000);
    const auto* found = std::get_if<Found>(&semi);
    if (exact.has_value() != member || (found != nullptr) != member) ++disagree;
    if (exact && !satisfies_affine(xs, *exact)) ++witness_bad;
    if (found && !satisfies_affine(xs, found->witness)) ++witness_bad;
    members += member;
  }
  // L_1 = Q.
  std::size_t q_bad = 0;
  for (int a = -10; a < 10; ++a) {
    for (int b = 1; b <= 5; ++b) {
      Rational q(a, b);
      q.canonicalize();
      std::vector<RealValue> x{RealValue(q)};
      auto w = l_n_decide(x);
      auto s = l_n_semidecide(x, 100000);
      if (!w || (*w)[0] != q || !std::holds_alternative<Found>(s)) ++q_bad;
    }
  }
  const std::vector<RealValue> irr{sqrtp(1),           pi(),
                                   RealValue(1) + sqrtp(1), sqrtp(2) - sqrtp(1),
                                   Rational(1, 3) * pi(),   RealValue(-7) + sqrtp(3),
                                   sqrtp(4) + pi(),         Rational(-2) * sqrtp(5),
                                   sqrtp(1) + sqrtp(2) + sqrtp(3), RealValue(5) - pi()};
  for (const auto& v : irr) {
    std::vector<RealValue> x{v};
    auto s = l_n_semidecide(x, 3000);
    if (l_n_decide(x) || rationality_decide(v) || std::holds_alternative<Found>(s)) ++q_bad;
  }
  return {disagree == 0 && witness_bad == 0 && q_bad == 0,
          fmt("500 instances (%zu members): %zu disagreements, %zu bad witnesses; "
              "L_1 = Q on 100 rationals + %zu irrationals: %zu disagreements",
              members, disagree, witness_bad, irr.size(), q_bad)};
}

std::string read_trimmed(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string s = ss.str();
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  return s;
}

// 7. Machine K and the sets P_i.
Verdict kappa() {
  // Grid: 10 points per i, each at least 0.05 from sqrt(p_i).
  std::size_t grid = 0, no_halt = 0, max_tested = 0;
  const std::vector<RealValue> base{RealValue(0),      parse_real("3/2"), RealValue(-4),
                                    parse_real("7/3"), pi(),              RealValue(1) + sqrtp(1),
                                    sqrtp(1),          sqrtp(2),          sqrtp(3),
                                    parse_real("-1/2"), RealValue(9),      parse_real("13/5"),
                                    sqrtp(4),          Rational(1, 2) * pi()};
  for (unsigned i = 1; i <= 5; ++i) {
    const double root = approx(sqrtp(i));
    std::size_t taken = 0;
    for (const auto& x : base) {
      if (taken == 10) break;
      if (std::abs(approx(x) - root) < 0.05) continue;
      ++taken, ++grid;
      auto r = kappa_semidecide(i, x, 100000);
      if (auto* h = std::get_if<KappaHalt>(&r)) {
        max_tested = std::max<std::size_t>(max_tested, h->tested);
      } else {
        ++no_halt;
      }
    }
  }
  // At x = sqrt(p_i) no pair may satisfy the condition; integers say why.
  std::size_t false_hits = 0, pairs = 0;
  for (unsigned i = 1; i <= 5; ++i) {
    const unsigned long p = nth_prime(i);
    RQ pair{0, 1};
    for (int n = 0; n < 10000; ++n, pair = next_pair(pair)) {
      ++pairs;
      // With x = sqrt(p) and r >= 0: x < r/q iff p q^2 < r^2.
      const Integer r2 = Integer(pair.r) * pair.r, pq2 = Integer(p) * pair.q * pair.q;
      const bool x_below = pq2 < r2, x_above = pq2 > r2;
      const bool expected = (x_below && r2 < pq2) || (x_above && r2 > pq2);
      if (kappa_condition(p, sqrtp(i), pair) || expected) ++false_hits;
    }
  }
  // Golden code.
  const std::string golden = read_trimmed(BSS_SOURCE_DIR "/fixtures/kappa.code");
  auto back = decode(kappa_code());
  const bool code_ok = kappa_code().size() == 8060 && kappa_code().to_hex() == golden && back &&
                       *back == kappa_program();
  // 30 constructed points.
  std::size_t points = 0, shape_bad = 0;
  auto expect = [&](const std::vector<RealValue>& pt, unsigned i, bool want) {
    ++points;
    if (p_i_member(pt, i) != want) ++shape_bad;
  };
  for (unsigned i = 1; i <= 3; ++i) {
    const RealValue I(static_cast<long>(i));
    expect(p_i_point(I, parse_real("3/2")), i, true);
    expect(p_i_point(I, pi()), i, true);
    expect(p_i_point(I, sqrtp(i + 1)), i, true);
    expect(p_i_point(I, sqrtp(i)), i, false);
    expect(p_i_point(I, parse_real("3/2")), i + 1, false);
    auto pt = p_i_point(I, RealValue(5));
    auto lead = pt;
    lead[0] = RealValue(3);
    expect(lead, i, false);
    auto flipped = pt;
    flipped[3 + 17 * i] = RealValue(1) - flipped[3 + 17 * i];
    expect(flipped, i, false);
    auto shorter = pt;
    shorter.pop_back();
    expect(shorter, i, false);
    auto longer = pt;
    longer.emplace_back(0);
    expect(longer, i, false);
    auto frac = pt;
    frac[1] = I + parse_real("1/2");
    expect(frac, i, false);
  }
  return {grid == 50 && no_halt == 0 && false_hits == 0 && code_ok && points == 30 && shape_bad == 0,
          fmt("grid %zu points: %zu without a halt (max %zu pairs); %zu pairs at sqrt(p_i): %zu "
              "hits; code golden %s; %zu shape points: %zu wrong",
              grid, no_halt, max_tested, pairs, false_hits, code_ok ? "matches" : "differs", points,
              shape_bad)};
}

// 8. Selection of one square root among the first i.
Verdict sqrt_select() {
  std::size_t cases = 0, bad = 0;
  for (unsigned i = 1; i <= 5; ++i) {
    for (unsigned k = 1; k <= i; ++k) {
      for (unsigned j = 1; j <= i; ++j) {
        ++cases;
        if (sqrt_select_decide(k, sqrtp(j), i) != (j == k ? 1 : 0)) ++bad;
      }
    }
  }
  return {bad == 0, fmt("%zu cases, %zu errors", cases, bad)};
}

// 9. Rational shadows take the target's branches.
Verdict shadows() {
  std::mt19937_64 rng(9);
  testkit::RandomProgramOptions opts;
  opts.level = TestLevel::Order;
  opts.forward_jumps = true;
  opts.max_length = 20;
  opts.registers = 3;
  const std::uint64_t t = 200;
  std::size_t tried = 0, found = 0, mismatches = 0, branches = 0;
  for (int which = 0; which < 2; ++which) {
    const RealValue target = which == 0 ? sqrtp(1) : pi();
    std::size_t taken = 0;
    while (taken < 25) {
      Program p = testkit::random_program(rng, opts);
      std::vector<RealValue> in{target};
      try {
        if (!halted(run_bounded(p, in, nullptr, t))) continue;
      } catch (const Error&) {
        continue;
      }
      auto path = branch_trace(p, target, t);
      if (path.size() < 3) continue;
      ++taken, ++tried;
      branches += path.size();
      auto q = rational_shadow_search(p, target, t, 1000);
      if (!q) continue;
      ++found;
      const RealValue x(*q);
      std::vector<RealValue> qin{x};
      if (branch_trace(p, x, t) != path || !halted(run_bounded(p, qin, nullptr, t))) ++mismatches;
    }
  }
  return {tried == 50 && found > 0 && mismatches == 0,
          fmt("%zu (program, target) pairs, %zu branches, %zu shadows found, %zu mismatches", tried,
              branches, found, mismatches)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"VM semantics", vm_semantics},     {"term shape", term_shape},
      {"encoding", encoding},             {"halting pairs", halting_pairs},
      {"priority construction", priority}, {"L_n", l_n},
      {"machine K and P_i", kappa},       {"sqrt selection", sqrt_select},
      {"path analysis", shadows},
  };
  int failures = 0;
  for (std::size_t n = 0; n < criteria.size(); ++n) {
    Verdict v;
    try {
      v = criteria[n].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += !v.pass;
    std::printf("%s %zu %s: %s\n", v.pass ? "PASS" : "FAIL", n + 1, criteria[n].first,
                v.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
