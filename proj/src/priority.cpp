#include "bss/priority.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bss/error.hpp"

namespace bss {

namespace {

std::optional<std::uint64_t> as_positive(const RealValue& v) {
  if (!v.is_integer()) return std::nullopt;
  const Integer z = v.constant().get_num();
  if (z < 1 || !z.fits_ulong_p()) return std::nullopt;
  return z.get_ui();
}

bool member(const Members& A, std::span<const RealValue> tuple) {
  if (tuple.size() != 1) return false;
  auto x = as_positive(tuple[0]);
  return x && A.count(*x) > 0;
}

Integer max_integer_component(std::span<const RealValue> tuple, Integer current) {
  for (const auto& v : tuple) {
    if (v.is_integer() && v.constant() > current) current = v.constant().get_num();
  }
  return current;
}

}  // namespace

Members GenuineEnumerators::W(std::uint64_t i, std::uint64_t s) {
  auto& e = cache_[i];
  if (!e) e = std::make_unique<HaltingEnumerator>(machine_at(Integer(static_cast<unsigned long>(i)), kEqualityDialect));
  e->advance_to(s);
  Members out;
  const std::size_t count = e->emitted_by(s);
  for (std::size_t k = 0; k < count; ++k) out.insert(e->pairs()[k].n);
  return out;
}

const Program& GenuineMachines::machine(std::uint64_t j) {
  auto it = cache_.find(j);
  if (it == cache_.end()) {
    it = cache_.emplace(j, machine_at(Integer(static_cast<unsigned long>(j)), kOrderOracleDialect)).first;
  }
  return it->second;
}

OracleRunTracker::OracleRunTracker(const Program& p, std::vector<RealValue> input)
    : program_(&p), input_(std::move(input)) {}

void OracleRunTracker::restart() {
  state_ = init_state(*program_, input_);
  queries_.clear();
  status_ = Status{};
}

const OracleRunTracker::Status& OracleRunTracker::advance(const Members& A, std::uint64_t budget) {
  bool stale = !state_;
  for (const auto& q : queries_) {
    if (member(seen_, q) != member(A, q)) {
      stale = true;
      break;
    }
  }
  seen_ = A;
  if (stale) restart();

  OracleSpec oracle{"finite-set", [this](std::span<const RealValue> t) { return member(seen_, t); }};
  while (!status_.halted && state_->steps < budget) {
    StepInfo info = step(*state_, *program_, &oracle);
    if (info.query) {
      status_.max_query = max_integer_component(info.query->tuple, status_.max_query);
      queries_.push_back(info.query->tuple);
    }
    if (info.output) {
      status_.halted = true;
      status_.output = std::move(*info.output);
    }
  }
  status_.steps = state_->steps;
  return status_;
}

Integer query_bound(const Program& machine, std::uint64_t j, std::uint64_t s, const Members& A_s) {
  OracleRunTracker run(machine, {RealValue(static_cast<long>(j))});
  const auto& st = run.advance(A_s, s);
  return st.halted ? st.max_query : Integer(0);
}

bool phi(std::uint64_t i, std::uint64_t x, const QueryBoundTable& bounds) {
  if (!(2 * i < x)) return false;
  for (std::uint64_t j = 1; j <= i; ++j) {
    auto it = bounds.find(j);
    if (it != bounds.end() && !(it->second < x)) return false;
  }
  return true;
}

namespace {

// Shared body of one stage; `bound(j)` yields a(j, s).
template <class Bound>
StageEvent perform_stage(StageRecord& r, EnumeratorList& W, Bound&& bound) {
  const std::uint64_t s = r.s;
  StageEvent ev;
  ev.s = s;

  QueryBoundTable table;
  Integer prefix_max = 0;  // max_{j <= known} a(j, s)
  std::uint64_t known = 0;
  auto ensure = [&](std::uint64_t i) {
    while (known < i) {
      ++known;
      Integer a = bound(known);
      table[known] = a;
      if (a > prefix_max) prefix_max = a;
    }
  };

  std::optional<std::uint64_t> chosen_x;
  for (std::uint64_t i = 1; i <= s; ++i) {
    Members w = W.W(i, s);
    if (w.empty()) continue;
    bool meets = std::any_of(w.begin(), w.end(), [&](std::uint64_t x) { return r.A.count(x) > 0; });
    if (meets) {
      r.satisfied.insert(i);
      continue;
    }
    // Only x > 2i can satisfy phi; skip the bound computation otherwise.
    if (*w.rbegin() <= 2 * i) continue;
    ensure(i);
    for (std::uint64_t x : w) {
      if (x > 2 * i && prefix_max < x) {
        ev.I.push_back(i);
        if (!ev.i_s) {
          ev.i_s = i;
          chosen_x = x;
        }
        break;
      }
    }
  }
  if (ev.i_s) {
    ev.x = chosen_x;
    r.A.insert(*chosen_x);
    r.active_history.push_back({s, *ev.i_s, *chosen_x});
    r.satisfied.insert(*ev.i_s);
  }
  ev.A_size = r.A.size();
  ++r.s;
  return ev;
}

}  // namespace

StageRecord stage_step(const StageRecord& r, EnumeratorList& W, MachineList& M, StageEvent* event) {
  StageRecord next = r;
  const Members A_s = r.A;
  StageEvent ev = perform_stage(next, W, [&](std::uint64_t j) {
    return query_bound(M.machine(j), j, r.s, A_s);
  });
  if (event) *event = std::move(ev);
  return next;
}

Construction::Construction(std::shared_ptr<EnumeratorList> W, std::shared_ptr<MachineList> M)
    : W_(std::move(W)), M_(std::move(M)) {}

Integer Construction::bound_locked(std::uint64_t j) {
  auto& t = trackers_[j];
  if (!t) t = std::make_unique<OracleRunTracker>(M_->machine(j), std::vector<RealValue>{RealValue(static_cast<long>(j))});
  const auto& st = t->advance(record_.A, record_.s);
  return st.halted ? st.max_query : Integer(0);
}

void Construction::step_locked() {
  StageEvent ev = perform_stage(record_, *W_, [&](std::uint64_t j) { return bound_locked(j); });
  if (ev.x) additions_.emplace(*ev.x, ev.s);
  events_.push_back(std::move(ev));
}

void Construction::run_to(std::uint64_t S) {
  std::lock_guard lock(mutex_);
  while (record_.s < S) step_locked();
}

StageRecord Construction::record() const {
  std::lock_guard lock(mutex_);
  return record_;
}

std::vector<StageEvent> Construction::events() const {
  std::lock_guard lock(mutex_);
  return events_;
}

Members Construction::A_at(std::uint64_t s) {
  std::lock_guard lock(mutex_);
  while (record_.s < s) step_locked();
  Members out;
  for (const auto& [x, stage] : additions_) {
    if (stage < s) out.insert(x);
  }
  return out;
}

std::optional<std::uint64_t> Construction::entered_at(std::uint64_t x) const {
  std::lock_guard lock(mutex_);
  auto it = additions_.find(x);
  if (it == additions_.end()) return std::nullopt;
  return it->second;
}

std::pair<StageRecord, std::vector<StageEvent>> run_stages(std::uint64_t S,
                                                           std::shared_ptr<EnumeratorList> W,
                                                           std::shared_ptr<MachineList> M) {
  if (S < 1) throw Error(ErrorCode::PreconditionViolated, "S must be >= 1");
  Construction c(std::move(W), std::move(M));
  c.run_to(S);
  return {c.record(), c.events()};
}

std::optional<std::uint64_t> first_sparsity_violation(const Members& A) {
  if (A.empty()) return std::nullopt;
  const std::uint64_t limit = *A.rbegin() / 2 + A.size() + 1;
  std::uint64_t count = 0;
  auto it = A.begin();
  for (std::uint64_t i = 1; i <= limit; ++i) {
    while (it != A.end() && *it <= 2 * i) ++count, ++it;
    if (count >= i) return i;
  }
  return std::nullopt;
}

bool lowness_coherent(Construction& c, std::uint64_t n, std::uint64_t S) {
  c.run_to(S);
  std::uint64_t last = 0;
  for (const auto& e : c.record().active_history) {
    if (e.i <= n) last = std::max(last, e.s);
  }
  std::vector<Members> A(S + 1);
  for (std::uint64_t t = 1; t <= S; ++t) A[t] = c.A_at(t);

  OracleRunTracker run(c.machines().machine(n), {RealValue(static_cast<long>(n))});
  std::optional<std::vector<RealValue>> settled;
  for (std::uint64_t t = last + 1; t <= S; ++t) {
    const auto& st = run.advance(A[t], t);
    if (settled) {
      if (!st.halted || st.output != *settled) return false;
    } else if (st.halted) {
      settled = st.output;
    }
  }
  return true;
}

namespace {

class SyntheticEnumerators final : public EnumeratorList {
 public:
  struct Arithmetic {
    std::uint64_t start, step, every, from;
  };
  struct Listed {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> members;  // (x, from stage)
  };
  struct FromProgram {
    std::unique_ptr<HaltingEnumerator> e;
  };
  using Source = std::variant<Arithmetic, Listed, FromProgram>;

  std::map<std::uint64_t, Source> sources;
  std::vector<std::uint64_t> infinite;

  Members W(std::uint64_t i, std::uint64_t s) override {
    auto it = sources.find(i);
    if (it == sources.end()) return {};
    Members out;
    if (auto* a = std::get_if<Arithmetic>(&it->second)) {
      if (s >= a->from) {
        const std::uint64_t m = (s - a->from) / a->every;
        for (std::uint64_t k = 0; k <= m; ++k) out.insert(a->start + a->step * k);
      }
    } else if (auto* l = std::get_if<Listed>(&it->second)) {
      for (const auto& [x, from] : l->members) {
        if (from <= s) out.insert(x);
      }
    } else {
      auto& e = *std::get<FromProgram>(it->second).e;
      e.advance_to(s);
      const std::size_t count = e.emitted_by(s);
      for (std::size_t k = 0; k < count; ++k) out.insert(e.pairs()[k].n);
    }
    return out;
  }
  std::vector<std::uint64_t> infinite_indices() const override { return infinite; }
};

class SyntheticMachines final : public MachineList {
 public:
  std::map<std::uint64_t, Program> programs;
  const Program& machine(std::uint64_t j) override {
    auto it = programs.find(j);
    return it == programs.end() ? trivial_program() : it->second;
  }
};

[[noreturn]] void bad_fixture(const std::string& what) {
  throw Error(ErrorCode::InvalidValue, "synthetic fixture: " + what);
}

std::uint64_t positive(const nlohmann::json& obj, const char* key, std::uint64_t fallback = 0) {
  if (!obj.contains(key)) {
    if (fallback == 0) bad_fixture(std::string("missing '") + key + "'");
    return fallback;
  }
  const auto& v = obj.at(key);
  if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0) {
    bad_fixture(std::string("'") + key + "' must be a positive integer");
  }
  return v.get<std::uint64_t>();
}

}  // namespace

SyntheticSetup load_synthetic(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    bad_fixture(e.what());
  }
  auto W = std::make_shared<SyntheticEnumerators>();
  auto M = std::make_shared<SyntheticMachines>();

  for (const auto& e : doc.value("enumerators", nlohmann::json::array())) {
    const std::uint64_t i = positive(e, "i");
    const std::string kind = e.value("kind", "");
    bool infinite = false;
    if (kind == "list") {
      SyntheticEnumerators::Listed l;
      for (const auto& m : e.at("members")) {
        if (m.is_array()) {
          if (m.size() != 2 || !m[0].is_number_unsigned() || !m[1].is_number_unsigned()) {
            bad_fixture("list members are x or [x, from]");
          }
          l.members.emplace_back(m[0].get<std::uint64_t>(), m[1].get<std::uint64_t>());
        } else if (m.is_number_unsigned()) {
          l.members.emplace_back(m.get<std::uint64_t>(), 1);
        } else {
          bad_fixture("list members are x or [x, from]");
        }
      }
      W->sources.emplace(i, std::move(l));
    } else if (kind == "arithmetic") {
      SyntheticEnumerators::Arithmetic a{positive(e, "start"), positive(e, "step"),
                                         positive(e, "every", 1), positive(e, "from", 1)};
      W->sources.emplace(i, a);
      infinite = true;
    } else if (kind == "program") {
      Program p = parse_program(e.at("program").get<std::string>());
      W->sources.emplace(i, SyntheticEnumerators::FromProgram{std::make_unique<HaltingEnumerator>(std::move(p))});
    } else {
      bad_fixture("unknown enumerator kind '" + kind + "'");
    }
    if (e.value("infinite", infinite)) W->infinite.push_back(i);
  }
  for (const auto& m : doc.value("machines", nlohmann::json::array())) {
    M->programs.insert_or_assign(positive(m, "j"), parse_program(m.at("program").get<std::string>()));
  }
  std::sort(W->infinite.begin(), W->infinite.end());
  return {W, M};
}

SyntheticSetup load_synthetic_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidValue, "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return load_synthetic(buf.str());
}

}  // namespace bss
