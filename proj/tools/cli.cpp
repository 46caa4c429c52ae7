#include "cli.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bss/encoding.hpp"
#include "bss/error.hpp"
#include "bss/lowness.hpp"
#include "bss/oracle.hpp"
#include "bss/path.hpp"
#include "bss/priority.hpp"
#include "bss/problems.hpp"
#include "bss/simulation.hpp"

namespace bss::cli {

namespace {

using nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Program load_program(const std::string& path) { return parse_program(read_file(path)); }

std::vector<RealValue> parse_values(const std::string& text) {
  std::vector<RealValue> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_real(item));
  if (out.empty()) throw UsageError("expected at least one value");
  return out;
}

ordered_json values_json(std::span<const RealValue> xs) {
  ordered_json a = ordered_json::array();
  for (const auto& x : xs) a.push_back(x.to_string());
  return a;
}

std::string values_text(std::span<const RealValue> xs) {
  std::string s = "(";
  for (std::size_t k = 0; k < xs.size(); ++k) s += (k ? ", " : "") + xs[k].to_string();
  return s + ")";
}

OracleSpec load_oracle(const std::string& spec) {
  if (spec.empty() || spec == "none") return empty_oracle();
  std::ifstream probe(spec);
  if (!probe) return oracle_by_name(spec);
  // A file: one tuple per line, values separated by commas.
  std::vector<std::vector<RealValue>> tuples;
  std::string line;
  while (std::getline(probe, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    tuples.push_back(parse_values(line));
  }
  return tuple_list_oracle(std::move(tuples), spec);
}

Dialect parse_dialect(const std::string& name) {
  if (name == "eq") return kEqualityDialect;
  if (name == "order") return kOrderDialect;
  if (name == "order-oracle") return kOrderOracleDialect;
  throw UsageError("unknown dialect '" + name + "' (eq, order, order-oracle)");
}

std::string one_line(const Program& p) {
  std::string s;
  for (const auto& in : p.instructions()) s += (s.empty() ? "" : "; ") + instruction_text(in);
  return s;
}

struct Options {
  std::string file;
  std::string input;
  std::string oracle = "none";
  std::string format = "json";
  std::uint64_t steps = 1000;
  std::uint64_t budget = 1000;
};

void add_common(CLI::App* cmd, Options& o, bool file, bool input) {
  if (file) cmd->add_option("file", o.file, "program file (.bss)")->required();
  if (input) cmd->add_option("--input", o.input, "comma-separated values");
  cmd->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Additive real machines: run, encode, enumerate, construct.", "bssctl"};
  app.require_subcommand(1);
  Options o;

  auto* run = app.add_subcommand("run", "run a program on an input");
  add_common(run, o, true, true);
  run->add_option("--steps", o.steps, "step budget");
  run->add_option("--oracle", o.oracle, "oracle name or tuple file");

  auto* trace = app.add_subcommand("trace", "run and print every step as JSON lines");
  add_common(trace, o, true, true);
  trace->add_option("--steps", o.steps, "step budget");
  trace->add_option("--oracle", o.oracle, "oracle name or tuple file");

  auto* enc = app.add_subcommand("encode", "bit code of a program");
  add_common(enc, o, true, false);

  std::string bits;
  auto* dec = app.add_subcommand("decode", "program for a bit code (binary or <len>:<hex>)");
  dec->add_option("bits", bits, "bit string")->required();
  dec->add_option("--format", o.format)->check(CLI::IsMember({"json", "text"}));

  auto* idx = app.add_subcommand("index", "Goedel index of a program");
  add_common(idx, o, true, false);

  std::uint64_t count = 100;
  std::string dialect = "order-oracle";
  bool all = false;
  auto* enm = app.add_subcommand("enumerate", "machines 1..count");
  enm->add_option("--count", count, "how many indices")->check(CLI::PositiveNumber);
  enm->add_option("--dialect", dialect, "eq, order or order-oracle");
  enm->add_flag("--all", all, "also list trivial fill-ins");
  enm->add_option("--format", o.format)->check(CLI::IsMember({"json", "text"}));

  std::string index_text;
  std::uint64_t snapshot = 0;
  auto* hp = app.add_subcommand("halting-pairs", "dovetailed halting pairs as CSV i,n,t");
  hp->add_option("file", o.file, "program file (.bss)");
  hp->add_option("--index", index_text, "machine index instead of a file (M_add^{1,=})");
  hp->add_option("--budget", o.budget, "dovetail rounds");
  hp->add_option("--snapshot", snapshot, "print W_{i,s} for s = this value instead");

  std::uint64_t max_stage = 50;
  std::string synthetic;
  auto* stages = app.add_subcommand("stages", "stage log of the construction as JSON lines");
  stages->add_option("--max", max_stage, "final stage S")->check(CLI::PositiveNumber);
  stages->add_option("--synthetic", synthetic, "synthetic fixture (JSON)");

  std::string problem, point;
  unsigned pi = 1, pk = 1;
  auto* prob = app.add_subcommand("problem", "decision problems: l_n, kappa, p_i, h_i, select");
  prob->add_option("name", problem, "l_n, kappa, p_i, h_i or select")
      ->required()
      ->check(CLI::IsMember({"l_n", "kappa", "p_i", "h_i", "select"}));
  prob->add_option("--input", o.input, "x (kappa, p_i, select) or the tuple (l_n)");
  prob->add_option("--point", point, "full point (p_i, h_i)");
  prob->add_option("--i", pi, "prime index i");
  prob->add_option("--k", pk, "selected index k (select)");
  prob->add_option("--budget", o.budget, "search budget");

  std::string target;
  std::uint64_t bound = 1000;
  auto* shadow = app.add_subcommand("shadow", "rational input taking the same path as a target");
  add_common(shadow, o, true, false);
  shadow->add_option("--target", target, "irrational target, e.g. sqrt(2)")->required();
  shadow->add_option("--steps", o.steps, "step horizon t");
  shadow->add_option("--bound", bound, "largest denominator tried");
  shadow->add_option("--oracle", o.oracle, "oracle name or tuple file");

  std::vector<std::string> argv_store{"bssctl"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  const bool json = o.format == "json";
  try {
    if (*run) {
      Program p = load_program(o.file);
      OracleSpec oracle = load_oracle(o.oracle);
      auto outcome = run_bounded(p, parse_values(o.input.empty() ? "0" : o.input), &oracle, o.steps);
      if (auto* h = std::get_if<Halted>(&outcome)) {
        if (json) {
          out << ordered_json{{"halted", true}, {"halted_at", h->halted_at}, {"output", values_json(h->output)}}.dump() << "\n";
        } else {
          out << "halted at step " << h->halted_at << ": " << values_text(h->output) << "\n";
        }
        return kOk;
      }
      if (json) {
        out << ordered_json{{"halted", false}, {"steps", o.steps}}.dump() << "\n";
      } else {
        out << "no halt within " << o.steps << " steps\n";
      }
      return kNo;
    }

    if (*trace) {
      Program p = load_program(o.file);
      OracleSpec oracle = load_oracle(o.oracle);
      auto outcome = run_bounded(
          p, parse_values(o.input.empty() ? "0" : o.input), &oracle, o.steps,
          [&](const MachineState& s, const StepInfo& info) {
            ordered_json line{{"step", s.steps}, {"label", info.label}};
            if (info.changed_register) {
              line["set"] = {{"Z" + std::to_string(*info.changed_register),
                              read_register(s, *info.changed_register).to_string()}};
            }
            if (info.changed_index) {
              line["set"] = {{"I" + std::to_string(*info.changed_index), s.index[*info.changed_index - 1]}};
            }
            if (info.branch) line["branch"] = *info.branch;
            if (info.query) line["query"] = {{"tuple", values_json(info.query->tuple)}, {"member", info.query->member}};
            if (info.output) line["output"] = values_json(*info.output);
            if (json) {
              out << line.dump() << "\n";
            } else {
              out << s.steps << "  " << info.label << ": "
                  << (info.label <= p.size() ? instruction_text(p.at(info.label)) : "halt") << "\n";
            }
          });
      return halted(outcome) ? kOk : kNo;
    }

    if (*enc) {
      BitString code = encode(load_program(o.file));
      if (json) {
        out << ordered_json{{"length", code.size()}, {"bits", code.to_binary()}, {"hex", code.to_hex()}}.dump() << "\n";
      } else {
        out << code.to_binary() << "\n";
      }
      return kOk;
    }

    if (*dec) {
      auto p = decode(BitString::parse(bits));
      if (!p) {
        out << (json ? ordered_json{{"valid", false}}.dump() : std::string("Invalid")) << "\n";
        return kNo;
      }
      if (json) {
        out << ordered_json{{"valid", true}, {"dialect", p->dialect().name()}, {"program", emit_program(*p)}}.dump() << "\n";
      } else {
        out << emit_program(*p);
      }
      return kOk;
    }

    if (*idx) {
      Program p = load_program(o.file);
      BitString code = encode(p);
      Integer K = index_of_code(code);
      if (json) {
        out << ordered_json{{"K", K.get_str()}, {"code_length", code.size()}}.dump() << "\n";
      } else {
        out << K.get_str() << "\n";
      }
      return kOk;
    }

    if (*enm) {
      const Dialect d = parse_dialect(dialect);
      for (const auto& [k, p] : enumerate_machines(d, count)) {
        const bool trivial = p == trivial_program() && k != godel_index(trivial_program());
        if (trivial && !all) continue;
        if (json) {
          out << ordered_json{{"k", k.get_str()}, {"trivial", trivial}, {"program", one_line(p)}}.dump() << "\n";
        } else {
          out << k.get_str() << "\t" << (trivial ? "(trivial) " : "") << one_line(p) << "\n";
        }
      }
      return kOk;
    }

    if (*hp) {
      if (o.file.empty() == index_text.empty()) throw UsageError("give a program file or --index");
      Integer i;
      Program p;
      if (!index_text.empty()) {
        if (i.set_str(index_text, 10) != 0 || i < 1) throw UsageError("--index must be a positive integer");
        p = machine_at(i, kEqualityDialect);
      } else {
        p = load_program(o.file);
        i = godel_index(p);
      }
      if (snapshot > 0) {
        HaltingEnumerator e(p);
        e.advance_to(snapshot);
        std::set<std::uint64_t> members;
        for (std::size_t k = 0; k < e.emitted_by(snapshot); ++k) members.insert(e.pairs()[k].n);
        out << ordered_json{{"i", i.get_str()}, {"s", snapshot}, {"members", members}}.dump() << "\n";
        return kOk;
      }
      out << "i,n,t\n";
      for (const auto& pair : enumerate_halting_pairs(p, o.budget)) {
        out << i.get_str() << "," << pair.n << "," << pair.t << "\n";
      }
      return kOk;
    }

    if (*stages) {
      std::shared_ptr<EnumeratorList> W;
      std::shared_ptr<MachineList> M;
      if (!synthetic.empty()) {
        auto setup = load_synthetic(read_file(synthetic));
        W = setup.enumerators, M = setup.machines;
      } else {
        W = std::make_shared<GenuineEnumerators>();
        M = std::make_shared<GenuineMachines>();
      }
      auto [record, events] = run_stages(max_stage, W, M);
      for (const auto& e : events) {
        ordered_json line{{"s", e.s}, {"I_s", e.I}};
        line["i_s"] = e.i_s ? ordered_json(*e.i_s) : ordered_json(nullptr);
        line["x"] = e.x ? ordered_json(*e.x) : ordered_json(nullptr);
        line["A_size"] = e.A_size;
        out << line.dump() << "\n";
      }
      out << ordered_json{{"S", record.s}, {"A", record.A}}.dump() << "\n";
      return kOk;
    }

    if (*prob) {
      ordered_json result{{"problem", problem}};
      int status = kOk;
      if (problem == "l_n") {
        auto xs = parse_values(o.input);
        auto w = l_n_decide(xs);
        result["member"] = w.has_value();
        if (w) {
          ordered_json q = ordered_json::array();
          for (const auto& v : *w) q.push_back(to_string(v));
          result["witness"] = q;
        }
        auto semi = l_n_semidecide(xs, o.budget);
        if (auto* f = std::get_if<Found>(&semi)) {
          ordered_json q = ordered_json::array();
          for (const auto& v : f->witness) q.push_back(to_string(v));
          result["semi"] = {{"halted", true}, {"witness", q}, {"tested", f->tested}};
        } else {
          result["semi"] = {{"halted", false}, {"tested", o.budget}};
        }
        status = w ? kOk : kNo;
      } else if (problem == "kappa") {
        auto xs = parse_values(o.input);
        auto r = kappa_semidecide(pi, xs.at(0), o.budget);
        if (auto* h = std::get_if<KappaHalt>(&r)) {
          result["halted"] = true;
          result["r"] = h->pair.r;
          result["q"] = h->pair.q;
          result["tested"] = h->tested;
        } else {
          result["halted"] = false;
          result["tested"] = o.budget;
          status = kNo;
        }
      } else if (problem == "p_i") {
        std::vector<RealValue> pt = point.empty() ? p_i_point(RealValue(static_cast<long>(pi)), parse_values(o.input).at(0))
                                                  : parse_values(point);
        const bool member = p_i_member(pt, pi);
        result["member"] = member;
        status = member ? kOk : kNo;
      } else if (problem == "h_i") {
        if (point.empty()) throw UsageError("h_i needs --point");
        auto r = h_i_semidecide(parse_values(point), pi, o.budget);
        if (auto* a = std::get_if<Accepted>(&r)) {
          result["halted"] = true;
          result["route"] = a->route;
          result["rounds"] = a->rounds;
        } else {
          result["halted"] = false;
          result["rounds"] = o.budget;
          status = kNo;
        }
      } else {
        std::uint64_t used = 0;
        const int v = sqrt_select_decide(pk, parse_values(o.input).at(0), pi, &used);
        result["value"] = v;
        result["pairs"] = used;
      }
      if (json) {
        out << result.dump() << "\n";
      } else {
        for (const auto& [key, value] : result.items()) out << key << ": " << value.dump() << "\n";
      }
      return status;
    }

    if (*shadow) {
      Program p = load_program(o.file);
      OracleSpec oracle = load_oracle(o.oracle);
      const RealValue x0 = parse_real(target);
      ConstraintSystem sys = extract_path_constraints(p, x0, o.steps, &oracle);
      auto q = rational_shadow_search(p, x0, o.steps, bound, &oracle);
      ordered_json atoms = ordered_json::array();
      for (const auto& a : sys.atoms) {
        if (a.rel == Relation::OracleIn || a.rel == Relation::OracleOut) {
          ordered_json args = ordered_json::array();
          for (const auto& t : a.args) args.push_back(t.to_string());
          atoms.push_back({{"oracle", args}, {"member", a.rel == Relation::OracleIn}});
        } else {
          atoms.push_back(a.term.to_string() + " " + to_string(a.rel));
        }
      }
      ordered_json result{{"target", x0.to_string()}, {"steps", sys.steps}, {"atoms", atoms}};
      result["shadow"] = q ? ordered_json(to_string(*q)) : ordered_json(nullptr);
      if (json) {
        out << result.dump() << "\n";
      } else {
        for (const auto& [key, value] : result.items()) out << key << ": " << value.dump() << "\n";
      }
      return q ? kOk : kNo;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace bss::cli
