#include "imp/difftest.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "imp/compiler.hpp"
#include "imp/optim.hpp"
#include "imp/parser.hpp"
#include "imp/printer.hpp"
#include "imp/semantics.hpp"

namespace imp {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Configuration and randomness

void GenConfig::validate() const {
  if (var_pool.empty()) throw std::invalid_argument("var_pool is empty");
  if (max_depth < 1) throw std::invalid_argument("max_depth must be >= 1");
  if (const_min > const_max) {
    throw std::invalid_argument("const_range is empty");
  }
  if (!(loop_probability >= 0.0 && loop_probability <= 1.0)) {
    throw std::invalid_argument("loop_probability must lie in [0, 1]");
  }
}

json GenConfig::to_json() const {
  json pool = json::array();
  for (const auto& v : var_pool) pool.push_back(v.name());
  return json{{"seed", seed},
              {"max_depth", max_depth},
              {"var_pool", pool},
              {"const_range", {const_min.str(), const_max.str()}},
              {"loop_probability", loop_probability}};
}

std::int64_t Rng::range(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw std::invalid_argument("empty range");
  const auto span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
  if (span == std::numeric_limits<std::uint64_t>::max()) {
    return static_cast<std::int64_t>(next());
  }
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) +
                                   next() % (span + 1));
}

Integer Rng::range(const Integer& lo, const Integer& hi) {
  if (lo > hi) throw std::invalid_argument("empty range");
  const Integer span = hi - lo + 1;
  Integer acc = 0;
  Integer limit = 1;
  while (limit < span * 1024) {
    acc = (acc << 64) + next();
    limit <<= 64;
  }
  return lo + acc % span;
}

double Rng::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index));
}

// ---------------------------------------------------------------------------
// Generation

namespace {

/// Appends `last` at the end of a right-nested sequence.
Cmd append_cmd(const Cmd& c, Cmd last) {
  if (const auto* s = std::get_if<cmd::Seq>(&c.node)) {
    return seq(*s->first, append_cmd(*s->second, std::move(last)));
  }
  return seq(c, std::move(last));
}

class ProgramGen {
 public:
  ProgramGen(const GenConfig& cfg, Rng& rng) : cfg_(cfg), rng_(rng) {}

  Cmd cmd(std::size_t depth, const VarSet& frozen) {
    if (depth <= 1) return leaf(frozen);
    if (rng_.chance(0.4)) {
      Cmd first = item(depth - 1, frozen);
      return seq(std::move(first), cmd(depth - 1, frozen));
    }
    return item(depth, frozen);
  }

  Expr expr(std::size_t depth) {
    if (depth == 0 || rng_.chance(0.55)) {
      if (rng_.chance(0.6)) return evar(pick(cfg_.var_pool));
      return econst(constant());
    }
    Expr lhs = expr(depth - 1);
    Expr rhs = expr(depth - 1);
    return rng_.chance(0.5) ? eadd(std::move(lhs), std::move(rhs))
                            : esub(std::move(lhs), std::move(rhs));
  }

  BoolExpr cond() {
    Expr lhs = expr(1);
    Expr rhs = expr(1);
    return rng_.chance(0.35) ? beq(std::move(lhs), std::move(rhs))
                             : blt(std::move(lhs), std::move(rhs));
  }

  Cmd loop(std::size_t depth, const VarSet& frozen) {
    auto free = assignable(frozen);
    if (!free.empty() && rng_.chance(0.8)) {
      // while c < k do body; k := k - 1 done, with k frozen in body
      Ident k = pick(free);
      VarSet inner = frozen;
      inner.insert(k);
      Cmd body = cmd(depth - 1, inner);
      Cmd decrement = assign(k, esub(evar(k), econst(1)));
      return while_do(blt(econst(constant()), evar(k)),
                      append_cmd(body, std::move(decrement)));
    }
    BoolExpr b = cond();
    return while_do(std::move(b), cmd(depth - 1, frozen));
  }

 private:
  Cmd leaf(const VarSet& frozen) {
    auto free = assignable(frozen);
    if (free.empty() || rng_.chance(0.2)) return skip();
    Ident x = pick(free);
    return assign(std::move(x), expr(2));
  }

  Cmd item(std::size_t depth, const VarSet& frozen) {
    if (depth <= 1) return leaf(frozen);
    if (rng_.chance(cfg_.loop_probability)) return loop(depth, frozen);
    if (rng_.chance(0.6)) return leaf(frozen);
    BoolExpr b = cond();
    Cmd c1 = cmd(depth - 1, frozen);
    Cmd c2 = cmd(depth - 1, frozen);
    return if_then_else(std::move(b), std::move(c1), std::move(c2));
  }

  std::vector<Ident> assignable(const VarSet& frozen) const {
    std::vector<Ident> out;
    for (const auto& v : cfg_.var_pool) {
      if (!frozen.count(v)) out.push_back(v);
    }
    return out;
  }

  Ident pick(const std::vector<Ident>& from) { return from[rng_.index(from.size())]; }

  Integer constant() { return rng_.range(cfg_.const_min, cfg_.const_max); }

  const GenConfig& cfg_;
  Rng& rng_;
};

}  // namespace

Cmd gen_program(const GenConfig& cfg, Rng& rng) {
  cfg.validate();
  return ProgramGen(cfg, rng).cmd(cfg.max_depth, {});
}

Cmd gen_program(const GenConfig& cfg) {
  Rng rng(cfg.seed);
  return gen_program(cfg, rng);
}

Expr gen_expr(const GenConfig& cfg, Rng& rng, std::size_t depth) {
  return ProgramGen(cfg, rng).expr(depth);
}

BoolExpr gen_bool(const GenConfig& cfg, Rng& rng) {
  return ProgramGen(cfg, rng).cond();
}

State gen_state(const GenConfig& cfg, Rng& rng) {
  State s;
  for (const auto& v : cfg.var_pool) {
    s.set(v, rng.range(cfg.const_min, cfg.const_max));
  }
  return s;
}

// ---------------------------------------------------------------------------
// Shrinking

namespace {

void expr_variants(const Expr& e, const std::function<void(Expr)>& emit) {
  const auto* c = std::get_if<expr::Const>(&e.node);
  if (!(c && c->value == 0)) emit(econst(0));
  if (const auto* a = std::get_if<expr::Add>(&e.node)) {
    expr_variants(*a->lhs, [&](Expr l) { emit(eadd(std::move(l), *a->rhs)); });
    expr_variants(*a->rhs, [&](Expr r) { emit(eadd(*a->lhs, std::move(r))); });
  } else if (const auto* s = std::get_if<expr::Sub>(&e.node)) {
    expr_variants(*s->lhs, [&](Expr l) { emit(esub(std::move(l), *s->rhs)); });
    expr_variants(*s->rhs, [&](Expr r) { emit(esub(*s->lhs, std::move(r))); });
  }
}

void bool_variants(const BoolExpr& b, const std::function<void(BoolExpr)>& emit) {
  expr_variants(b.lhs, [&](Expr l) { emit(BoolExpr{b.op, std::move(l), b.rhs}); });
  expr_variants(b.rhs, [&](Expr r) { emit(BoolExpr{b.op, b.lhs, std::move(r)}); });
}

void cmd_variants(const Cmd& c, const std::function<void(Cmd)>& emit) {
  if (c.is_skip()) return;
  emit(skip());
  std::visit(
      overloaded{
          [](const cmd::Skip&) {},
          [&](const cmd::Assign& a) {
            expr_variants(a.value, [&](Expr e) { emit(assign(a.target, std::move(e))); });
          },
          [&](const cmd::Seq& s) {
            cmd_variants(*s.first, [&](Cmd x) { emit(seq(std::move(x), *s.second)); });
            cmd_variants(*s.second, [&](Cmd x) { emit(seq(*s.first, std::move(x))); });
          },
          [&](const cmd::If& i) {
            bool_variants(i.cond, [&](BoolExpr b) {
              emit(if_then_else(std::move(b), *i.then_branch, *i.else_branch));
            });
            cmd_variants(*i.then_branch, [&](Cmd x) {
              emit(if_then_else(i.cond, std::move(x), *i.else_branch));
            });
            cmd_variants(*i.else_branch, [&](Cmd x) {
              emit(if_then_else(i.cond, *i.then_branch, std::move(x)));
            });
          },
          [&](const cmd::While& w) {
            bool_variants(w.cond, [&](BoolExpr b) { emit(while_do(std::move(b), *w.body)); });
            cmd_variants(*w.body, [&](Cmd x) { emit(while_do(w.cond, std::move(x))); });
          },
      },
      c.node);
}

}  // namespace

Cmd shrink(const Cmd& c, const std::function<bool(const Cmd&)>& still_fails) {
  Cmd current = c;
  for (;;) {
    std::vector<Cmd> candidates;
    cmd_variants(current, [&](Cmd v) { candidates.push_back(std::move(v)); });
    bool improved = false;
    for (auto& candidate : candidates) {
      if (still_fails(candidate)) {
        current = std::move(candidate);
        improved = true;
        break;
      }
    }
    if (!improved) return current;
  }
}

// ---------------------------------------------------------------------------
// Reports

json Report::to_json() const {
  json failure_list = json::array();
  for (const auto& f : failures) {
    failure_list.push_back(
        json{{"case", f.case_index}, {"program", f.program}, {"detail", f.detail}});
  }
  json stat_obj = json::object();
  for (const auto& [k, v] : stats) stat_obj[k] = v;
  json warning_list = json::array();
  for (const auto& w : warnings) warning_list.push_back(w);
  return json{{"campaign", campaign}, {"cfg", cfg},         {"cases", cases},
              {"passed", passed},     {"failed", failed},   {"stats", stat_obj},
              {"failures", failure_list}, {"warnings", warning_list}};
}

namespace {

std::string outcome_kind(const Outcome& o) {
  if (std::holds_alternative<outcome::Terminated>(o)) return "terminated";
  if (std::holds_alternative<outcome::GoesWrong>(o)) return "goes-wrong";
  return "out-of-fuel";
}

json state_json(const State& s) {
  json out = json::object();
  for (const auto& [x, v] : s.bindings()) out[x.name()] = v.str();
  return out;
}

json stack_json(const std::vector<Integer>& stack) {
  json out = json::array();
  for (auto it = stack.rbegin(); it != stack.rend(); ++it) out.push_back(it->str());
  return out;
}

json machine_json(const MachineState& m) {
  return json{{"pc", m.pc}, {"stack", stack_json(m.stack)}, {"store", state_json(m.store)}};
}

void record(Report& r, std::size_t index, const Cmd& program, json detail) {
  ++r.failed;
  r.failures.push_back({index, to_string(program), std::move(detail)});
}

std::vector<Case> generate_cases(const GenConfig& cfg, std::size_t cases) {
  cfg.validate();
  std::vector<Case> out;
  out.reserve(cases);
  for (std::size_t i = 0; i < cases; ++i) {
    Rng rng(derive_seed(cfg.seed, i));
    Cmd c = gen_program(cfg, rng);
    State s = gen_state(cfg, rng);
    out.push_back({std::move(c), std::move(s)});
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Semantics campaigns

Report check_semantics_agreement(const std::vector<Case>& cases, std::uint64_t fuel) {
  Report r;
  r.campaign = "semantics";
  r.cfg = json{{"source", "explicit"}, {"fuel", fuel}};
  r.stats = {{"agree-terminated", 0}, {"agree-fuel-exhausted", 0},
             {"agree-goes-wrong", 0}, {"mismatch", 0}};
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& [c, s] = cases[i];
    ++r.cases;
    Classification cl = classify(c, s, fuel);
    if (!cl.agreed) {
      ++r.stats["mismatch"];
      Cmd small = shrink(c, [&](const Cmd& x) { return !classify(x, s, fuel).agreed; });
      record(r, i, c,
             json{{"state", state_json(s)},
                  {"interp", cl.interp_result.to_string()},
                  {"small_step", describe(cl.outcome)},
                  {"discrepancy", cl.discrepancy},
                  {"shrunk", to_string(small)}});
      continue;
    }
    ++r.passed;
    const std::string kind = outcome_kind(cl.outcome);
    if (kind == "terminated") ++r.stats["agree-terminated"];
    else if (kind == "goes-wrong") ++r.stats["agree-goes-wrong"];
    else ++r.stats["agree-fuel-exhausted"];
  }
  return r;
}

Report check_semantics_agreement(const GenConfig& cfg, std::size_t cases, std::uint64_t fuel) {
  Report r = check_semantics_agreement(generate_cases(cfg, cases), fuel);
  r.cfg = cfg.to_json();
  r.cfg["fuel"] = fuel;
  return r;
}

Report check_interp_monotonicity(const GenConfig& cfg, std::size_t samples,
                                 std::uint64_t max_fuel) {
  cfg.validate();
  Report r;
  r.campaign = "interp-monotonicity";
  r.cfg = cfg.to_json();
  r.cfg["max_fuel"] = max_fuel;
  r.stats = {{"bottom-below", 0}, {"equal", 0}, {"violation", 0}};
  for (std::size_t i = 0; i < samples; ++i) {
    Rng rng(derive_seed(cfg.seed, i));
    Cmd c = gen_program(cfg, rng);
    State s = gen_state(cfg, rng);
    auto n = static_cast<std::uint64_t>(rng.range(0, static_cast<std::int64_t>(max_fuel)));
    auto m = static_cast<std::uint64_t>(
        rng.range(static_cast<std::int64_t>(n), static_cast<std::int64_t>(max_fuel)));
    Res rn = interp(n, c, s);
    Res rm = interp(m, c, s);
    ++r.cases;
    if (!res_le(rn, rm)) {
      ++r.stats["violation"];
      record(r, i, c,
             json{{"state", state_json(s)}, {"n", n}, {"m", m},
                  {"interp_n", rn.to_string()}, {"interp_m", rm.to_string()}});
      continue;
    }
    ++r.passed;
    ++r.stats[rn.is_bottom() ? "bottom-below" : "equal"];
  }
  return r;
}

// ---------------------------------------------------------------------------
// Compiler campaigns

namespace {

json vm_trace_tail(const Code& code, const State& s, std::uint64_t fuel) {
  VmRun run = vm_run(code, MachineState{0, {}, s}, fuel, VmArith::Math, true);
  json out = json::array();
  const std::size_t keep = 8;
  std::size_t start = run.trace.size() > keep ? run.trace.size() - keep : 0;
  for (std::size_t i = start; i < run.trace.size(); ++i) {
    out.push_back(machine_json(run.trace[i]));
  }
  return out;
}

/// Checks one compiler case; returns a failure description or nullopt and
/// bumps the matching stat.
std::optional<json> compiler_case(const Cmd& c, const State& s, std::uint64_t fuel,
                                  std::uint64_t vm_fuel,
                                  std::map<std::string, std::size_t>* stats) {
  auto bump = [&](const char* key) {
    if (stats) ++(*stats)[key];
  };
  const Code code = compile_program(c);
  const MachineState start{0, {}, s};
  Res big = interp(fuel, c, s);

  if (big.is_value()) {
    VmRun run = vm_run(code, start, vm_fuel);
    for (std::uint64_t budget = vm_fuel;
         std::holds_alternative<vm_outcome::OutOfFuel>(run.outcome) && budget < 16 * vm_fuel;) {
      budget *= 2;
      run = vm_run(code, start, budget);
    }
    if (const auto* h = std::get_if<vm_outcome::Halted>(&run.outcome)) {
      if (h->store == big.state()) {
        bump("agree-terminated");
        return std::nullopt;
      }
      return json{{"state", state_json(s)},
                  {"source_store", state_json(big.state())},
                  {"vm_store", state_json(h->store)},
                  {"vm_trace_tail", vm_trace_tail(code, s, h->steps)}};
    }
    return json{{"state", state_json(s)},
                {"source_store", state_json(big.state())},
                {"vm", describe(run.outcome)},
                {"vm_trace_tail", vm_trace_tail(code, s, vm_fuel)}};
  }

  // Interpreter depth never exceeds VM steps plus the command's height, so
  // a VM halting within `fuel - height` steps contradicts bottom here.
  const std::uint64_t height = cmd_height(c);
  VmRun run = vm_run(code, start, vm_fuel);
  if (std::holds_alternative<vm_outcome::OutOfFuel>(run.outcome)) {
    bump("agree-fuel-exhausted");
    return std::nullopt;
  }
  if (const auto* h = std::get_if<vm_outcome::Halted>(&run.outcome)) {
    if (h->steps + height > fuel) {
      Res deeper = interp(h->steps + height, c, s);
      if (deeper.is_value() && deeper.state() == h->store) {
        bump("agree-terminated-beyond-fuel");
        return std::nullopt;
      }
      return json{{"state", state_json(s)},
                  {"interp_deeper", deeper.to_string()},
                  {"vm", describe(run.outcome)}};
    }
    return json{{"state", state_json(s)},
                {"interp", big.to_string()},
                {"vm", describe(run.outcome)},
                {"reason", "VM halted within the depth bound of the interpreter"}};
  }
  return json{{"state", state_json(s)},
              {"interp", big.to_string()},
              {"vm", describe(run.outcome)},
              {"vm_trace_tail", vm_trace_tail(code, s, vm_fuel)}};
}

}  // namespace

Report check_compiler(const std::vector<Case>& cases, std::uint64_t fuel,
                      std::uint64_t vm_fuel) {
  Report r;
  r.campaign = "compiler";
  r.cfg = json{{"source", "explicit"}, {"fuel", fuel}, {"vm_fuel", vm_fuel}};
  r.stats = {{"agree-terminated", 0}, {"agree-terminated-beyond-fuel", 0},
             {"agree-fuel-exhausted", 0}, {"mismatch", 0}};
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& [c, s] = cases[i];
    ++r.cases;
    auto failure = compiler_case(c, s, fuel, vm_fuel, &r.stats);
    if (!failure) {
      ++r.passed;
      continue;
    }
    ++r.stats["mismatch"];
    Cmd small = shrink(c, [&](const Cmd& x) {
      return compiler_case(x, s, fuel, vm_fuel, nullptr).has_value();
    });
    (*failure)["shrunk"] = to_string(small);
    record(r, i, c, std::move(*failure));
  }
  return r;
}

Report check_compiler(const GenConfig& cfg, std::size_t cases, std::uint64_t fuel,
                      std::uint64_t vm_fuel) {
  Report r = check_compiler(generate_cases(cfg, cases), fuel, vm_fuel);
  r.cfg = cfg.to_json();
  r.cfg["fuel"] = fuel;
  r.cfg["vm_fuel"] = vm_fuel;
  return r;
}

namespace {

Code random_code(const GenConfig& cfg, Rng& rng, std::size_t max_len) {
  Code out;
  const std::size_t len = rng.index(max_len + 1);
  for (std::size_t i = 0; i < len; ++i) {
    const Ident& x = cfg.var_pool[rng.index(cfg.var_pool.size())];
    const std::int64_t d = rng.range(-6, 6);
    switch (rng.index(9)) {
      case 0: out.push_back(instr::Const{rng.range(cfg.const_min, cfg.const_max)}); break;
      case 1: out.push_back(instr::Var{x}); break;
      case 2: out.push_back(instr::SetVar{x}); break;
      case 3: out.push_back(instr::Add{}); break;
      case 4: out.push_back(instr::Sub{}); break;
      case 5: out.push_back(instr::Branch{d}); break;
      case 6: out.push_back(instr::Bne{d}); break;
      case 7: out.push_back(instr::Bge{d}); break;
      default: out.push_back(instr::Halt{}); break;
    }
  }
  return out;
}

std::vector<Integer> random_stack(const GenConfig& cfg, Rng& rng) {
  std::vector<Integer> out;
  const std::size_t depth = rng.index(4);
  for (std::size_t i = 0; i < depth; ++i) out.push_back(rng.range(cfg.const_min, cfg.const_max));
  return out;
}

Code bracket(const Code& c1, const Code& mid, const Code& c2) {
  Code out = c1;
  out.insert(out.end(), mid.begin(), mid.end());
  out.insert(out.end(), c2.begin(), c2.end());
  return out;
}

/// Runs exactly `steps` transitions; nullopt if the machine blocks earlier.
std::optional<MachineState> run_exact(const Code& code, MachineState m, std::size_t steps) {
  for (std::size_t i = 0; i < steps; ++i) {
    auto next = vm_step(code, m);
    if (!next) return std::nullopt;
    m = std::move(*next);
  }
  return m;
}

json code_json(const Code& code) {
  json out = json::array();
  for (const auto& i : code) out.push_back(to_string(i));
  return out;
}

}  // namespace

Report check_expr_compilation(const GenConfig& cfg, std::size_t samples) {
  cfg.validate();
  Report r;
  r.campaign = "compile-expr-lemma";
  r.cfg = cfg.to_json();
  for (std::size_t i = 0; i < samples; ++i) {
    Rng rng(derive_seed(cfg.seed, i));
    Code c1 = random_code(cfg, rng, 5);
    Code c2 = random_code(cfg, rng, 5);
    std::vector<Integer> sigma = random_stack(cfg, rng);
    State s = gen_state(cfg, rng);
    Expr e = gen_expr(cfg, rng, 3);
    const Code ce = compile_expr(e);
    const Code code = bracket(c1, ce, c2);
    const auto base = static_cast<std::int64_t>(c1.size());
    MachineState expected{base + static_cast<std::int64_t>(ce.size()), sigma, s};
    expected.stack.push_back(*eval_expr(s, e));
    auto got = run_exact(code, MachineState{base, sigma, s}, ce.size());
    ++r.cases;
    if (got && *got == expected) {
      ++r.passed;
      continue;
    }
    ++r.failed;
    r.failures.push_back(
        {i, to_string(e),
         json{{"c1", code_json(c1)}, {"c2", code_json(c2)},
              {"expected", machine_json(expected)},
              {"got", got ? machine_json(*got) : json("blocked")}}});
  }
  return r;
}

Report check_bool_compilation(const GenConfig& cfg, std::size_t samples) {
  cfg.validate();
  Report r;
  r.campaign = "compile-bool-lemma";
  r.cfg = cfg.to_json();
  r.stats = {{"true", 0}, {"false", 0}};
  for (std::size_t i = 0; i < samples; ++i) {
    Rng rng(derive_seed(cfg.seed, i));
    Code c1 = random_code(cfg, rng, 5);
    Code c2 = random_code(cfg, rng, 5);
    std::vector<Integer> sigma = random_stack(cfg, rng);
    State s = gen_state(cfg, rng);
    BoolExpr b = gen_bool(cfg, rng);
    const std::int64_t delta = rng.range(-8, 8);
    const Code cb = compile_bool(b, delta);
    const Code code = bracket(c1, cb, c2);
    const auto base = static_cast<std::int64_t>(c1.size());
    const bool truth = *eval_bool(s, b);
    std::int64_t pc = base + static_cast<std::int64_t>(cb.size());
    if (!truth) pc += delta;
    MachineState expected{pc, sigma, s};
    auto got = run_exact(code, MachineState{base, sigma, s}, cb.size());
    ++r.cases;
    if (got && *got == expected) {
      ++r.passed;
      ++r.stats[truth ? "true" : "false"];
      continue;
    }
    ++r.failed;
    r.failures.push_back(
        {i, to_string(b),
         json{{"delta", delta}, {"expected", machine_json(expected)},
              {"got", got ? machine_json(*got) : json("blocked")}}});
  }
  return r;
}

Report check_bracketed_commands(const GenConfig& cfg, std::size_t cases,
                                std::uint64_t fuel, std::uint64_t vm_fuel) {
  cfg.validate();
  Report r;
  r.campaign = "compile-cmd-bracketed";
  r.cfg = cfg.to_json();
  r.cfg["fuel"] = fuel;
  r.cfg["vm_fuel"] = vm_fuel;
  r.stats = {{"checked", 0}, {"skipped-source-bottom", 0}};
  for (std::size_t i = 0; i < cases; ++i) {
    Rng rng(derive_seed(cfg.seed, i));
    Cmd c = gen_program(cfg, rng);
    State s = gen_state(cfg, rng);
    Code c1 = random_code(cfg, rng, 5);
    Code c2 = random_code(cfg, rng, 5);
    std::vector<Integer> sigma = random_stack(cfg, rng);
    ++r.cases;
    Res big = interp(fuel, c, s);
    if (!big.is_value()) {
      ++r.passed;
      ++r.stats["skipped-source-bottom"];
      continue;
    }
    const Code cc = compile_cmd(c);
    const Code code = bracket(c1, cc, c2);
    const auto base = static_cast<std::int64_t>(c1.size());
    const std::int64_t end = base + static_cast<std::int64_t>(cc.size());
    MachineState m{base, sigma, s};
    std::uint64_t n = 0;
    bool blocked = false;
    for (; m.pc != end && n < 16 * vm_fuel; ++n) {
      auto next = vm_step(code, m);
      if (!next) {
        blocked = true;
        break;
      }
      m = std::move(*next);
    }
    MachineState expected{end, sigma, big.state()};
    if (!blocked && m == expected) {
      ++r.passed;
      ++r.stats["checked"];
      continue;
    }
    record(r, i, c,
           json{{"state", state_json(s)}, {"c1", code_json(c1)}, {"c2", code_json(c2)},
                {"expected", machine_json(expected)}, {"got", machine_json(m)},
                {"blocked", blocked}});
  }
  return r;
}

// ---------------------------------------------------------------------------
// Optimization campaigns

Report check_dce(const GenConfig& cfg, std::size_t cases, std::uint64_t fuel,
                 std::size_t live_out_samples) {
  cfg.validate();
  Report r;
  r.campaign = "dce";
  r.cfg = cfg.to_json();
  r.cfg["fuel"] = fuel;
  r.cfg["live_out_samples"] = live_out_samples;
  r.stats = {{"agree-terminated", 0}, {"agree-fuel-exhausted", 0}, {"violation", 0}};
  for (std::size_t i = 0; i < cases; ++i) {
    Rng rng(derive_seed(cfg.seed, i));
    Cmd c = gen_program(cfg, rng);
    State s = gen_state(cfg, rng);
    for (std::size_t j = 0; j < live_out_samples; ++j) {
      VarSet live_out;
      for (const auto& v : cfg.var_pool) {
        if (rng.chance(0.5)) live_out.insert(v);
      }
      const VarSet live_in = live(c, live_out);
      State s1 = s;
      for (const auto& v : cfg.var_pool) {
        if (!live_in.count(v) && rng.chance(0.7)) {
          s1.set(v, rng.range(cfg.const_min, cfg.const_max));
        }
      }
      const Cmd optimized = dce(c, live_out);
      ++r.cases;
      Res orig = interp(fuel, c, s);
      Res opt = interp(fuel, optimized, s1);
      bool ok = false;
      if (orig.is_value() && opt.is_value()) {
        ok = agree(orig.state(), opt.state(), live_out);
        if (ok) ++r.stats["agree-terminated"];
      } else if (orig.is_bottom() && opt.is_bottom()) {
        ok = true;
        ++r.stats["agree-fuel-exhausted"];
      }
      if (ok) {
        ++r.passed;
        continue;
      }
      ++r.stats["violation"];
      record(r, i, c,
             json{{"live_out", format_varset(live_out)},
                  {"live_in", format_varset(live_in)},
                  {"optimized", to_string(optimized)},
                  {"state", state_json(s)}, {"state1", state_json(s1)},
                  {"original_result", orig.to_string()},
                  {"optimized_result", opt.to_string()}});
    }
  }
  return r;
}

Report check_live_while(const GenConfig& cfg, std::size_t samples) {
  cfg.validate();
  Report r;
  r.campaign = "live-while";
  r.cfg = cfg.to_json();
  for (std::size_t i = 0; i < samples; ++i) {
    Rng rng(derive_seed(cfg.seed, i));
    ProgramGen gen(cfg, rng);
    Cmd loop = gen.loop(std::max<std::size_t>(cfg.max_depth, 2), {});
    VarSet live_out;
    for (const auto& v : cfg.var_pool) {
      if (rng.chance(0.5)) live_out.insert(v);
    }
    const auto& w = std::get<cmd::While>(loop.node);
    const VarSet result = live(loop, live_out);
    const bool cond_ok = is_subset(free_vars(w.cond), result);
    const bool out_ok = is_subset(live_out, result);
    const bool body_ok = is_subset(live(*w.body, result), result);
    ++r.cases;
    if (cond_ok && out_ok && body_ok) {
      ++r.passed;
      continue;
    }
    record(r, i, loop,
           json{{"live_out", format_varset(live_out)}, {"result", format_varset(result)},
                {"cond_included", cond_ok}, {"live_out_included", out_ok},
                {"body_stable", body_ok}});
  }
  return r;
}

// ---------------------------------------------------------------------------
// Hoare campaign

std::vector<AnnotatedProgram> load_corpus(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".imp") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<AnnotatedProgram> out;
  for (const auto& path : files) {
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    out.push_back({path.stem().string(), extract_contract(parse_program(buf.str()))});
  }
  return out;
}

namespace {

bool escapes_box(const Cmd& c, const State& s, std::int64_t box) {
  auto run = run_small_step(c, s, 100000, EvalMode::Math, true);
  for (const auto& config : run.trace) {
    for (const auto& [x, v] : config.state.bindings()) {
      if (v < -box || v > box) return true;
    }
  }
  return false;
}

}  // namespace

Report check_hoare(const std::vector<AnnotatedProgram>& corpus, std::int64_t box,
                   std::size_t samples, std::uint64_t fuel, std::uint64_t seed) {
  Report r;
  r.campaign = "hoare";
  r.cfg = json{{"seed", seed}, {"box", box}, {"samples", samples}, {"fuel", fuel}};
  r.stats = {{"verified", 0},       {"excluded", 0},          {"runs", 0},
             {"post-held", 0},      {"no-termination-within-fuel", 0},
             {"box-escapes", 0},    {"hard-failures", 0}};
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& [name, contract] = corpus[i];
    const auto& [pre, body, post] = contract;
    ++r.cases;
    std::vector<VC> vcs = vcgen(pre, body, post);
    const std::vector<VC> tvcs = termination_vcs(body);
    vcs.insert(vcs.end(), tvcs.begin(), tvcs.end());
    const bool total = all_loops_measured(body);

    std::optional<Counterexample> cex;
    try {
      cex = find_counterexample(vcs, box);
    } catch (const BudgetError& e) {
      ++r.failed;
      r.failures.push_back({i, name, json{{"error", e.what()}}});
      continue;
    }
    if (cex) {
      ++r.stats["excluded"];
      ++r.passed;
      r.warnings.push_back(json{{"program", name},
                                {"kind", "counterexample"},
                                {"vc", cex->vc.origin},
                                {"formula", to_string(cex->vc.formula)},
                                {"valuation", cex->valuation_string()}});
      continue;
    }
    ++r.stats["verified"];

    const Cmd plain = erase(body);
    VarSet vars = set_union(free_vars(body), set_union(free_vars(pre), free_vars(post)));
    std::set<std::string> gs = ghosts(pre);
    gs.merge(ghosts(post));
    Rng rng(derive_seed(seed, i));
    std::size_t accepted = 0;
    std::size_t hard = 0;
    for (std::size_t attempt = 0; accepted < samples && attempt < samples * 1000; ++attempt) {
      State s;
      for (const auto& v : vars) s.set(v, Integer(rng.range(-box, box)));
      GhostValuation g;
      for (const auto& name_g : gs) g[name_g] = Integer(rng.range(-box, box));
      if (!eval_assertion(pre, s, g)) continue;
      ++accepted;
      ++r.stats["runs"];
      Res res = interp(fuel, plain, s);
      std::string problem;
      if (res.is_value()) {
        if (eval_assertion(post, res.state(), g)) {
          ++r.stats["post-held"];
          continue;
        }
        problem = "postcondition violated";
      } else if (total) {
        problem = "no termination within fuel";
      } else {
        ++r.stats["no-termination-within-fuel"];
        continue;
      }
      json detail{{"program", name}, {"problem", problem}, {"state", state_json(s)},
                  {"result", res.to_string()}};
      if (escapes_box(plain, s, box)) {
        ++r.stats["box-escapes"];
        detail["kind"] = "box-escape";
        r.warnings.push_back(std::move(detail));
      } else {
        ++r.stats["hard-failures"];
        ++hard;
        if (hard == 1) r.failures.push_back({i, name, std::move(detail)});
      }
    }
    if (hard == 0) {
      ++r.passed;
    } else {
      ++r.failed;
    }
  }
  return r;
}

}  // namespace imp
