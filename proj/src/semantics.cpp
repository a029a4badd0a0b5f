#include "imp/semantics.hpp"

#include <algorithm>

#include "imp/printer.hpp"

namespace imp {

namespace {

std::optional<Integer> wrap(EvalMode mode, Integer n) {
  if (mode == EvalMode::Wrap32) return normalize32(n);
  return n;
}

}  // namespace

std::optional<Integer> eval_expr(const State& s, const Expr& e,
                                 EvalMode mode) {
  return std::visit(
      overloaded{
          [&](const expr::Var& v) -> std::optional<Integer> {
            auto value = s.lookup(v.name);
            if (!value) return std::nullopt;
            return wrap(mode, *value);
          },
          [&](const expr::Const& c) -> std::optional<Integer> {
            return wrap(mode, c.value);
          },
          [&](const expr::Add& a) -> std::optional<Integer> {
            auto l = eval_expr(s, *a.lhs, mode);
            if (!l) return std::nullopt;
            auto r = eval_expr(s, *a.rhs, mode);
            if (!r) return std::nullopt;
            return wrap(mode, *l + *r);
          },
          [&](const expr::Sub& d) -> std::optional<Integer> {
            auto l = eval_expr(s, *d.lhs, mode);
            if (!l) return std::nullopt;
            auto r = eval_expr(s, *d.rhs, mode);
            if (!r) return std::nullopt;
            return wrap(mode, *l - *r);
          },
      },
      e.node);
}

std::optional<bool> eval_bool(const State& s, const BoolExpr& b,
                              EvalMode mode) {
  auto l = eval_expr(s, b.lhs, mode);
  if (!l) return std::nullopt;
  auto r = eval_expr(s, b.rhs, mode);
  if (!r) return std::nullopt;
  return b.op == BoolExpr::Op::Eq ? *l == *r : *l < *r;
}

std::optional<Config> step(const Cmd& c, const State& s, EvalMode mode) {
  return std::visit(
      overloaded{
          [](const cmd::Skip&) -> std::optional<Config> {
            return std::nullopt;
          },
          [&](const cmd::Assign& a) -> std::optional<Config> {
            auto v = eval_expr(s, a.value, mode);
            if (!v) return std::nullopt;
            return Config{skip(), s.updated(a.target, std::move(*v))};
          },
          [&](const cmd::Seq& q) -> std::optional<Config> {
            if (q.first->is_skip()) return Config{*q.second, s};
            auto next = step(*q.first, s, mode);
            if (!next) return std::nullopt;
            return Config{seq(std::move(next->cmd), *q.second),
                          std::move(next->state)};
          },
          [&](const cmd::If& i) -> std::optional<Config> {
            auto b = eval_bool(s, i.cond, mode);
            if (!b) return std::nullopt;
            return Config{*b ? *i.then_branch : *i.else_branch, s};
          },
          [&](const cmd::While& w) -> std::optional<Config> {
            auto b = eval_bool(s, w.cond, mode);
            if (!b) return std::nullopt;
            if (*b) return Config{seq(*w.body, c), s};
            return Config{skip(), s};
          },
      },
      c.node);
}

std::string describe(const Outcome& o) {
  return std::visit(
      overloaded{
          [](const outcome::Terminated& t) {
            return "terminated after " + std::to_string(t.steps) +
                   " steps in " + t.state.to_string();
          },
          [](const outcome::GoesWrong& w) {
            return "goes wrong (" + w.reason + ") at `" +
                   to_string(w.residual) + "` in " + w.state.to_string();
          },
          [](const outcome::OutOfFuel& f) {
            return "out of fuel at `" + to_string(f.residual) + "` in " +
                   f.state.to_string();
          },
      },
      o);
}

SmallStepRun run_small_step(const Cmd& c, const State& s, std::uint64_t fuel,
                            EvalMode mode, bool record_trace) {
  SmallStepRun run{outcome::OutOfFuel{c, s}, {}};
  Cmd cur = c;
  State st = s;
  if (record_trace) run.trace.push_back({cur, st});
  for (std::uint64_t n = 0;; ++n) {
    if (cur.is_skip()) {
      run.outcome = outcome::Terminated{std::move(st), n};
      return run;
    }
    if (n == fuel) {
      run.outcome = outcome::OutOfFuel{std::move(cur), std::move(st)};
      return run;
    }
    auto next = step(cur, st, mode);
    if (!next) {
      run.outcome = outcome::GoesWrong{"undefined variable in redex",
                                       std::move(cur), std::move(st)};
      return run;
    }
    cur = std::move(next->cmd);
    st = std::move(next->state);
    if (record_trace) run.trace.push_back({cur, st});
  }
}

bool Res::operator==(const Res& other) const {
  if (kind_ != other.kind_) return false;
  return kind_ != Kind::Value || *state_ == *other.state_;
}

std::string Res::to_string() const {
  switch (kind_) {
    case Kind::Bottom: return "bottom";
    case Kind::Wrong: return "wrong";
    case Kind::Value: return "value " + state_->to_string();
  }
  return "?";
}

bool res_le(const Res& lhs, const Res& rhs) {
  return lhs.is_bottom() || lhs == rhs;
}

Res interp(std::uint64_t fuel, const Cmd& c, const State& s, EvalMode mode) {
  // Tail positions (the second half of a sequence, the loop re-entry) are
  // iterated rather than recursed into, so host stack depth is bounded by
  // program nesting rather than by fuel.
  std::uint64_t n = fuel;
  const Cmd* cur = &c;
  Cmd owned;  // keeps the current command alive across iterations
  State st = s;
  for (;;) {
    if (n == 0) return Res::bottom();
    --n;
    if (std::holds_alternative<cmd::Skip>(cur->node)) return Res::value(st);
    if (const auto* a = std::get_if<cmd::Assign>(&cur->node)) {
      auto v = eval_expr(st, a->value, mode);
      if (!v) return Res::wrong();
      st.set(a->target, std::move(*v));
      return Res::value(std::move(st));
    }
    if (const auto* q = std::get_if<cmd::Seq>(&cur->node)) {
      Res r = interp(n, *q->first, st, mode);
      if (!r.is_value()) return r;
      st = r.state();
      Cmd next = *q->second;  // copy before `owned` releases the subtree
      owned = std::move(next);
      cur = &owned;
      continue;
    }
    if (const auto* i = std::get_if<cmd::If>(&cur->node)) {
      auto b = eval_bool(st, i->cond, mode);
      if (!b) return Res::wrong();
      Cmd next = *b ? *i->then_branch : *i->else_branch;
      owned = std::move(next);
      cur = &owned;
      continue;
    }
    const auto& w = std::get<cmd::While>(cur->node);
    auto b = eval_bool(st, w.cond, mode);
    if (!b) return Res::wrong();
    if (!*b) return Res::value(std::move(st));
    Res r = interp(n, *w.body, st, mode);
    if (!r.is_value()) return r;
    st = r.state();
    // re-enter the same loop with the decremented budget
  }
}

Classification classify(const Cmd& c, const State& s, std::uint64_t fuel,
                        EvalMode mode) {
  Res big = interp(fuel, c, s, mode);

  // A reduction sequence of k steps needs interpreter depth at most k + 1,
  // so when the interpreter runs out at depth `fuel`, the stepper must not
  // settle within `fuel - 1` steps.
  if (big.is_bottom()) {
    if (fuel == 0) {
      return {outcome::OutOfFuel{c, s}, big, true, {}};
    }
    auto run = run_small_step(c, s, fuel - 1, mode);
    if (std::holds_alternative<outcome::OutOfFuel>(run.outcome)) {
      return {run.outcome, big, true, {}};
    }
    return {run.outcome, big, false,
            "interpreter exhausted depth " + std::to_string(fuel) +
                " but small-step " + describe(run.outcome)};
  }

  std::uint64_t budget = std::max<std::uint64_t>(fuel, 1);
  for (;;) {
    auto run = run_small_step(c, s, budget, mode);
    if (const auto* t = std::get_if<outcome::Terminated>(&run.outcome)) {
      if (!big.is_value() || !(t->state == big.state())) {
        return {run.outcome, big, false,
                "interpreter gave " + big.to_string() + " but small-step " +
                    describe(run.outcome)};
      }
      Res converse = interp(t->steps + 1, c, s, mode);
      if (!(converse == big)) {
        return {run.outcome, big, false,
                "small-step terminated in " + std::to_string(t->steps) +
                    " steps but interpreter at depth " +
                    std::to_string(t->steps + 1) + " gave " +
                    converse.to_string()};
      }
      return {run.outcome, big, true, {}};
    }
    if (std::holds_alternative<outcome::GoesWrong>(run.outcome)) {
      bool ok = big.is_wrong();
      return {run.outcome, big, ok,
              ok ? std::string{}
                 : "interpreter gave " + big.to_string() + " but small-step " +
                       describe(run.outcome)};
    }
    if (budget >= kSmallStepCap) {
      return {run.outcome, big, false,
              "interpreter gave " + big.to_string() +
                  " but small-step did not settle within " +
                  std::to_string(kSmallStepCap) + " steps"};
    }
    budget = std::min(budget * 2, kSmallStepCap);
  }
}

}  // namespace imp
