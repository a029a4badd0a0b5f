#include "imp/ann_cmd.hpp"

namespace imp {

AnnCmd ann_skip() { return AnnCmd{ann::Skip{}}; }
AnnCmd ann_assign(Ident target, Expr value) {
  return AnnCmd{ann::Assign{std::move(target), std::move(value)}};
}
AnnCmd ann_seq(AnnCmd first, AnnCmd second) {
  return AnnCmd{ann::Seq{std::move(first), std::move(second)}};
}
AnnCmd ann_if(BoolExpr cond, AnnCmd then_branch, AnnCmd else_branch) {
  return AnnCmd{ann::If{std::move(cond), std::move(then_branch),
                        std::move(else_branch)}};
}
AnnCmd ann_while(BoolExpr cond, Assertion invariant,
                 std::optional<AExpr> measure, AnnCmd body) {
  return AnnCmd{ann::While{std::move(cond), std::move(invariant),
                           std::move(measure), std::move(body)}};
}
AnnCmd ann_assert(Assertion condition) {
  return AnnCmd{ann::Assert{std::move(condition)}};
}

Cmd erase(const AnnCmd& c) {
  return std::visit(
      overloaded{
          [](const ann::Skip&) { return skip(); },
          [](const ann::Assign& a) { return assign(a.target, a.value); },
          [](const ann::Seq& s) {
            return seq(erase(*s.first), erase(*s.second));
          },
          [](const ann::If& i) {
            return if_then_else(i.cond, erase(*i.then_branch),
                                erase(*i.else_branch));
          },
          [](const ann::While& w) { return while_do(w.cond, erase(*w.body)); },
          [](const ann::Assert&) { return skip(); },
      },
      c.node);
}

AnnCmd lift(const Cmd& c) {
  return std::visit(
      overloaded{
          [](const cmd::Skip&) { return ann_skip(); },
          [](const cmd::Assign& a) { return ann_assign(a.target, a.value); },
          [](const cmd::Seq& s) {
            return ann_seq(lift(*s.first), lift(*s.second));
          },
          [](const cmd::If& i) {
            return ann_if(i.cond, lift(*i.then_branch), lift(*i.else_branch));
          },
          [](const cmd::While& w) {
            return ann_while(w.cond, a_true(), std::nullopt, lift(*w.body));
          },
      },
      c.node);
}

bool all_loops_measured(const AnnCmd& c) {
  return std::visit(
      overloaded{
          [](const ann::Skip&) { return true; },
          [](const ann::Assign&) { return true; },
          [](const ann::Seq& s) {
            return all_loops_measured(*s.first) &&
                   all_loops_measured(*s.second);
          },
          [](const ann::If& i) {
            return all_loops_measured(*i.then_branch) &&
                   all_loops_measured(*i.else_branch);
          },
          [](const ann::While& w) {
            return w.measure.has_value() && all_loops_measured(*w.body);
          },
          [](const ann::Assert&) { return true; },
      },
      c.node);
}

VarSet free_vars(const AnnCmd& c) {
  return std::visit(
      overloaded{
          [](const ann::Skip&) { return VarSet{}; },
          [](const ann::Assign& a) {
            auto out = free_vars(a.value);
            out.insert(a.target);
            return out;
          },
          [](const ann::Seq& s) {
            return set_union(free_vars(*s.first), free_vars(*s.second));
          },
          [](const ann::If& i) {
            return set_union(free_vars(i.cond),
                             set_union(free_vars(*i.then_branch),
                                       free_vars(*i.else_branch)));
          },
          [](const ann::While& w) {
            auto out = set_union(free_vars(w.cond), free_vars(w.invariant));
            if (w.measure) out = set_union(out, free_vars(*w.measure));
            return set_union(out, free_vars(*w.body));
          },
          [](const ann::Assert& a) { return free_vars(a.condition); },
      },
      c.node);
}

}  // namespace imp
