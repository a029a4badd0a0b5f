#include "imp/ast.hpp"

#include <algorithm>

namespace imp {

Expr evar(Ident name) { return Expr{expr::Var{std::move(name)}}; }
Expr econst(Integer value) { return Expr{expr::Const{std::move(value)}}; }
Expr eadd(Expr lhs, Expr rhs) {
  return Expr{expr::Add{std::move(lhs), std::move(rhs)}};
}
Expr esub(Expr lhs, Expr rhs) {
  return Expr{expr::Sub{std::move(lhs), std::move(rhs)}};
}

BoolExpr beq(Expr lhs, Expr rhs) {
  return BoolExpr{BoolExpr::Op::Eq, std::move(lhs), std::move(rhs)};
}
BoolExpr blt(Expr lhs, Expr rhs) {
  return BoolExpr{BoolExpr::Op::Lt, std::move(lhs), std::move(rhs)};
}

Cmd skip() { return Cmd{cmd::Skip{}}; }
Cmd assign(Ident target, Expr value) {
  return Cmd{cmd::Assign{std::move(target), std::move(value)}};
}
Cmd seq(Cmd first, Cmd second) {
  return Cmd{cmd::Seq{std::move(first), std::move(second)}};
}
Cmd if_then_else(BoolExpr cond, Cmd then_branch, Cmd else_branch) {
  return Cmd{cmd::If{std::move(cond), std::move(then_branch),
                     std::move(else_branch)}};
}
Cmd while_do(BoolExpr cond, Cmd body) {
  return Cmd{cmd::While{std::move(cond), std::move(body)}};
}

namespace {

void collect(const Expr& e, VarSet& out) {
  std::visit(overloaded{
                 [&](const expr::Var& v) { out.insert(v.name); },
                 [](const expr::Const&) {},
                 [&](const expr::Add& a) {
                   collect(*a.lhs, out);
                   collect(*a.rhs, out);
                 },
                 [&](const expr::Sub& s) {
                   collect(*s.lhs, out);
                   collect(*s.rhs, out);
                 },
             },
             e.node);
}

void collect(const BoolExpr& b, VarSet& out) {
  collect(b.lhs, out);
  collect(b.rhs, out);
}

void collect(const Cmd& c, VarSet& out) {
  std::visit(overloaded{
                 [](const cmd::Skip&) {},
                 [&](const cmd::Assign& a) {
                   out.insert(a.target);
                   collect(a.value, out);
                 },
                 [&](const cmd::Seq& s) {
                   collect(*s.first, out);
                   collect(*s.second, out);
                 },
                 [&](const cmd::If& i) {
                   collect(i.cond, out);
                   collect(*i.then_branch, out);
                   collect(*i.else_branch, out);
                 },
                 [&](const cmd::While& w) {
                   collect(w.cond, out);
                   collect(*w.body, out);
                 },
             },
             c.node);
}

}  // namespace

VarSet free_vars(const Expr& e) {
  VarSet out;
  collect(e, out);
  return out;
}

VarSet free_vars(const BoolExpr& b) {
  VarSet out;
  collect(b, out);
  return out;
}

VarSet free_vars(const Cmd& c) {
  VarSet out;
  collect(c, out);
  return out;
}

std::size_t node_count(const Expr& e) {
  return std::visit(
      overloaded{
          [](const expr::Var&) -> std::size_t { return 1; },
          [](const expr::Const&) -> std::size_t { return 1; },
          [](const expr::Add& a) {
            return 1 + node_count(*a.lhs) + node_count(*a.rhs);
          },
          [](const expr::Sub& s) {
            return 1 + node_count(*s.lhs) + node_count(*s.rhs);
          },
      },
      e.node);
}

std::size_t node_count(const BoolExpr& b) {
  return 1 + node_count(b.lhs) + node_count(b.rhs);
}

std::size_t node_count(const Cmd& c) {
  return std::visit(
      overloaded{
          [](const cmd::Skip&) -> std::size_t { return 1; },
          [](const cmd::Assign& a) { return 1 + node_count(a.value); },
          [](const cmd::Seq& s) {
            return 1 + node_count(*s.first) + node_count(*s.second);
          },
          [](const cmd::If& i) {
            return 1 + node_count(i.cond) + node_count(*i.then_branch) +
                   node_count(*i.else_branch);
          },
          [](const cmd::While& w) {
            return 1 + node_count(w.cond) + node_count(*w.body);
          },
      },
      c.node);
}

std::size_t cmd_height(const Cmd& c) {
  return std::visit(
      overloaded{
          [](const cmd::Skip&) -> std::size_t { return 1; },
          [](const cmd::Assign&) -> std::size_t { return 1; },
          [](const cmd::Seq& s) {
            return 1 + std::max(cmd_height(*s.first), cmd_height(*s.second));
          },
          [](const cmd::If& i) {
            return 1 + std::max(cmd_height(*i.then_branch),
                                cmd_height(*i.else_branch));
          },
          [](const cmd::While& w) { return 1 + cmd_height(*w.body); },
      },
      c.node);
}

}  // namespace imp
