#include "imp/assertion.hpp"

namespace imp {

AExpr avar(Ident name) { return AExpr{aexpr::Var{std::move(name)}}; }
AExpr aghost(std::string name) { return AExpr{aexpr::Ghost{std::move(name)}}; }
AExpr aconst(Integer value) { return AExpr{aexpr::Const{std::move(value)}}; }
AExpr abin(aexpr::Op op, AExpr lhs, AExpr rhs) {
  return AExpr{aexpr::Binary{op, std::move(lhs), std::move(rhs)}};
}

AExpr lift(const Expr& e) {
  return std::visit(
      overloaded{
          [](const expr::Var& v) { return avar(v.name); },
          [](const expr::Const& c) { return aconst(c.value); },
          [](const expr::Add& a) {
            return abin(aexpr::Op::Add, lift(*a.lhs), lift(*a.rhs));
          },
          [](const expr::Sub& s) {
            return abin(aexpr::Op::Sub, lift(*s.lhs), lift(*s.rhs));
          },
      },
      e.node);
}

Assertion a_true() { return Assertion{assertion::True{}}; }
Assertion a_false() { return Assertion{assertion::False{}}; }
Assertion a_cmp(CmpOp op, AExpr lhs, AExpr rhs) {
  return Assertion{assertion::Cmp{op, std::move(lhs), std::move(rhs)}};
}
Assertion a_and(Assertion lhs, Assertion rhs) {
  return Assertion{
      assertion::Binary{Connective::And, std::move(lhs), std::move(rhs)}};
}
Assertion a_or(Assertion lhs, Assertion rhs) {
  return Assertion{
      assertion::Binary{Connective::Or, std::move(lhs), std::move(rhs)}};
}
Assertion a_implies(Assertion lhs, Assertion rhs) {
  return Assertion{
      assertion::Binary{Connective::Implies, std::move(lhs), std::move(rhs)}};
}
Assertion a_not(Assertion operand) {
  return Assertion{assertion::Not{std::move(operand)}};
}
Assertion b_true(BoolExpr cond) {
  return Assertion{assertion::BTrue{std::move(cond)}};
}
Assertion b_false(BoolExpr cond) {
  return Assertion{assertion::BFalse{std::move(cond)}};
}

namespace {

template <class OnVar, class OnGhost>
void walk(const AExpr& e, OnVar& on_var, OnGhost& on_ghost) {
  std::visit(overloaded{
                 [&](const aexpr::Var& v) { on_var(v.name); },
                 [&](const aexpr::Ghost& g) { on_ghost(g.name); },
                 [](const aexpr::Const&) {},
                 [&](const aexpr::Binary& b) {
                   walk(*b.lhs, on_var, on_ghost);
                   walk(*b.rhs, on_var, on_ghost);
                 },
             },
             e.node);
}

template <class OnVar, class OnGhost>
void walk(const Assertion& p, OnVar& on_var, OnGhost& on_ghost) {
  std::visit(overloaded{
                 [](const assertion::True&) {},
                 [](const assertion::False&) {},
                 [&](const assertion::Cmp& c) {
                   walk(c.lhs, on_var, on_ghost);
                   walk(c.rhs, on_var, on_ghost);
                 },
                 [&](const assertion::Binary& b) {
                   walk(*b.lhs, on_var, on_ghost);
                   walk(*b.rhs, on_var, on_ghost);
                 },
                 [&](const assertion::Not& n) {
                   walk(*n.operand, on_var, on_ghost);
                 },
                 [&](const assertion::BTrue& b) {
                   for (const auto& v : free_vars(b.cond)) on_var(v);
                 },
                 [&](const assertion::BFalse& b) {
                   for (const auto& v : free_vars(b.cond)) on_var(v);
                 },
             },
             p.node);
}

}  // namespace

VarSet free_vars(const AExpr& e) {
  VarSet out;
  auto on_var = [&](const Ident& v) { out.insert(v); };
  auto on_ghost = [](const std::string&) {};
  walk(e, on_var, on_ghost);
  return out;
}

VarSet free_vars(const Assertion& p) {
  VarSet out;
  auto on_var = [&](const Ident& v) { out.insert(v); };
  auto on_ghost = [](const std::string&) {};
  walk(p, on_var, on_ghost);
  return out;
}

std::set<std::string> ghosts(const AExpr& e) {
  std::set<std::string> out;
  auto on_var = [](const Ident&) {};
  auto on_ghost = [&](const std::string& g) { out.insert(g); };
  walk(e, on_var, on_ghost);
  return out;
}

std::set<std::string> ghosts(const Assertion& p) {
  std::set<std::string> out;
  auto on_var = [](const Ident&) {};
  auto on_ghost = [&](const std::string& g) { out.insert(g); };
  walk(p, on_var, on_ghost);
  return out;
}

}  // namespace imp
