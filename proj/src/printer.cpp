#include "imp/printer.hpp"

namespace imp {

namespace {

bool is_additive(const Expr& e) {
  return std::holds_alternative<expr::Add>(e.node) ||
         std::holds_alternative<expr::Sub>(e.node);
}

void print(const Expr& e, std::string& out) {
  std::visit(overloaded{
                 [&](const expr::Var& v) { out += v.name.name(); },
                 [&](const expr::Const& c) { out += c.value.str(); },
                 [&](const expr::Add& a) {
                   print(*a.lhs, out);
                   out += " + ";
                   if (is_additive(*a.rhs)) out += "(";
                   print(*a.rhs, out);
                   if (is_additive(*a.rhs)) out += ")";
                 },
                 [&](const expr::Sub& s) {
                   print(*s.lhs, out);
                   out += " - ";
                   if (is_additive(*s.rhs)) out += "(";
                   print(*s.rhs, out);
                   if (is_additive(*s.rhs)) out += ")";
                 },
             },
             e.node);
}

void print(const BoolExpr& b, std::string& out) {
  print(b.lhs, out);
  out += b.op == BoolExpr::Op::Eq ? " = " : " < ";
  print(b.rhs, out);
}

// Binding strength: 1 additive, 2 multiplicative, 3 atom.
int level(const AExpr& e) {
  if (const auto* b = std::get_if<aexpr::Binary>(&e.node)) {
    return (b->op == aexpr::Op::Add || b->op == aexpr::Op::Sub) ? 1 : 2;
  }
  return 3;
}

void print(const AExpr& e, int min_level, std::string& out) {
  bool paren = level(e) < min_level;
  if (paren) out += "(";
  std::visit(overloaded{
                 [&](const aexpr::Var& v) { out += v.name.name(); },
                 [&](const aexpr::Ghost& g) { out += "$" + g.name; },
                 [&](const aexpr::Const& c) { out += c.value.str(); },
                 [&](const aexpr::Binary& b) {
                   int l = level(e);
                   print(*b.lhs, l, out);
                   switch (b.op) {
                     case aexpr::Op::Add: out += " + "; break;
                     case aexpr::Op::Sub: out += " - "; break;
                     case aexpr::Op::Mul: out += " * "; break;
                     case aexpr::Op::Div: out += " / "; break;
                   }
                   print(*b.rhs, l + 1, out);
                 },
             },
             e.node);
  if (paren) out += ")";
}

const char* cmp_symbol(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return " = ";
    case CmpOp::Ne: return " <> ";
    case CmpOp::Lt: return " < ";
    case CmpOp::Le: return " <= ";
    case CmpOp::Gt: return " > ";
    case CmpOp::Ge: return " >= ";
  }
  return " ? ";
}

// Binding strength: 1 implication, 2 or, 3 and, 4 not, 5 atom.
int level(const Assertion& p) {
  return std::visit(overloaded{
                        [](const assertion::Binary& b) {
                          switch (b.op) {
                            case Connective::Implies: return 1;
                            case Connective::Or: return 2;
                            case Connective::And: return 3;
                          }
                          return 1;
                        },
                        [](const assertion::Not&) { return 4; },
                        [](const assertion::BFalse&) { return 4; },
                        [](const auto&) { return 5; },
                    },
                    p.node);
}

void print(const Assertion& p, int min_level, std::string& out) {
  bool paren = level(p) < min_level;
  if (paren) out += "(";
  std::visit(overloaded{
                 [&](const assertion::True&) { out += "true"; },
                 [&](const assertion::False&) { out += "false"; },
                 [&](const assertion::Cmp& c) {
                   print(c.lhs, 1, out);
                   out += cmp_symbol(c.op);
                   print(c.rhs, 1, out);
                 },
                 [&](const assertion::Binary& b) {
                   switch (b.op) {
                     case Connective::Implies:
                       print(*b.lhs, 2, out);
                       out += " -> ";
                       print(*b.rhs, 1, out);
                       break;
                     case Connective::Or:
                       print(*b.lhs, 2, out);
                       out += " || ";
                       print(*b.rhs, 3, out);
                       break;
                     case Connective::And:
                       print(*b.lhs, 3, out);
                       out += " && ";
                       print(*b.rhs, 4, out);
                       break;
                   }
                 },
                 [&](const assertion::Not& n) {
                   out += "!";
                   print(*n.operand, 4, out);
                 },
                 [&](const assertion::BTrue& b) { print(b.cond, out); },
                 [&](const assertion::BFalse& b) {
                   out += "!(";
                   print(b.cond, out);
                   out += ")";
                 },
             },
             p.node);
  if (paren) out += ")";
}

void print(const Cmd& c, std::string& out) {
  std::visit(overloaded{
                 [&](const cmd::Skip&) { out += "skip"; },
                 [&](const cmd::Assign& a) {
                   out += a.target.name() + " := ";
                   print(a.value, out);
                 },
                 [&](const cmd::Seq& s) {
                   print(*s.first, out);
                   out += "; ";
                   print(*s.second, out);
                 },
                 [&](const cmd::If& i) {
                   out += "if ";
                   print(i.cond, out);
                   out += " then ";
                   print(*i.then_branch, out);
                   out += " else ";
                   print(*i.else_branch, out);
                   out += " end";
                 },
                 [&](const cmd::While& w) {
                   out += "while ";
                   print(w.cond, out);
                   out += " do ";
                   print(*w.body, out);
                   out += " done";
                 },
             },
             c.node);
}

void print(const AnnCmd& c, std::string& out) {
  std::visit(overloaded{
                 [&](const ann::Skip&) { out += "skip"; },
                 [&](const ann::Assign& a) {
                   out += a.target.name() + " := ";
                   print(a.value, out);
                 },
                 [&](const ann::Seq& s) {
                   print(*s.first, out);
                   out += "; ";
                   print(*s.second, out);
                 },
                 [&](const ann::If& i) {
                   out += "if ";
                   print(i.cond, out);
                   out += " then ";
                   print(*i.then_branch, out);
                   out += " else ";
                   print(*i.else_branch, out);
                   out += " end";
                 },
                 [&](const ann::While& w) {
                   out += "while ";
                   print(w.cond, out);
                   if (!w.invariant.is_true()) {
                     out += " invariant { ";
                     print(w.invariant, 1, out);
                     out += " }";
                   }
                   if (w.measure) {
                     out += " measure ";
                     print(*w.measure, 1, out);
                   }
                   out += " do ";
                   print(*w.body, out);
                   out += " done";
                 },
                 [&](const ann::Assert& a) {
                   out += "assert { ";
                   print(a.condition, 1, out);
                   out += " }";
                 },
             },
             c.node);
}

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

std::string to_string(const BoolExpr& b) {
  std::string out;
  print(b, out);
  return out;
}

std::string to_string(const Cmd& c) {
  std::string out;
  print(c, out);
  return out;
}

std::string to_string(const AExpr& e) {
  std::string out;
  print(e, 1, out);
  return out;
}

std::string to_string(const Assertion& p) {
  std::string out;
  print(p, 1, out);
  return out;
}

std::string to_string(const AnnCmd& c) {
  std::string out;
  print(c, out);
  return out;
}

}  // namespace imp
