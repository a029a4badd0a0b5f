#include "imp/hoare.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "imp/printer.hpp"
#include "imp/semantics.hpp"

namespace imp {

// ---------------------------------------------------------------------------
// Substitution

namespace {

Expr subst_expr(const Expr& e, const Ident& x, const Expr& by) {
  return std::visit(
      overloaded{
          [&](const expr::Var& v) { return v.name == x ? by : e; },
          [&](const expr::Const&) { return e; },
          [&](const expr::Add& a) {
            return eadd(subst_expr(*a.lhs, x, by), subst_expr(*a.rhs, x, by));
          },
          [&](const expr::Sub& s) {
            return esub(subst_expr(*s.lhs, x, by), subst_expr(*s.rhs, x, by));
          },
      },
      e.node);
}

BoolExpr subst_bool(const BoolExpr& b, const Ident& x, const Expr& by) {
  return BoolExpr{b.op, subst_expr(b.lhs, x, by), subst_expr(b.rhs, x, by)};
}

}  // namespace

AExpr subst(const AExpr& a, const Ident& x, const Expr& e) {
  return std::visit(
      overloaded{
          [&](const aexpr::Var& v) { return v.name == x ? lift(e) : a; },
          [&](const aexpr::Ghost&) { return a; },
          [&](const aexpr::Const&) { return a; },
          [&](const aexpr::Binary& b) {
            return abin(b.op, subst(*b.lhs, x, e), subst(*b.rhs, x, e));
          },
      },
      a.node);
}

Assertion subst(const Assertion& p, const Ident& x, const Expr& e) {
  return std::visit(
      overloaded{
          [&](const assertion::True&) { return p; },
          [&](const assertion::False&) { return p; },
          [&](const assertion::Cmp& c) {
            return a_cmp(c.op, subst(c.lhs, x, e), subst(c.rhs, x, e));
          },
          [&](const assertion::Binary& b) {
            return Assertion{assertion::Binary{b.op, subst(*b.lhs, x, e),
                                               subst(*b.rhs, x, e)}};
          },
          [&](const assertion::Not& n) { return a_not(subst(*n.operand, x, e)); },
          [&](const assertion::BTrue& b) {
            return b_true(subst_bool(b.cond, x, e));
          },
          [&](const assertion::BFalse& b) {
            return b_false(subst_bool(b.cond, x, e));
          },
      },
      p.node);
}

// ---------------------------------------------------------------------------
// Evaluation

std::optional<Integer> eval_aexpr(const AExpr& a, const State& s,
                                  const GhostValuation& ghosts) {
  return std::visit(
      overloaded{
          [&](const aexpr::Var& v) { return s.lookup(v.name); },
          [&](const aexpr::Ghost& g) -> std::optional<Integer> {
            auto it = ghosts.find(g.name);
            if (it == ghosts.end()) throw UnboundGhostError(g.name);
            return it->second;
          },
          [&](const aexpr::Const& c) -> std::optional<Integer> {
            return c.value;
          },
          [&](const aexpr::Binary& b) -> std::optional<Integer> {
            auto l = eval_aexpr(*b.lhs, s, ghosts);
            auto r = eval_aexpr(*b.rhs, s, ghosts);
            if (!l || !r) return std::nullopt;
            switch (b.op) {
              case aexpr::Op::Add: return *l + *r;
              case aexpr::Op::Sub: return *l - *r;
              case aexpr::Op::Mul: return *l * *r;
              case aexpr::Op::Div:
                if (*r == 0) return std::nullopt;
                return floor_div(*l, *r);
            }
            return std::nullopt;
          },
      },
      a.node);
}

namespace {

bool compare(CmpOp op, const Integer& l, const Integer& r) {
  switch (op) {
    case CmpOp::Eq: return l == r;
    case CmpOp::Ne: return l != r;
    case CmpOp::Lt: return l < r;
    case CmpOp::Le: return l <= r;
    case CmpOp::Gt: return l > r;
    case CmpOp::Ge: return l >= r;
  }
  return false;
}

}  // namespace

bool eval_assertion(const Assertion& p, const State& s,
                    const GhostValuation& ghosts) {
  return std::visit(
      overloaded{
          [](const assertion::True&) { return true; },
          [](const assertion::False&) { return false; },
          [&](const assertion::Cmp& c) {
            auto l = eval_aexpr(c.lhs, s, ghosts);
            auto r = eval_aexpr(c.rhs, s, ghosts);
            return l && r && compare(c.op, *l, *r);
          },
          [&](const assertion::Binary& b) {
            switch (b.op) {
              case Connective::And:
                return eval_assertion(*b.lhs, s, ghosts) &&
                       eval_assertion(*b.rhs, s, ghosts);
              case Connective::Or:
                return eval_assertion(*b.lhs, s, ghosts) ||
                       eval_assertion(*b.rhs, s, ghosts);
              case Connective::Implies:
                return !eval_assertion(*b.lhs, s, ghosts) ||
                       eval_assertion(*b.rhs, s, ghosts);
            }
            return false;
          },
          [&](const assertion::Not& n) {
            return !eval_assertion(*n.operand, s, ghosts);
          },
          [&](const assertion::BTrue& b) {
            return eval_bool(s, b.cond, EvalMode::Math) == std::optional(true);
          },
          [&](const assertion::BFalse& b) {
            return eval_bool(s, b.cond, EvalMode::Math) ==
                   std::optional(false);
          },
      },
      p.node);
}

// ---------------------------------------------------------------------------
// Weakest preconditions and verification conditions

Assertion wp(const AnnCmd& c, const Assertion& q) {
  return std::visit(
      overloaded{
          [&](const ann::Skip&) { return q; },
          [&](const ann::Assign& a) { return subst(q, a.target, a.value); },
          [&](const ann::Seq& s) { return wp(*s.first, wp(*s.second, q)); },
          [&](const ann::If& i) {
            return a_or(a_and(b_true(i.cond), wp(*i.then_branch, q)),
                        a_and(b_false(i.cond), wp(*i.else_branch, q)));
          },
          [&](const ann::While& w) { return w.invariant; },
          [&](const ann::Assert& a) { return a.condition; },
      },
      c.node);
}

namespace {

void vcg_into(const AnnCmd& c, const Assertion& q, std::vector<VC>& out) {
  std::visit(
      overloaded{
          [](const ann::Skip&) {},
          [](const ann::Assign&) {},
          [&](const ann::Seq& s) {
            vcg_into(*s.first, wp(*s.second, q), out);
            vcg_into(*s.second, q, out);
          },
          [&](const ann::If& i) {
            vcg_into(*i.then_branch, q, out);
            vcg_into(*i.else_branch, q, out);
          },
          [&](const ann::While& w) {
            vcg_into(*w.body, w.invariant, out);
            const std::string where = "while " + to_string(w.cond);
            out.push_back({a_implies(a_and(b_false(w.cond), w.invariant), q),
                           "loop exit: " + where});
            out.push_back(
                {a_implies(a_and(b_true(w.cond), w.invariant),
                           wp(*w.body, w.invariant)),
                 "loop invariant preserved: " + where});
          },
          [&](const ann::Assert& a) {
            out.push_back({a_implies(a.condition, q),
                           "assert " + to_string(a.condition)});
          },
      },
      c.node);
}

std::set<std::string> ghosts_in(const AnnCmd& c) {
  std::set<std::string> out;
  std::visit(
      overloaded{
          [](const ann::Skip&) {},
          [](const ann::Assign&) {},
          [&](const ann::Seq& s) {
            out.merge(ghosts_in(*s.first));
            out.merge(ghosts_in(*s.second));
          },
          [&](const ann::If& i) {
            out.merge(ghosts_in(*i.then_branch));
            out.merge(ghosts_in(*i.else_branch));
          },
          [&](const ann::While& w) {
            out.merge(ghosts(w.invariant));
            out.merge(ghosts_in(*w.body));
          },
          [&](const ann::Assert& a) { out.merge(ghosts(a.condition)); },
      },
      c.node);
  return out;
}

struct TerminationBuilder {
  std::set<std::string> taken;
  std::size_t counter = 0;
  std::vector<VC> out;

  std::string fresh() {
    for (;;) {
      std::string name = "v" + std::to_string(counter++);
      if (taken.insert(name).second) return name;
    }
  }

  void visit(const AnnCmd& c) {
    std::visit(
        overloaded{
            [](const ann::Skip&) {},
            [](const ann::Assign&) {},
            [&](const ann::Seq& s) {
              visit(*s.first);
              visit(*s.second);
            },
            [&](const ann::If& i) {
              visit(*i.then_branch);
              visit(*i.else_branch);
            },
            [&](const ann::While& w) {
              if (w.measure) {
                AExpr v = aghost(fresh());
                const AExpr& m = *w.measure;
                Assertion pre = a_and(
                    a_and(b_true(w.cond), a_cmp(CmpOp::Eq, m, v)), w.invariant);
                Assertion post =
                    a_and(a_and(a_cmp(CmpOp::Le, aconst(0), m),
                                a_cmp(CmpOp::Lt, m, v)),
                          w.invariant);
                const std::string where = "while " + to_string(w.cond);
                out.push_back({a_implies(pre, wp(*w.body, post)),
                               "measure decreases: " + where});
                // Side conditions of the body against the decrease
                // postcondition (nonempty only for nested loops/asserts).
                std::vector<VC> side;
                vcg_into(*w.body, post, side);
                for (auto& vc : side) {
                  vc.origin = "measure body (" + where + "): " + vc.origin;
                  out.push_back(std::move(vc));
                }
              }
              visit(*w.body);
            },
            [](const ann::Assert&) {},
        },
        c.node);
  }
};

}  // namespace

std::vector<VC> vcg(const AnnCmd& c, const Assertion& q) {
  std::vector<VC> out;
  vcg_into(c, q, out);
  return out;
}

std::vector<VC> vcgen(const Assertion& p, const AnnCmd& c, const Assertion& q) {
  std::vector<VC> out;
  out.push_back({a_implies(p, wp(c, q)), "precondition implies wp"});
  vcg_into(c, q, out);
  return out;
}

std::vector<VC> termination_vcs(const AnnCmd& c) {
  TerminationBuilder builder;
  builder.taken = ghosts_in(c);
  builder.visit(c);
  return std::move(builder.out);
}

// ---------------------------------------------------------------------------
// Simplification

AExpr simplify(const AExpr& a) {
  const auto* b = std::get_if<aexpr::Binary>(&a.node);
  if (!b) return a;
  AExpr l = simplify(*b->lhs);
  AExpr r = simplify(*b->rhs);
  const auto* lc = std::get_if<aexpr::Const>(&l.node);
  const auto* rc = std::get_if<aexpr::Const>(&r.node);
  if (lc && rc) {
    switch (b->op) {
      case aexpr::Op::Add: return aconst(lc->value + rc->value);
      case aexpr::Op::Sub: return aconst(lc->value - rc->value);
      case aexpr::Op::Mul: return aconst(lc->value * rc->value);
      case aexpr::Op::Div:
        if (rc->value != 0) return aconst(floor_div(lc->value, rc->value));
        break;
    }
  }
  // Identities that keep every divisor of the surviving operand.
  if (rc && rc->value == 0 &&
      (b->op == aexpr::Op::Add || b->op == aexpr::Op::Sub)) {
    return l;
  }
  if (lc && lc->value == 0 && b->op == aexpr::Op::Add) return r;
  if (rc && rc->value == 1 &&
      (b->op == aexpr::Op::Mul || b->op == aexpr::Op::Div)) {
    return l;
  }
  if (lc && lc->value == 1 && b->op == aexpr::Op::Mul) return r;
  return abin(b->op, std::move(l), std::move(r));
}

namespace {

std::optional<bool> constant_condition(const BoolExpr& b) {
  if (!free_vars(b).empty()) return std::nullopt;
  return eval_bool(State{}, b, EvalMode::Math);
}

}  // namespace

Assertion simplify(const Assertion& p) {
  return std::visit(
      overloaded{
          [&](const assertion::True&) { return p; },
          [&](const assertion::False&) { return p; },
          [&](const assertion::Cmp& c) {
            AExpr l = simplify(c.lhs);
            AExpr r = simplify(c.rhs);
            const auto* lc = std::get_if<aexpr::Const>(&l.node);
            const auto* rc = std::get_if<aexpr::Const>(&r.node);
            if (lc && rc) {
              return compare(c.op, lc->value, rc->value) ? a_true() : a_false();
            }
            return a_cmp(c.op, std::move(l), std::move(r));
          },
          [&](const assertion::Binary& b) {
            Assertion l = simplify(*b.lhs);
            Assertion r = simplify(*b.rhs);
            switch (b.op) {
              case Connective::And:
                if (l.is_false() || r.is_false()) return a_false();
                if (l.is_true()) return r;
                if (r.is_true()) return l;
                return a_and(std::move(l), std::move(r));
              case Connective::Or:
                if (l.is_true() || r.is_true()) return a_true();
                if (l.is_false()) return r;
                if (r.is_false()) return l;
                return a_or(std::move(l), std::move(r));
              case Connective::Implies:
                if (l.is_false() || r.is_true()) return a_true();
                if (l.is_true()) return r;
                if (r.is_false()) return simplify(a_not(std::move(l)));
                return a_implies(std::move(l), std::move(r));
            }
            return p;
          },
          [&](const assertion::Not& n) {
            Assertion inner = simplify(*n.operand);
            if (inner.is_true()) return a_false();
            if (inner.is_false()) return a_true();
            if (const auto* nn = std::get_if<assertion::Not>(&inner.node)) {
              return *nn->operand;
            }
            return a_not(std::move(inner));
          },
          [&](const assertion::BTrue& b) {
            auto v = constant_condition(b.cond);
            if (!v) return p;
            return *v ? a_true() : a_false();
          },
          [&](const assertion::BFalse& b) {
            auto v = constant_condition(b.cond);
            if (!v) return p;
            return *v ? a_false() : a_true();
          },
      },
      p.node);
}

// ---------------------------------------------------------------------------
// Bounded counterexample search

std::string Counterexample::valuation_string() const {
  std::string out;
  for (const auto& [x, v] : variables) {
    if (!out.empty()) out += ", ";
    out += x.name() + "=" + v.str();
  }
  for (const auto& [g, v] : ghosts) {
    if (!out.empty()) out += ", ";
    out += "$" + g + "=" + v.str();
  }
  return out;
}

std::optional<Counterexample> find_counterexample(const std::vector<VC>& vcs,
                                                  std::int64_t box,
                                                  std::uint64_t budget) {
  if (box < 0) throw std::invalid_argument("box bound must be nonnegative");
  const Integer width = Integer(2 * box + 1);
  Integer total = 0;
  for (const auto& vc : vcs) {
    auto k = free_vars(vc.formula).size() + ghosts(vc.formula).size();
    total += boost::multiprecision::pow(width, static_cast<unsigned>(k));
  }
  if (total > budget) {
    throw BudgetError("box search needs " + total.str() +
                      " evaluations, budget is " + std::to_string(budget));
  }

  for (std::size_t idx = 0; idx < vcs.size(); ++idx) {
    const VC& vc = vcs[idx];
    std::vector<Ident> vars;
    for (const auto& x : free_vars(vc.formula)) vars.push_back(x);
    std::vector<std::string> gs;
    for (const auto& g : ghosts(vc.formula)) gs.push_back(g);
    const std::size_t k = vars.size() + gs.size();

    std::vector<std::int64_t> digits(k, -box);
    for (;;) {
      State s;
      GhostValuation g;
      for (std::size_t i = 0; i < vars.size(); ++i) {
        s.set(vars[i], Integer(digits[i]));
      }
      for (std::size_t i = 0; i < gs.size(); ++i) {
        g[gs[i]] = Integer(digits[vars.size() + i]);
      }
      if (!eval_assertion(vc.formula, s, g)) {
        return Counterexample{idx, vc, s.bindings(), g};
      }
      // Odometer: the last position varies fastest.
      bool exhausted = true;
      for (std::size_t pos = k; pos > 0; --pos) {
        if (digits[pos - 1] < box) {
          ++digits[pos - 1];
          exhausted = false;
          break;
        }
        digits[pos - 1] = -box;
      }
      if (exhausted) break;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// SMT-LIB2 export

namespace {

std::string smt_symbol(const std::string& name) {
  static const std::set<std::string> kClashes = {
      "and", "or", "not", "ite", "let", "div", "mod", "abs", "distinct",
      "true", "false", "Int", "Bool", "forall", "exists", "assert",
      "push", "pop", "as", "par", "_", "!", "check", "set", "exit"};
  if (kClashes.count(name)) return "|" + name + "|";
  return name;
}

std::string smt_int(const Integer& n) {
  if (n < 0) return "(- " + Integer(-n).str() + ")";
  return n.str();
}

std::string smt_term(const AExpr& a) {
  return std::visit(
      overloaded{
          [](const aexpr::Var& v) { return smt_symbol(v.name.name()); },
          [](const aexpr::Ghost& g) { return "$" + g.name; },
          [](const aexpr::Const& c) { return smt_int(c.value); },
          [](const aexpr::Binary& b) {
            std::string l = smt_term(*b.lhs);
            std::string r = smt_term(*b.rhs);
            switch (b.op) {
              case aexpr::Op::Add: return "(+ " + l + " " + r + ")";
              case aexpr::Op::Sub: return "(- " + l + " " + r + ")";
              case aexpr::Op::Mul: return "(* " + l + " " + r + ")";
              case aexpr::Op::Div:
                // SMT-LIB `div` is Euclidean; it agrees with floor division
                // for positive divisors, and floor(l/r) = floor(-l/-r).
                return "(ite (> " + r + " 0) (div " + l + " " + r +
                       ") (div (- " + l + ") (- " + r + ")))";
            }
            return std::string("?");
          },
      },
      a.node);
}

void collect_divisors(const AExpr& a, std::vector<std::string>& out) {
  if (const auto* b = std::get_if<aexpr::Binary>(&a.node)) {
    collect_divisors(*b->lhs, out);
    collect_divisors(*b->rhs, out);
    if (b->op == aexpr::Op::Div) out.push_back(smt_term(*b->rhs));
  }
}

std::string smt_cond(const BoolExpr& b) {
  return std::string("(") + (b.op == BoolExpr::Op::Eq ? "= " : "< ") +
         smt_term(lift(b.lhs)) + " " + smt_term(lift(b.rhs)) + ")";
}

std::string smt_formula(const Assertion& p) {
  return std::visit(
      overloaded{
          [](const assertion::True&) { return std::string("true"); },
          [](const assertion::False&) { return std::string("false"); },
          [](const assertion::Cmp& c) {
            std::string l = smt_term(c.lhs);
            std::string r = smt_term(c.rhs);
            std::string atom;
            switch (c.op) {
              case CmpOp::Eq: atom = "(= " + l + " " + r + ")"; break;
              case CmpOp::Ne: atom = "(not (= " + l + " " + r + "))"; break;
              case CmpOp::Lt: atom = "(< " + l + " " + r + ")"; break;
              case CmpOp::Le: atom = "(<= " + l + " " + r + ")"; break;
              case CmpOp::Gt: atom = "(> " + l + " " + r + ")"; break;
              case CmpOp::Ge: atom = "(>= " + l + " " + r + ")"; break;
            }
            std::vector<std::string> divisors;
            collect_divisors(c.lhs, divisors);
            collect_divisors(c.rhs, divisors);
            if (divisors.empty()) return atom;
            // A comparison touching a zero divisor is false.
            std::string guarded = "(and";
            for (const auto& d : divisors) guarded += " (not (= " + d + " 0))";
            return guarded + " " + atom + ")";
          },
          [](const assertion::Binary& b) {
            const char* op = b.op == Connective::And  ? "and"
                             : b.op == Connective::Or ? "or"
                                                      : "=>";
            return std::string("(") + op + " " + smt_formula(*b.lhs) + " " +
                   smt_formula(*b.rhs) + ")";
          },
          [](const assertion::Not& n) {
            return "(not " + smt_formula(*n.operand) + ")";
          },
          [](const assertion::BTrue& b) { return smt_cond(b.cond); },
          [](const assertion::BFalse& b) {
            return "(not " + smt_cond(b.cond) + ")";
          },
      },
      p.node);
}

}  // namespace

std::string export_smtlib(const std::vector<VC>& vcs) {
  VarSet vars;
  std::set<std::string> gs;
  for (const auto& vc : vcs) {
    vars = set_union(vars, free_vars(vc.formula));
    gs.merge(ghosts(vc.formula));
  }
  std::ostringstream out;
  out << "; " << vcs.size() << " verification condition"
      << (vcs.size() == 1 ? "" : "s")
      << "; each block is unsat iff its condition is valid\n";
  out << "(set-logic QF_NIA)\n";
  for (const auto& x : vars) {
    out << "(declare-const " << smt_symbol(x.name()) << " Int)\n";
  }
  for (const auto& g : gs) out << "(declare-const $" << g << " Int)\n";
  for (const auto& vc : vcs) {
    out << "(push 1)\n";
    out << "; " << vc.origin << "\n";
    out << "(assert (not " << smt_formula(vc.formula) << "))\n";
    out << "(check-sat)\n";
    out << "(pop 1)\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------

namespace {

void flatten(const AnnCmd& c, std::vector<AnnCmd>& items) {
  if (const auto* s = std::get_if<ann::Seq>(&c.node)) {
    flatten(*s->first, items);
    flatten(*s->second, items);
  } else {
    items.push_back(c);
  }
}

}  // namespace

Contract extract_contract(const AnnCmd& program) {
  std::vector<AnnCmd> items;
  flatten(program, items);
  Contract out{a_true(), ann_skip(), a_true()};
  std::size_t begin = 0, end = items.size();
  if (end - begin >= 2) {
    if (const auto* a = std::get_if<ann::Assert>(&items[begin].node)) {
      out.pre = a->condition;
      ++begin;
    }
  }
  const bool has_pre = begin > 0;
  if ((has_pre && end - begin >= 1) || end - begin >= 2) {
    if (const auto* a = std::get_if<ann::Assert>(&items[end - 1].node)) {
      out.post = a->condition;
      --end;
    }
  }
  if (begin < end) {
    AnnCmd body = items[end - 1];
    for (std::size_t i = end - 1; i > begin; --i) {
      body = ann_seq(items[i - 1], std::move(body));
    }
    out.body = std::move(body);
  }
  return out;
}

}  // namespace imp
