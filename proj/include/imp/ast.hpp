#pragma once

#include <cstddef>
#include <variant>

#include "imp/box.hpp"
#include "imp/ident.hpp"
#include "imp/integer.hpp"

namespace imp {

struct Expr;
struct Cmd;

namespace expr {
struct Var {
  Ident name;
  bool operator==(const Var&) const = default;
};
struct Const {
  Integer value;
  bool operator==(const Const&) const = default;
};
struct Add {
  Box<Expr> lhs;
  Box<Expr> rhs;
  bool operator==(const Add&) const = default;
};
struct Sub {
  Box<Expr> lhs;
  Box<Expr> rhs;
  bool operator==(const Sub&) const = default;
};
}  // namespace expr

/// Arithmetic expression: x | n | e1 + e2 | e1 - e2.
struct Expr {
  std::variant<expr::Var, expr::Const, expr::Add, expr::Sub> node;
  bool operator==(const Expr&) const = default;
};

/// Boolean condition: e1 = e2 | e1 < e2.
struct BoolExpr {
  enum class Op { Eq, Lt };
  Op op;
  Expr lhs;
  Expr rhs;
  bool operator==(const BoolExpr&) const = default;
};

namespace cmd {
struct Skip {
  bool operator==(const Skip&) const = default;
};
struct Assign {
  Ident target;
  Expr value;
  bool operator==(const Assign&) const = default;
};
struct Seq {
  Box<Cmd> first;
  Box<Cmd> second;
  bool operator==(const Seq&) const = default;
};
struct If {
  BoolExpr cond;
  Box<Cmd> then_branch;
  Box<Cmd> else_branch;
  bool operator==(const If&) const = default;
};
struct While {
  BoolExpr cond;
  Box<Cmd> body;
  bool operator==(const While&) const = default;
};
}  // namespace cmd

/// IMP command.
struct Cmd {
  std::variant<cmd::Skip, cmd::Assign, cmd::Seq, cmd::If, cmd::While> node;
  bool operator==(const Cmd&) const = default;

  bool is_skip() const { return std::holds_alternative<cmd::Skip>(node); }
};

Expr evar(Ident name);
Expr econst(Integer value);
Expr eadd(Expr lhs, Expr rhs);
Expr esub(Expr lhs, Expr rhs);

BoolExpr beq(Expr lhs, Expr rhs);
BoolExpr blt(Expr lhs, Expr rhs);

Cmd skip();
Cmd assign(Ident target, Expr value);
Cmd seq(Cmd first, Cmd second);
Cmd if_then_else(BoolExpr cond, Cmd then_branch, Cmd else_branch);
Cmd while_do(BoolExpr cond, Cmd body);

VarSet free_vars(const Expr& e);
VarSet free_vars(const BoolExpr& b);
/// Variables read or assigned anywhere in `c`.
VarSet free_vars(const Cmd& c);

/// Number of AST nodes (commands, conditions, expressions).
std::size_t node_count(const Expr& e);
std::size_t node_count(const BoolExpr& b);
std::size_t node_count(const Cmd& c);

/// Height of the command tree (Skip and Assign have height 1).
std::size_t cmd_height(const Cmd& c);

}  // namespace imp
