#pragma once

#include <set>
#include <string>
#include <variant>

#include "imp/ast.hpp"

namespace imp {

struct AExpr;
struct Assertion;

namespace aexpr {
struct Var {
  Ident name;
  bool operator==(const Var&) const = default;
};
/// Logical variable; never appears in program text. Spelled `$name`.
struct Ghost {
  std::string name;
  bool operator==(const Ghost&) const = default;
};
struct Const {
  Integer value;
  bool operator==(const Const&) const = default;
};
enum class Op { Add, Sub, Mul, Div };
struct Binary {
  Op op;
  Box<AExpr> lhs;
  Box<AExpr> rhs;
  bool operator==(const Binary&) const = default;
};
}  // namespace aexpr

/// Arithmetic term of the assertion language. Division rounds toward
/// negative infinity.
struct AExpr {
  std::variant<aexpr::Var, aexpr::Ghost, aexpr::Const, aexpr::Binary> node;
  bool operator==(const AExpr&) const = default;
};

enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };
enum class Connective { And, Or, Implies };

namespace assertion {
struct True {
  bool operator==(const True&) const = default;
};
struct False {
  bool operator==(const False&) const = default;
};
struct Cmp {
  CmpOp op;
  AExpr lhs;
  AExpr rhs;
  bool operator==(const Cmp&) const = default;
};
struct Binary {
  Connective op;
  Box<Assertion> lhs;
  Box<Assertion> rhs;
  bool operator==(const Binary&) const = default;
};
struct Not {
  Box<Assertion> operand;
  bool operator==(const Not&) const = default;
};
/// Holds when the program condition evaluates to true.
struct BTrue {
  BoolExpr cond;
  bool operator==(const BTrue&) const = default;
};
/// Holds when the program condition evaluates to false.
struct BFalse {
  BoolExpr cond;
  bool operator==(const BFalse&) const = default;
};
}  // namespace assertion

struct Assertion {
  std::variant<assertion::True, assertion::False, assertion::Cmp,
               assertion::Binary, assertion::Not, assertion::BTrue,
               assertion::BFalse>
      node;
  bool operator==(const Assertion&) const = default;

  bool is_true() const { return std::holds_alternative<assertion::True>(node); }
  bool is_false() const {
    return std::holds_alternative<assertion::False>(node);
  }
};

AExpr avar(Ident name);
AExpr aghost(std::string name);
AExpr aconst(Integer value);
AExpr abin(aexpr::Op op, AExpr lhs, AExpr rhs);
/// Embeds a program expression.
AExpr lift(const Expr& e);

Assertion a_true();
Assertion a_false();
Assertion a_cmp(CmpOp op, AExpr lhs, AExpr rhs);
Assertion a_and(Assertion lhs, Assertion rhs);
Assertion a_or(Assertion lhs, Assertion rhs);
Assertion a_implies(Assertion lhs, Assertion rhs);
Assertion a_not(Assertion operand);
Assertion b_true(BoolExpr cond);
Assertion b_false(BoolExpr cond);

VarSet free_vars(const AExpr& e);
VarSet free_vars(const Assertion& p);
std::set<std::string> ghosts(const AExpr& e);
std::set<std::string> ghosts(const Assertion& p);

}  // namespace imp
