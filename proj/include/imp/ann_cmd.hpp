#pragma once

#include <optional>
#include <variant>

#include "imp/assertion.hpp"
#include "imp/ast.hpp"

namespace imp {

struct AnnCmd;

namespace ann {
struct Skip {
  bool operator==(const Skip&) const = default;
};
struct Assign {
  Ident target;
  Expr value;
  bool operator==(const Assign&) const = default;
};
struct Seq {
  Box<AnnCmd> first;
  Box<AnnCmd> second;
  bool operator==(const Seq&) const = default;
};
struct If {
  BoolExpr cond;
  Box<AnnCmd> then_branch;
  Box<AnnCmd> else_branch;
  bool operator==(const If&) const = default;
};
/// Loop carrying an invariant and, for total correctness, a measure.
struct While {
  BoolExpr cond;
  Assertion invariant;
  std::optional<AExpr> measure;
  Box<AnnCmd> body;
  bool operator==(const While&) const = default;
};
struct Assert {
  Assertion condition;
  bool operator==(const Assert&) const = default;
};
}  // namespace ann

/// Annotated command: IMP plus loop invariants/measures and `assert`.
struct AnnCmd {
  std::variant<ann::Skip, ann::Assign, ann::Seq, ann::If, ann::While,
               ann::Assert>
      node;
  bool operator==(const AnnCmd&) const = default;
};

AnnCmd ann_skip();
AnnCmd ann_assign(Ident target, Expr value);
AnnCmd ann_seq(AnnCmd first, AnnCmd second);
AnnCmd ann_if(BoolExpr cond, AnnCmd then_branch, AnnCmd else_branch);
AnnCmd ann_while(BoolExpr cond, Assertion invariant,
                 std::optional<AExpr> measure, AnnCmd body);
AnnCmd ann_assert(Assertion condition);

/// Drops loop annotations and turns `assert` into `skip`.
Cmd erase(const AnnCmd& c);

/// Views a plain command as annotated: invariants `true`, no measures.
AnnCmd lift(const Cmd& c);

/// True when every loop in `c` carries a measure (vacuously true when there
/// are no loops).
bool all_loops_measured(const AnnCmd& c);

VarSet free_vars(const AnnCmd& c);

}  // namespace imp
