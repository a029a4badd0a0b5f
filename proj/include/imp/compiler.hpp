#pragma once

#include <cstdint>

#include "imp/ast.hpp"
#include "imp/vm.hpp"

namespace imp {

/// Postfix code leaving the value of `e` on top of the stack.
Code compile_expr(const Expr& e);

/// Falls through when `b` holds, otherwise branches by `offset` relative to
/// the end of the generated code.
Code compile_bool(const BoolExpr& b, std::int64_t offset);

/// Code that updates the store like `c` and leaves the stack unchanged.
Code compile_cmd(const Cmd& c);

/// compile_cmd(c) followed by a single `halt`.
Code compile_program(const Cmd& c);

}  // namespace imp
