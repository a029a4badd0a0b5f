#pragma once

#include <string>

#include "imp/ann_cmd.hpp"

namespace imp {

// Single-line concrete syntax. For commands whose sequences nest to the
// right (the shape the parser produces), the output reparses to an equal
// AST.

std::string to_string(const Expr& e);
std::string to_string(const BoolExpr& b);
std::string to_string(const Cmd& c);
std::string to_string(const AExpr& e);
std::string to_string(const Assertion& p);
std::string to_string(const AnnCmd& c);

inline std::string pretty_print(const AnnCmd& c) { return to_string(c); }
inline std::string pretty_print(const Cmd& c) { return to_string(c); }

}  // namespace imp
