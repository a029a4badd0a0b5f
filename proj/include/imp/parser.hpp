#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "imp/ann_cmd.hpp"

namespace imp {

/// Syntax error with a 1-based source position and the set of tokens that
/// would have been accepted there.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column,
             std::vector<std::string> expected, std::string found);
  /// Error that is not about an unexpected token (e.g. a bad literal).
  ParseError(std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::vector<std::string> expected_;
  std::string found_;
};

/// Parses an `.imp` program. Unannotated loops get invariant `true` and no
/// measure.
AnnCmd parse_program(std::string_view source);

/// Parses a program and erases its annotations.
Cmd parse_cmd(std::string_view source);

Expr parse_expr(std::string_view source);
BoolExpr parse_bool_expr(std::string_view source);
AExpr parse_aexpr(std::string_view source);
Assertion parse_assertion(std::string_view source);

}  // namespace imp
