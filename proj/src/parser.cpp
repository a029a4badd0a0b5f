#include "imp/parser.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

namespace imp {

ParseError::ParseError(std::size_t line, std::size_t column,
                       std::vector<std::string> expected, std::string found)
    : std::runtime_error([&] {
        std::string msg = "line " + std::to_string(line) + ", column " +
                          std::to_string(column) + ": expected ";
        if (expected.size() == 1) {
          msg += expected.front();
        } else {
          msg += "one of ";
          for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i > 0) msg += ", ";
            msg += expected[i];
          }
        }
        return msg + ", found " + found;
      }()),
      line_(line),
      column_(column),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

ParseError::ParseError(std::size_t line, std::size_t column,
                       const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

enum class Tok { Word, Int, Ghost, Sym, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End:
      return "end of input";
    case Tok::Int:
      return "integer `" + t.text + "`";
    case Tok::Ghost:
      return "ghost `$" + t.text + "`";
    default:
      return "`" + t.text + "`";
  }
}

std::vector<Token> tokenize(std::string_view src) {
  static const std::vector<std::string> kSymbols = {
      ":=", "<>", "<=", ">=", "&&", "||", "->", ";", "(", ")", "{",
      "}",  "+",  "-",  "*",  "/",  "=",  "<",  ">", "!"};
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  auto word_char = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (src.substr(i, 2) == "//") {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    std::size_t start_line = line, start_col = col;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
        ++j;
      if (j < src.size() && word_char(src[j])) {
        throw ParseError(start_line, start_col,
                         "malformed integer literal `" +
                             std::string(src.substr(i, j - i + 1)) + "`");
      }
      out.push_back({Tok::Int, std::string(src.substr(i, j - i)), start_line,
                     start_col});
      advance(j - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && word_char(src[j])) ++j;
      out.push_back({Tok::Word, std::string(src.substr(i, j - i)), start_line,
                     start_col});
      advance(j - i);
      continue;
    }
    if (c == '$') {
      std::size_t j = i + 1;
      while (j < src.size() && word_char(src[j])) ++j;
      if (j == i + 1) {
        throw ParseError(start_line, start_col, "empty ghost name after `$`");
      }
      out.push_back({Tok::Ghost, std::string(src.substr(i + 1, j - i - 1)),
                     start_line, start_col});
      advance(j - i);
      continue;
    }
    bool matched = false;
    for (const auto& sym : kSymbols) {
      if (src.substr(i, sym.size()) == sym) {
        out.push_back({Tok::Sym, sym, start_line, start_col});
        advance(sym.size());
        matched = true;
        break;
      }
    }
    if (!matched) {
      throw ParseError(start_line, start_col,
                       "unexpected character `" + std::string(1, c) + "`");
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(tokenize(src)) {}

  AnnCmd program() {
    AnnCmd c = acmd();
    expect_end();
    return c;
  }

  Expr whole_expr() {
    Expr e = expr();
    expect_end();
    return e;
  }

  BoolExpr whole_bool() {
    BoolExpr b = bexpr();
    expect_end();
    return b;
  }

  AExpr whole_aexpr() {
    AExpr e = aexpr();
    expect_end();
    return e;
  }

  Assertion whole_assertion() {
    Assertion p = assertion();
    expect_end();
    return p;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }

  bool at_sym(std::string_view s) const {
    return peek().kind == Tok::Sym && peek().text == s;
  }
  bool at_word(std::string_view w) const {
    return peek().kind == Tok::Word && peek().text == w;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    throw ParseError(t.line, t.column, std::move(expected), describe(t));
  }

  void expect_sym(std::string_view s) {
    if (!at_sym(s)) fail({"`" + std::string(s) + "`"});
    ++pos_;
  }
  void expect_word(std::string_view w) {
    if (!at_word(w)) fail({"`" + std::string(w) + "`"});
    ++pos_;
  }
  void expect_end() {
    if (peek().kind != Tok::End) fail({"end of input"});
  }

  Ident ident() {
    const Token& t = peek();
    if (t.kind != Tok::Word || Ident::is_reserved(t.text)) fail({"identifier"});
    ++pos_;
    return Ident(t.text);
  }

  Integer integer_literal(bool negative) {
    const Token& t = peek();
    if (t.kind != Tok::Int) fail({"integer"});
    ++pos_;
    Integer n(t.text);
    return negative ? Integer(-n) : n;
  }

  // acmd := item (";" item)*, with ";" nesting to the right.
  AnnCmd acmd() {
    AnnCmd first = item();
    if (!at_sym(";")) return first;
    ++pos_;
    return ann_seq(std::move(first), acmd());
  }

  AnnCmd item() {
    const Token& t = peek();
    if (t.kind == Tok::Word) {
      if (t.text == "skip") {
        ++pos_;
        return ann_skip();
      }
      if (t.text == "if") {
        ++pos_;
        BoolExpr b = bexpr();
        expect_word("then");
        AnnCmd c1 = acmd();
        expect_word("else");
        AnnCmd c2 = acmd();
        expect_word("end");
        return ann_if(std::move(b), std::move(c1), std::move(c2));
      }
      if (t.text == "while") {
        ++pos_;
        BoolExpr b = bexpr();
        Assertion inv = a_true();
        std::optional<AExpr> measure;
        if (at_word("invariant")) {
          ++pos_;
          expect_sym("{");
          inv = assertion();
          expect_sym("}");
        }
        if (at_word("measure")) {
          ++pos_;
          const Token& start = peek();
          AExpr m = aexpr();
          if (!ghosts(m).empty()) {
            throw ParseError(start.line, start.column,
                             "loop measure may not mention ghost variables");
          }
          measure = std::move(m);
        }
        if (!at_word("do")) {
          std::vector<std::string> exp;
          if (!measure) {
            if (inv.is_true()) exp.push_back("`invariant`");
            exp.push_back("`measure`");
          }
          exp.push_back("`do`");
          fail(exp);
        }
        ++pos_;
        AnnCmd body = acmd();
        expect_word("done");
        return ann_while(std::move(b), std::move(inv), std::move(measure),
                         std::move(body));
      }
      if (t.text == "assert") {
        ++pos_;
        expect_sym("{");
        Assertion p = assertion();
        expect_sym("}");
        return ann_assert(std::move(p));
      }
      if (!Ident::is_reserved(t.text)) {
        Ident x = ident();
        expect_sym(":=");
        return ann_assign(std::move(x), expr());
      }
    }
    fail({"`skip`", "`if`", "`while`", "`assert`", "identifier"});
  }

  BoolExpr bexpr() {
    Expr lhs = expr();
    if (at_sym("=")) {
      ++pos_;
      return beq(std::move(lhs), expr());
    }
    if (at_sym("<")) {
      ++pos_;
      return blt(std::move(lhs), expr());
    }
    fail({"`=`", "`<`", "`+`", "`-`"});
  }

  Expr expr() {
    Expr lhs = term();
    while (at_sym("+") || at_sym("-")) {
      bool plus = peek().text == "+";
      ++pos_;
      Expr rhs = term();
      lhs = plus ? eadd(std::move(lhs), std::move(rhs))
                 : esub(std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  // term := ident | integer | "-" integer | "(" expr ")"
  Expr term() {
    const Token& t = peek();
    if (t.kind == Tok::Int) return econst(integer_literal(false));
    if (t.kind == Tok::Word && !Ident::is_reserved(t.text)) {
      return evar(ident());
    }
    if (at_sym("-")) {
      ++pos_;
      return econst(integer_literal(true));
    }
    if (at_sym("(")) {
      ++pos_;
      Expr e = expr();
      expect_sym(")");
      return e;
    }
    fail({"identifier", "integer", "`(`"});
  }

  // Assertions: "->" (right-assoc) < "||" < "&&" < "!" < atoms.
  Assertion assertion() {
    Assertion lhs = disjunction();
    if (at_sym("->")) {
      ++pos_;
      return a_implies(std::move(lhs), assertion());
    }
    return lhs;
  }

  Assertion disjunction() {
    Assertion lhs = conjunction();
    while (at_sym("||")) {
      ++pos_;
      lhs = a_or(std::move(lhs), conjunction());
    }
    return lhs;
  }

  Assertion conjunction() {
    Assertion lhs = negation();
    while (at_sym("&&")) {
      ++pos_;
      lhs = a_and(std::move(lhs), negation());
    }
    return lhs;
  }

  Assertion negation() {
    if (at_sym("!")) {
      ++pos_;
      return a_not(negation());
    }
    return atom();
  }

  Assertion atom() {
    if (at_word("true")) {
      ++pos_;
      return a_true();
    }
    if (at_word("false")) {
      ++pos_;
      return a_false();
    }
    if (at_sym("(")) {
      // Either a parenthesized assertion or a comparison whose left operand
      // starts with a parenthesized term.
      std::size_t saved = pos_;
      try {
        return comparison();
      } catch (const ParseError& as_cmp) {
        std::size_t cmp_failed_at = pos_;
        pos_ = saved;
        try {
          ++pos_;
          Assertion p = assertion();
          expect_sym(")");
          return p;
        } catch (const ParseError& as_group) {
          if (cmp_failed_at > pos_) throw as_cmp;
          throw;
        }
      }
    }
    return comparison();
  }

  Assertion comparison() {
    AExpr lhs = aexpr();
    static const std::pair<std::string_view, CmpOp> kOps[] = {
        {"=", CmpOp::Eq}, {"<>", CmpOp::Ne}, {"<", CmpOp::Lt},
        {"<=", CmpOp::Le}, {">", CmpOp::Gt},  {">=", CmpOp::Ge}};
    for (const auto& [sym, op] : kOps) {
      if (at_sym(sym)) {
        ++pos_;
        return a_cmp(op, std::move(lhs), aexpr());
      }
    }
    fail({"`=`", "`<>`", "`<`", "`<=`", "`>`", "`>=`"});
  }

  AExpr aexpr() {
    AExpr lhs = aterm();
    while (at_sym("+") || at_sym("-")) {
      auto op = peek().text == "+" ? aexpr::Op::Add : aexpr::Op::Sub;
      ++pos_;
      lhs = abin(op, std::move(lhs), aterm());
    }
    return lhs;
  }

  AExpr aterm() {
    AExpr lhs = afactor();
    while (at_sym("*") || at_sym("/")) {
      auto op = peek().text == "*" ? aexpr::Op::Mul : aexpr::Op::Div;
      ++pos_;
      lhs = abin(op, std::move(lhs), afactor());
    }
    return lhs;
  }

  AExpr afactor() {
    const Token& t = peek();
    if (t.kind == Tok::Int) return aconst(integer_literal(false));
    if (t.kind == Tok::Ghost) {
      ++pos_;
      return aghost(t.text);
    }
    if (t.kind == Tok::Word && !Ident::is_reserved(t.text)) {
      return avar(ident());
    }
    if (at_sym("-")) {
      ++pos_;
      return aconst(integer_literal(true));
    }
    if (at_sym("(")) {
      ++pos_;
      AExpr e = aexpr();
      expect_sym(")");
      return e;
    }
    fail({"identifier", "ghost", "integer", "`(`"});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

AnnCmd parse_program(std::string_view source) {
  return Parser(source).program();
}

Cmd parse_cmd(std::string_view source) { return erase(parse_program(source)); }

Expr parse_expr(std::string_view source) { return Parser(source).whole_expr(); }

BoolExpr parse_bool_expr(std::string_view source) {
  return Parser(source).whole_bool();
}

AExpr parse_aexpr(std::string_view source) {
  return Parser(source).whole_aexpr();
}

Assertion parse_assertion(std::string_view source) {
  return Parser(source).whole_assertion();
}

}  // namespace imp
