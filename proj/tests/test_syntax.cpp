#include <gtest/gtest.h>

#include "imp/ann_cmd.hpp"
#include "imp/difftest.hpp"
#include "imp/parser.hpp"
#include "imp/printer.hpp"

using namespace imp;

namespace {

const char* kEuclid = "r := a; q := 0; while b < r+1 do r := r - b; q := q + 1 done";

}  // namespace

TEST(Ident, RejectsReservedWords) {
  for (const char* w : {"skip", "if", "then", "else", "end", "while", "do", "done",
                        "invariant", "measure", "assert", "true", "false"}) {
    EXPECT_FALSE(Ident::is_valid(w)) << w;
    EXPECT_THROW(Ident{w}, std::invalid_argument);
  }
  EXPECT_TRUE(Ident::is_valid("x1"));
  EXPECT_TRUE(Ident::is_valid("_tmp"));
  EXPECT_FALSE(Ident::is_valid("1x"));
  EXPECT_FALSE(Ident::is_valid(""));
}

TEST(VarSetOps, SetLaws) {
  VarSet a{"a", "b"}, b{"b", "c"};
  EXPECT_EQ(set_union(a, b), (VarSet{"a", "b", "c"}));
  EXPECT_EQ(set_difference(a, b), (VarSet{"a"}));
  EXPECT_TRUE(is_subset(VarSet{"b"}, a));
  EXPECT_FALSE(is_subset(b, a));
  EXPECT_EQ(format_varset(VarSet{"b", "a"}), "{a, b}");
}

TEST(Parser, Skip) { EXPECT_EQ(parse_program("skip"), ann_skip()); }

TEST(Parser, EuclidShape) {
  AnnCmd body = ann_seq(ann_assign("r", esub(evar("r"), evar("b"))),
                        ann_assign("q", eadd(evar("q"), econst(1))));
  AnnCmd expected = ann_seq(
      ann_assign("r", evar("a")),
      ann_seq(ann_assign("q", econst(0)),
              ann_while(blt(evar("b"), eadd(evar("r"), econst(1))), a_true(),
                        std::nullopt, body)));
  EXPECT_EQ(parse_program(kEuclid), expected);
}

TEST(Parser, ErrorAtSemicolon) {
  try {
    parse_program("x := ;");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 6u);
    EXPECT_EQ(e.found(), "`;`");
  }
}

TEST(Parser, ErrorPositionOnLaterLine) {
  try {
    parse_program("x := 1;\n  while x do skip done");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Parser, CommentsAndAnnotations) {
  AnnCmd c = parse_program(
      "// header\nwhile 0 < x invariant { x >= 0 } measure x do x := x - 1 done; "
      "assert { x = 0 }");
  const auto& s = std::get<ann::Seq>(c.node);
  const auto& w = std::get<ann::While>(s.first->node);
  EXPECT_EQ(w.invariant, a_cmp(CmpOp::Ge, avar("x"), aconst(0)));
  ASSERT_TRUE(w.measure.has_value());
  EXPECT_EQ(*w.measure, avar("x"));
  EXPECT_TRUE(std::holds_alternative<ann::Assert>(s.second->node));
}

TEST(Parser, MeasureRejectsGhosts) {
  EXPECT_THROW(parse_program("while 0 < x measure $v do skip done"), ParseError);
}

TEST(Parser, AssertionPrecedence) {
  Assertion p = parse_assertion("a = 1 || b = 2 && c = 3 -> d = 4 -> e = 5");
  Assertion eq_a = a_cmp(CmpOp::Eq, avar("a"), aconst(1));
  Assertion eq_b = a_cmp(CmpOp::Eq, avar("b"), aconst(2));
  Assertion eq_c = a_cmp(CmpOp::Eq, avar("c"), aconst(3));
  Assertion eq_d = a_cmp(CmpOp::Eq, avar("d"), aconst(4));
  Assertion eq_e = a_cmp(CmpOp::Eq, avar("e"), aconst(5));
  EXPECT_EQ(p, a_implies(a_or(eq_a, a_and(eq_b, eq_c)), a_implies(eq_d, eq_e)));
  EXPECT_EQ(parse_assertion("(a + 1) * 2 = b"),
            a_cmp(CmpOp::Eq,
                  abin(aexpr::Op::Mul, abin(aexpr::Op::Add, avar("a"), aconst(1)), aconst(2)),
                  avar("b")));
  EXPECT_EQ(parse_assertion("(a = 1)"), a_cmp(CmpOp::Eq, avar("a"), aconst(1)));
}

TEST(Printer, Basics) {
  EXPECT_EQ(pretty_print(ann_skip()), "skip");
  EXPECT_EQ(to_string(esub(evar("a"), esub(evar("b"), evar("c")))), "a - (b - c)");
  EXPECT_EQ(to_string(esub(esub(evar("a"), evar("b")), evar("c"))), "a - b - c");
  AnnCmd w = ann_while(blt(evar("x"), evar("y")), a_cmp(CmpOp::Ge, avar("x"), aconst(0)),
                       std::nullopt, ann_skip());
  EXPECT_EQ(pretty_print(w), "while x < y invariant { x >= 0 } do skip done");
}

TEST(Printer, RoundTripEuclid) {
  AnnCmd c = parse_program(kEuclid);
  EXPECT_EQ(parse_program(pretty_print(c)), c);
  EXPECT_EQ(pretty_print(c), "r := a; q := 0; while b < r + 1 do r := r - b; q := q + 1 done");
}

TEST(Printer, RoundTripGenerated) {
  GenConfig cfg;
  for (std::uint64_t i = 0; i < 300; ++i) {
    Rng rng(derive_seed(7, i));
    Cmd c = gen_program(cfg, rng);
    EXPECT_EQ(parse_cmd(pretty_print(c)), c) << pretty_print(c);
  }
}

TEST(Printer, NegativeLiteral) {
  Cmd c = assign("x", esub(econst(3), econst(-5)));
  EXPECT_EQ(pretty_print(c), "x := 3 - -5");
  EXPECT_EQ(parse_cmd(pretty_print(c)), c);
}

TEST(Erase, AssertAndWhile) {
  EXPECT_EQ(erase(ann_assert(a_false())), skip());
  AnnCmd w = ann_while(blt(evar("x"), econst(3)), a_false(), avar("x"),
                       ann_assert(a_true()));
  EXPECT_EQ(erase(w), while_do(blt(evar("x"), econst(3)), skip()));
}

TEST(FreeVars, Structural) {
  EXPECT_EQ(free_vars(eadd(evar("x"), econst(1))), VarSet{"x"});
  EXPECT_EQ(free_vars(blt(evar("b"), eadd(evar("r"), econst(1)))), (VarSet{"b", "r"}));
  EXPECT_TRUE(free_vars(econst(5)).empty());
  EXPECT_EQ(free_vars(erase(parse_program(kEuclid))), (VarSet{"a", "b", "q", "r"}));
}
