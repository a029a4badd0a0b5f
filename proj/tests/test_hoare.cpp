#include <gtest/gtest.h>

#include "imp/hoare.hpp"
#include "imp/parser.hpp"
#include "imp/printer.hpp"

using namespace imp;

namespace {

Assertion A(const char* text) { return parse_assertion(text); }

const char* kEuclid =
    "r := a; q := 0;"
    "while b < r + 1 invariant { r >= 0 && b > 0 && a = b * q + r } do"
    "  r := r - b; q := q + 1 done";

// Exhaustive equivalence over the box for the listed variables and ghosts.
bool equivalent_in_box(const Assertion& p, const Assertion& q, const std::vector<Ident>& vars,
                       const std::vector<std::string>& gs, int box) {
  const std::size_t k = vars.size() + gs.size();
  std::vector<int> v(k, -box);
  for (;;) {
    State s;
    GhostValuation g;
    for (std::size_t i = 0; i < vars.size(); ++i) s.set(vars[i], v[i]);
    for (std::size_t i = 0; i < gs.size(); ++i) g[gs[i]] = v[vars.size() + i];
    if (eval_assertion(p, s, g) != eval_assertion(q, s, g)) return false;
    std::size_t i = 0;
    while (i < k && v[i] == box) v[i++] = -box;
    if (i == k) return true;
    ++v[i];
  }
}

}  // namespace

TEST(Subst, EuclidInvariant) {
  Assertion inv = A("a = b * q + r");
  Assertion step1 = subst(inv, "q", eadd(evar("q"), econst(1)));
  EXPECT_EQ(step1, A("a = b * (q + 1) + r"));
  EXPECT_EQ(subst(step1, "r", esub(evar("r"), evar("b"))), A("a = b * (q + 1) + (r - b)"));
  EXPECT_EQ(subst(A("x > 0"), "y", econst(5)), A("x > 0"));
}

TEST(Subst, ReachesBooleanAtoms) {
  Assertion p = b_true(blt(evar("x"), econst(3)));
  EXPECT_EQ(subst(p, "x", econst(7)), b_true(blt(econst(7), econst(3))));
}

TEST(EvalAssertion, Examples) {
  State s;
  s.set("a", 13);
  s.set("b", 5);
  s.set("q", 2);
  s.set("r", 3);
  EXPECT_TRUE(eval_assertion(a_true(), State()));
  EXPECT_TRUE(eval_assertion(A("a = b * q + r"), s));
  EXPECT_TRUE(eval_assertion(A("q = a / b"), s));
}

TEST(EvalAssertion, FloorDivisionAndZeroDivisor) {
  State s;
  s.set("a", -7);
  s.set("b", 2);
  EXPECT_TRUE(eval_assertion(A("a / b = -4"), s));
  s.set("b", 0);
  EXPECT_FALSE(eval_assertion(A("a / b = 0"), s));
  EXPECT_FALSE(eval_assertion(A("a / b <> 0"), s));
  EXPECT_TRUE(eval_assertion(A("!(a / b = 0)"), s));
}

TEST(EvalAssertion, UnboundGhostThrows) {
  EXPECT_THROW(eval_assertion(A("x = $g"), State()), UnboundGhostError);
  EXPECT_TRUE(eval_assertion(A("x = $g"), State(), {{"g", 0}}));
}

TEST(Wp, Equations) {
  Assertion q = A("a = b * q + r");
  EXPECT_EQ(wp(ann_skip(), q), q);
  AnnCmd w = parse_program("while x < 3 invariant { x >= 0 } do x := x + 1 done");
  EXPECT_EQ(wp(w, q), A("x >= 0"));
  EXPECT_EQ(wp(parse_program("r := r - b; q := q + 1"), q), A("a = b * (q + 1) + (r - b)"));
  EXPECT_EQ(wp(parse_program("assert { x = 1 }"), q), A("x = 1"));
  BoolExpr b = blt(evar("x"), econst(0));
  EXPECT_EQ(wp(ann_if(b, ann_assign("y", econst(1)), ann_skip()), A("y = 1")),
            a_or(a_and(b_true(b), A("1 = 1")), a_and(b_false(b), A("y = 1"))));
}

TEST(Vcg, Examples) {
  EXPECT_TRUE(vcg(ann_skip(), A("x = 1")).empty());
  auto vcs = vcg(ann_assert(A("x > 0")), A("x >= 0"));
  ASSERT_EQ(vcs.size(), 1u);
  EXPECT_EQ(vcs[0].formula, a_implies(A("x > 0"), A("x >= 0")));
  EXPECT_FALSE(vcs[0].origin.empty());
}

TEST(Vcgen, Examples) {
  auto vcs = vcgen(A("x > 0"), ann_skip(), A("x > 0"));
  ASSERT_EQ(vcs.size(), 1u);
  EXPECT_EQ(vcs[0].formula, a_implies(A("x > 0"), A("x > 0")));

  vcs = vcgen(a_true(), ann_assert(a_false()), a_true());
  ASSERT_EQ(vcs.size(), 2u);
  EXPECT_EQ(vcs[0].formula, a_implies(a_true(), a_false()));
  EXPECT_EQ(vcs[1].formula, a_implies(a_false(), a_true()));
}

TEST(Vcgen, EuclidThreeImplications) {
  auto vcs = vcgen(A("a >= 0 && b > 0"), parse_program(kEuclid), A("q = a / b"));
  ASSERT_EQ(vcs.size(), 3u);
  const std::vector<Ident> vars{"a", "b", "q", "r"};
  EXPECT_TRUE(equivalent_in_box(
      vcs[0].formula, A("a >= 0 && b > 0 -> a >= 0 && b > 0 && a = b * 0 + a"), vars, {}, 8));
  EXPECT_TRUE(equivalent_in_box(
      vcs[1].formula,
      A("!(b < r + 1) && r >= 0 && b > 0 && a = b * q + r -> q = a / b"), vars, {}, 8));
  EXPECT_TRUE(equivalent_in_box(
      vcs[2].formula,
      A("b < r + 1 && r >= 0 && b > 0 && a = b * q + r -> "
        "r - b >= 0 && b > 0 && a = b * (q + 1) + (r - b)"),
      vars, {}, 8));
  EXPECT_FALSE(find_counterexample(vcs, 8));
}

TEST(TerminationVcs, Examples) {
  EXPECT_TRUE(termination_vcs(parse_program(kEuclid)).empty());

  auto vcs = termination_vcs(parse_program("while 0 < x measure x do x := x - 1 done"));
  ASSERT_EQ(vcs.size(), 1u);
  EXPECT_EQ(ghosts(vcs[0].formula), std::set<std::string>{"v0"});
  EXPECT_TRUE(equivalent_in_box(vcs[0].formula,
                                A("0 < x && x = $v0 -> 0 <= x - 1 && x - 1 < $v0"), {"x"},
                                {"v0"}, 8));
}

TEST(TerminationVcs, EuclidWithMeasure) {
  std::string src = kEuclid;
  src.replace(src.find(" do"), 3, " measure r do");
  auto vcs = termination_vcs(parse_program(src));
  ASSERT_EQ(vcs.size(), 1u);
  EXPECT_TRUE(equivalent_in_box(
      vcs[0].formula,
      A("b < r + 1 && r = $v0 && (r >= 0 && b > 0 && a = b * q + r) -> "
        "0 <= r - b && r - b < $v0 && (r - b >= 0 && b > 0 && a = b * (q + 1) + (r - b))"),
      {"a", "b", "q", "r"}, {"v0"}, 4));
  EXPECT_FALSE(find_counterexample(vcs, 6));
}

TEST(TerminationVcs, FreshGhostAvoidsExisting) {
  auto vcs = termination_vcs(
      parse_program("while 0 < x invariant { x <= $v0 } measure x do x := x - 1 done"));
  ASSERT_EQ(vcs.size(), 1u);
  EXPECT_EQ(ghosts(vcs[0].formula), (std::set<std::string>{"v0", "v1"}));
}

TEST(Simplify, Examples) {
  Assertion p = A("x < y");
  EXPECT_EQ(simplify(a_and(a_true(), p)), p);
  EXPECT_EQ(simplify(A("1 + 1 = 2")), a_true());
  EXPECT_EQ(simplify(a_implies(p, a_true())), a_true());
  EXPECT_EQ(simplify(a_not(a_not(p))), p);
}

TEST(Simplify, PreservesMeaning) {
  Assertion p = A("!(!(x + 0 < y * 1)) && (true -> x / 2 >= y - 3) || false");
  EXPECT_TRUE(equivalent_in_box(p, simplify(p), {"x", "y"}, {}, 6));
}

TEST(FindCounterexample, Examples) {
  EXPECT_FALSE(find_counterexample({VC{A("x >= 0 -> x + 1 > 0"), "t"}}, 10));
  auto cex = find_counterexample({VC{A("x >= 0 -> x - 1 >= 0"), "t"}}, 10);
  ASSERT_TRUE(cex);
  EXPECT_EQ(cex->variables.at("x"), 0);
  EXPECT_EQ(cex->vc_index, 0u);
}

TEST(FindCounterexample, BudgetIsExplicit) {
  EXPECT_THROW(find_counterexample({VC{A("a + b + c + d + e = a + b + c + d + e"), "t"}}, 8, 1000),
               BudgetError);
}

TEST(ExportSmtlib, Examples) {
  std::string s = export_smtlib({VC{a_true(), "t"}});
  EXPECT_NE(s.find("(assert (not true))"), std::string::npos);
  EXPECT_EQ(s.find("declare-const"), std::string::npos);

  s = export_smtlib({VC{A("x >= 0 -> x + 1 > 0"), "t"}});
  EXPECT_NE(s.find("(declare-const x Int)"), std::string::npos);
  EXPECT_NE(s.find("(assert (not (=> (>= x 0) (> (+ x 1) 0))))"), std::string::npos);
  EXPECT_NE(s.find("(check-sat)"), std::string::npos);

  auto vcs = vcgen(A("a >= 0 && b > 0"), parse_program(kEuclid), A("q = a / b"));
  s = export_smtlib(vcs);
  auto count = [&](const std::string& needle) {
    std::size_t n = 0;
    for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
    return n;
  };
  EXPECT_EQ(count("(check-sat)"), 3u);
  EXPECT_EQ(count("(push 1)"), 3u);
  for (const char* v : {"a", "b", "q", "r"}) {
    EXPECT_EQ(count(std::string("(declare-const ") + v + " Int)"), 1u) << v;
  }
  EXPECT_NE(s.find("(not (= b 0))"), std::string::npos);
}

TEST(Contract, LeadingAndTrailingAsserts) {
  Contract c = extract_contract(parse_program("assert { x > 0 }; x := x - 1; assert { x >= 0 }"));
  EXPECT_EQ(c.pre, A("x > 0"));
  EXPECT_EQ(c.post, A("x >= 0"));
  EXPECT_EQ(c.body, parse_program("x := x - 1"));

  c = extract_contract(parse_program("x := 1"));
  EXPECT_TRUE(c.pre.is_true());
  EXPECT_TRUE(c.post.is_true());

  c = extract_contract(parse_program("x := 1; assert { x = 1 }"));
  EXPECT_TRUE(c.pre.is_true());
  EXPECT_EQ(c.post, A("x = 1"));
}
