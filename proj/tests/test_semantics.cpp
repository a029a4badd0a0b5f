#include <gtest/gtest.h>

#include "imp/ann_cmd.hpp"
#include "imp/parser.hpp"
#include "imp/semantics.hpp"

using namespace imp;

namespace {

Cmd euclid() {
  return erase(parse_program("r := a; q := 0; while b < r+1 do r := r - b; q := q + 1 done"));
}

State store(std::initializer_list<std::pair<const char*, long>> kv) {
  State s;
  for (auto [k, v] : kv) s.set(k, v);
  return s;
}

State partial(std::initializer_list<std::pair<const char*, long>> kv) {
  State s = State::partial();
  for (auto [k, v] : kv) s.set(k, v);
  return s;
}

}  // namespace

TEST(EvalExpr, Examples) {
  EXPECT_EQ(eval_expr(store({{"x", 12}}), eadd(evar("x"), econst(1))), Integer(13));
  EXPECT_EQ(eval_expr(State(), econst(5)), Integer(5));
  const Integer max32 = (Integer(1) << 31) - 1;
  State s;
  s.set("x", max32);
  EXPECT_EQ(eval_expr(s, eadd(evar("x"), econst(1)), EvalMode::Wrap32), -(Integer(1) << 31));
  EXPECT_EQ(eval_expr(s, eadd(evar("x"), econst(1)), EvalMode::Math), Integer(1) << 31);
  EXPECT_FALSE(eval_expr(State::partial(), eadd(evar("y"), econst(1)), EvalMode::Strict));
}

TEST(EvalExpr, UnboundDefaultsToZero) {
  EXPECT_EQ(eval_expr(State(), evar("nope")), Integer(0));
}

TEST(EvalBool, Examples) {
  EXPECT_EQ(eval_bool(store({{"a", 1}, {"b", 1}}), beq(evar("a"), evar("b"))), true);
  EXPECT_EQ(eval_bool(store({{"r", 3}, {"b", 5}}), blt(evar("b"), eadd(evar("r"), econst(1)))),
            false);
  EXPECT_FALSE(eval_bool(partial({{"a", 1}}), beq(evar("a"), evar("b")), EvalMode::Strict));
}

TEST(Step, Rules) {
  Cmd c = assign("x", econst(1));
  auto r = step(seq(skip(), c), State());
  ASSERT_TRUE(r);
  EXPECT_EQ(r->cmd, c);

  r = step(c, State());
  ASSERT_TRUE(r);
  EXPECT_TRUE(r->cmd.is_skip());
  EXPECT_EQ(r->state, store({{"x", 1}}));

  EXPECT_FALSE(step(skip(), State()));

  r = step(while_do(blt(econst(1), econst(0)), c), State());
  ASSERT_TRUE(r);
  EXPECT_TRUE(r->cmd.is_skip());
}

TEST(Step, StrictUnboundIsStuck) {
  EXPECT_FALSE(step(assign("x", evar("y")), State::partial(), EvalMode::Strict));
}

TEST(RunSmallStep, Examples) {
  auto run = run_small_step(seq(assign("x", econst(1)), assign("y", econst(2))), State(), 10);
  const auto* t = std::get_if<outcome::Terminated>(&run.outcome);
  ASSERT_TRUE(t);
  EXPECT_EQ(t->state, store({{"x", 1}, {"y", 2}}));
  EXPECT_EQ(t->steps, 3u);

  run = run_small_step(skip(), store({{"z", 4}}), 0);
  t = std::get_if<outcome::Terminated>(&run.outcome);
  ASSERT_TRUE(t);
  EXPECT_EQ(t->steps, 0u);

  run = run_small_step(while_do(blt(econst(0), econst(1)), skip()), State(), 100);
  EXPECT_TRUE(std::holds_alternative<outcome::OutOfFuel>(run.outcome));
}

TEST(RunSmallStep, GoesWrongInStrictMode) {
  auto run = run_small_step(assign("x", evar("y")), State::partial(), 10, EvalMode::Strict);
  EXPECT_TRUE(std::holds_alternative<outcome::GoesWrong>(run.outcome));
}

TEST(RunSmallStep, TraceStartsWithInitialConfig) {
  auto run = run_small_step(assign("x", econst(1)), State(), 10, EvalMode::Math, true);
  ASSERT_EQ(run.trace.size(), 2u);
  EXPECT_EQ(run.trace.front().state, State());
  EXPECT_TRUE(run.trace.back().cmd.is_skip());
}

TEST(Interp, Equations) {
  for (const Cmd& c : {skip(), euclid(), assign("x", econst(1))}) {
    EXPECT_TRUE(interp(0, c, State()).is_bottom());
  }
  State s = store({{"k", 9}});
  EXPECT_EQ(interp(1, skip(), s), Res::value(s));
}

TEST(Interp, Euclid) {
  Res r = interp(50, euclid(), store({{"a", 13}, {"b", 5}}));
  ASSERT_TRUE(r.is_value());
  EXPECT_EQ(r.state().value_or_zero("q"), 2);
  EXPECT_EQ(r.state().value_or_zero("r"), 3);
}

TEST(Interp, DeepLoopDoesNotOverflowStack) {
  Cmd loop = while_do(blt(econst(0), evar("n")), assign("n", esub(evar("n"), econst(1))));
  Res r = interp(300000, loop, store({{"n", 200000}}));
  ASSERT_TRUE(r.is_value());
  EXPECT_EQ(r.state().value_or_zero("n"), 0);
}

TEST(Interp, StrictWrong) {
  EXPECT_TRUE(interp(10, assign("x", evar("y")), State::partial(), EvalMode::Strict).is_wrong());
}

TEST(Res, Order) {
  State s = store({{"x", 1}});
  EXPECT_TRUE(res_le(Res::bottom(), Res::value(s)));
  EXPECT_TRUE(res_le(Res::value(s), Res::value(s)));
  EXPECT_FALSE(res_le(Res::value(s), Res::bottom()));
  EXPECT_FALSE(res_le(Res::value(s), Res::value(store({{"x", 2}}))));
}

TEST(Classify, Examples) {
  auto cl = classify(skip(), State(), 10);
  EXPECT_TRUE(cl.agreed);
  EXPECT_TRUE(std::holds_alternative<outcome::Terminated>(cl.outcome));

  cl = classify(euclid(), store({{"a", 13}, {"b", 5}}), 50);
  EXPECT_TRUE(cl.agreed) << cl.discrepancy;
  const auto* t = std::get_if<outcome::Terminated>(&cl.outcome);
  ASSERT_TRUE(t);
  EXPECT_EQ(t->state.value_or_zero("q"), 2);
  EXPECT_EQ(t->state.value_or_zero("r"), 3);

  cl = classify(while_do(blt(econst(0), econst(1)), skip()), State(), 100);
  EXPECT_TRUE(cl.agreed) << cl.discrepancy;
  EXPECT_TRUE(std::holds_alternative<outcome::OutOfFuel>(cl.outcome));
  EXPECT_TRUE(cl.interp_result.is_bottom());
}

TEST(StateTest, ExtensionalEquality) {
  State a = store({{"x", 0}});
  EXPECT_EQ(a, State());
  EXPECT_NE(State::partial(), State());
  EXPECT_EQ(store({{"b", 2}, {"a", 1}}).to_string(), "{a=1, b=2}");
}
