#include <gtest/gtest.h>

#include "imp/ann_cmd.hpp"
#include "imp/difftest.hpp"
#include "imp/optim.hpp"
#include "imp/parser.hpp"
#include "imp/printer.hpp"
#include "imp/semantics.hpp"

using namespace imp;

namespace {

Cmd euclid() {
  return erase(parse_program("r := a; q := 0; while b < r+1 do r := r - b; q := q + 1 done"));
}

}  // namespace

TEST(Fixpoint, Examples) {
  VarSet a{"a"};
  int calls = 0;
  auto add_a = [&](const VarSet& x) {
    ++calls;
    return set_union(x, a);
  };
  EXPECT_EQ(fixpoint(add_a, VarSet{"zz"}, 10), a);
  EXPECT_EQ(calls, 2);  // {} -> {a}, then {a} is stable

  EXPECT_EQ(fixpoint([](const VarSet&) { return VarSet{}; }, VarSet{"d"}, 3), VarSet{});

  auto oscillate = [](const VarSet& x) { return x.count("x") ? VarSet{"y"} : VarSet{"x"}; };
  EXPECT_EQ(fixpoint(oscillate, VarSet{"x", "y"}, 5), (VarSet{"x", "y"}));

  EXPECT_THROW(fixpoint(add_a, {}, 0), std::invalid_argument);
}

TEST(Live, Assignment) {
  Cmd c = assign("x", eadd(evar("y"), evar("z")));
  EXPECT_EQ(live(c, VarSet{"x", "w"}), (VarSet{"w", "y", "z"}));
  EXPECT_EQ(live(c, VarSet{"w"}), VarSet{"w"});
}

TEST(Live, Euclid) {
  EXPECT_EQ(live(euclid(), VarSet{"q"}), (VarSet{"a", "b"}));
  const Cmd c = euclid();
  const auto& loop = std::get<cmd::Seq>(std::get<cmd::Seq>(c.node).second->node).second;
  EXPECT_EQ(live(*loop, VarSet{"q"}), (VarSet{"b", "q", "r"}));
}

TEST(Dce, Euclid) {
  EXPECT_EQ(pretty_print(dce(euclid(), {})),
            "r := a; skip; while b < r + 1 do r := r - b; skip done");
  EXPECT_EQ(dce(euclid(), VarSet{"q"}), euclid());
}

TEST(Agree, Examples) {
  State s;
  s.set("a", 1);
  s.set("b", 2);
  EXPECT_TRUE(agree(s, s, VarSet{"a", "b", "c"}));
  EXPECT_TRUE(agree(s, s.updated("q", 7), VarSet{"a", "b"}));
  EXPECT_FALSE(agree(s, s.updated("a", 2), VarSet{"a"}));
  EXPECT_TRUE(agree(s, State(), VarSet{"c"}));
}

TEST(Agree, UpdateLemmas) {
  GenConfig cfg;
  for (std::uint64_t i = 0; i < 200; ++i) {
    Rng rng(derive_seed(3, i));
    State s = gen_state(cfg, rng);
    State t = gen_state(cfg, rng);
    VarSet a;
    for (const auto& v : cfg.var_pool) {
      if (rng.chance(0.5)) a.insert(v);
    }
    const Ident x = cfg.var_pool[rng.index(cfg.var_pool.size())];
    const Integer v = rng.range(Integer(-5), Integer(5));
    VarSet a_minus_x = a;
    a_minus_x.erase(x);
    if (agree(s, t, a_minus_x)) EXPECT_TRUE(agree(s.updated(x, v), t.updated(x, v), a));
    if (agree(s, t, a) && !a.count(x)) EXPECT_TRUE(agree(s.updated(x, v), t, a));
    // an expression reading only A evaluates equally on agreeing states
    Expr e = gen_expr(cfg, rng, 3);
    if (agree(s, t, free_vars(e))) EXPECT_EQ(eval_expr(s, e), eval_expr(t, e));
  }
}

TEST(Dce, NeverGrows) {
  GenConfig cfg;
  for (std::uint64_t i = 0; i < 200; ++i) {
    Rng rng(derive_seed(5, i));
    Cmd c = gen_program(cfg, rng);
    Cmd d = dce(c, VarSet{"x"});
    EXPECT_LE(node_count(d), node_count(c));
  }
}
