#include "imp/optim.hpp"

#include <stdexcept>

#include "imp/box.hpp"

namespace imp {

VarSet fixpoint(const std::function<VarSet(const VarSet&)>& f,
                const VarSet& fallback, std::size_t max_iterations) {
  if (max_iterations == 0) {
    throw std::invalid_argument("fixpoint needs at least one iteration");
  }
  VarSet x;
  for (std::size_t n = 0; n <= max_iterations; ++n) {
    VarSet next = f(x);
    if (is_subset(next, x)) return x;
    x = std::move(next);
  }
  return fallback;
}

VarSet live(const Cmd& c, const VarSet& live_out) {
  return std::visit(
      overloaded{
          [&](const cmd::Skip&) { return live_out; },
          [&](const cmd::Assign& a) {
            if (!live_out.count(a.target)) return live_out;
            VarSet out = live_out;
            out.erase(a.target);
            return set_union(out, free_vars(a.value));
          },
          [&](const cmd::Seq& s) {
            return live(*s.first, live(*s.second, live_out));
          },
          [&](const cmd::If& i) {
            return set_union(free_vars(i.cond),
                             set_union(live(*i.then_branch, live_out),
                                       live(*i.else_branch, live_out)));
          },
          [&](const cmd::While& w) {
            const VarSet cond_vars = free_vars(w.cond);
            const VarSet fallback = set_union(live_out, free_vars(c));
            // The transformer is monotone over the finite universe
            // FV(c) + live_out, so this bound is never reached.
            const std::size_t bound = fallback.size() + 2;
            return fixpoint(
                [&](const VarSet& x) {
                  return set_union(set_union(live_out, cond_vars),
                                   live(*w.body, x));
                },
                fallback, bound);
          },
      },
      c.node);
}

Cmd dce(const Cmd& c, const VarSet& live_out) {
  return std::visit(
      overloaded{
          [&](const cmd::Skip&) { return c; },
          [&](const cmd::Assign& a) {
            return live_out.count(a.target) ? c : skip();
          },
          [&](const cmd::Seq& s) {
            return seq(dce(*s.first, live(*s.second, live_out)),
                       dce(*s.second, live_out));
          },
          [&](const cmd::If& i) {
            return if_then_else(i.cond, dce(*i.then_branch, live_out),
                                dce(*i.else_branch, live_out));
          },
          [&](const cmd::While& w) {
            return while_do(w.cond, dce(*w.body, live(c, live_out)));
          },
      },
      c.node);
}

bool agree(const State& s1, const State& s2, const VarSet& vars) {
  for (const auto& x : vars) {
    if (s1.lookup(x) != s2.lookup(x)) return false;
  }
  return true;
}

}  // namespace imp
