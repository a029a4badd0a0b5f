#pragma once

#include <cstddef>
#include <functional>

#include "imp/ast.hpp"
#include "imp/state.hpp"

namespace imp {

/// Iterates `f` from the empty set and returns the first iterate X (within
/// `max_iterations` applications) with f(X) included in X; returns
/// `fallback` when none is found. Requires max_iterations >= 1.
VarSet fixpoint(const std::function<VarSet(const VarSet&)>& f,
                const VarSet& fallback, std::size_t max_iterations);

/// Over-approximation of the variables live before `c` given the set
/// `live_out` live after it.
VarSet live(const Cmd& c, const VarSet& live_out);

/// Replaces assignments to dead variables by `skip`.
Cmd dce(const Cmd& c, const VarSet& live_out);

/// s1 and s2 coincide on every variable of `vars`.
bool agree(const State& s1, const State& s2, const VarSet& vars);

}  // namespace imp
