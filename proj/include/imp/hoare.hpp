#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "imp/ann_cmd.hpp"
#include "imp/state.hpp"

namespace imp {

/// A verification condition and the rule/location that produced it.
struct VC {
  Assertion formula;
  std::string origin;
};

using GhostValuation = std::map<std::string, Integer>;

class UnboundGhostError : public std::runtime_error {
 public:
  explicit UnboundGhostError(const std::string& name)
      : std::runtime_error("unbound ghost variable $" + name) {}
};

/// Thrown when an exhaustive box search would exceed its evaluation budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// p[x <- e]: replaces every program occurrence of `x` (including inside
/// wrapped conditions) by `e`. Ghosts are untouched.
Assertion subst(const Assertion& p, const Ident& x, const Expr& e);
AExpr subst(const AExpr& a, const Ident& x, const Expr& e);

/// Value of an assertion term; nullopt when a zero divisor is met or a
/// variable is unbound in a partial state.
std::optional<Integer> eval_aexpr(const AExpr& a, const State& s,
                                  const GhostValuation& ghosts);

/// First-order truth of `p` in `s`. A comparison that touches a zero
/// divisor is false. Throws UnboundGhostError for a ghost missing from
/// `ghosts`.
bool eval_assertion(const Assertion& p, const State& s,
                    const GhostValuation& ghosts = {});

/// Weakest liberal precondition.
Assertion wp(const AnnCmd& c, const Assertion& q);

/// Side conditions for {wp(c, q)} c {q}, one entry per conjunct.
std::vector<VC> vcg(const AnnCmd& c, const Assertion& q);

/// [p -> wp(c, q)] followed by vcg(c, q).
std::vector<VC> vcgen(const Assertion& p, const AnnCmd& c, const Assertion& q);

/// Termination conditions for every loop carrying a measure. Each loop gets
/// a fresh ghost standing for the measure's value on entry to the body.
std::vector<VC> termination_vcs(const AnnCmd& c);

/// Constant folding and propagation of true/false; preserves truth value.
Assertion simplify(const Assertion& p);
AExpr simplify(const AExpr& a);

/// A falsifying assignment for one VC.
struct Counterexample {
  std::size_t vc_index;
  VC vc;
  std::map<Ident, Integer> variables;
  GhostValuation ghosts;

  std::string valuation_string() const;
};

inline constexpr std::uint64_t kDefaultSearchBudget = 50'000'000;

/// Evaluates every VC on all integer valuations of its variables and ghosts
/// in [-box, box] (lexicographic order by name, variables before ghosts) and
/// returns the first falsifying one. Nullopt means no counterexample inside
/// the box. Throws BudgetError when the total number of evaluations would
/// exceed `budget`.
std::optional<Counterexample> find_counterexample(
    const std::vector<VC>& vcs, std::int64_t box,
    std::uint64_t budget = kDefaultSearchBudget);

/// SMT-LIB2 script checking each VC's validity: declarations once, then one
/// push/assert-negation/check-sat/pop block per VC. `unsat` everywhere means
/// every VC is valid.
std::string export_smtlib(const std::vector<VC>& vcs);

/// Pre/postcondition split of an annotated program: a leading
/// `assert { P }` is the precondition and a trailing `assert { Q }` the
/// postcondition; either defaults to `true` when absent.
struct Contract {
  Assertion pre;
  AnnCmd body;
  Assertion post;
};

Contract extract_contract(const AnnCmd& program);

}  // namespace imp
