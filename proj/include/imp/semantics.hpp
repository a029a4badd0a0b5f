#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "imp/ast.hpp"
#include "imp/state.hpp"

namespace imp {

/// Value of `e` in `s`; nullopt only in Strict mode when a variable is
/// unbound.
std::optional<Integer> eval_expr(const State& s, const Expr& e,
                                 EvalMode mode = EvalMode::Math);
std::optional<bool> eval_bool(const State& s, const BoolExpr& b,
                              EvalMode mode = EvalMode::Math);

/// A (command, state) configuration of the reduction semantics.
struct Config {
  Cmd cmd;
  State state;
};

/// One reduction step. Nullopt when the configuration is irreducible:
/// `skip`, or a Strict-mode evaluation failure in the redex.
std::optional<Config> step(const Cmd& c, const State& s,
                           EvalMode mode = EvalMode::Math);

namespace outcome {
struct Terminated {
  State state;
  std::uint64_t steps;
};
struct GoesWrong {
  std::string reason;
  Cmd residual;
  State state;
};
struct OutOfFuel {
  Cmd residual;
  State state;
};
}  // namespace outcome

using Outcome =
    std::variant<outcome::Terminated, outcome::GoesWrong, outcome::OutOfFuel>;

std::string describe(const Outcome& o);

struct SmallStepRun {
  Outcome outcome;
  /// Every configuration visited, starting with the initial one. Empty unless
  /// tracing was requested.
  std::vector<Config> trace;
};

SmallStepRun run_small_step(const Cmd& c, const State& s, std::uint64_t fuel,
                            EvalMode mode = EvalMode::Math,
                            bool record_trace = false);

/// Result of the definitional interpreter: insufficient depth (bottom), a
/// final state, or a Strict-mode runtime error.
class Res {
 public:
  enum class Kind { Bottom, Value, Wrong };

  static Res bottom() { return Res(Kind::Bottom, std::nullopt); }
  static Res value(State s) { return Res(Kind::Value, std::move(s)); }
  static Res wrong() { return Res(Kind::Wrong, std::nullopt); }

  Kind kind() const { return kind_; }
  bool is_bottom() const { return kind_ == Kind::Bottom; }
  bool is_value() const { return kind_ == Kind::Value; }
  bool is_wrong() const { return kind_ == Kind::Wrong; }
  const State& state() const { return *state_; }

  bool operator==(const Res& other) const;
  std::string to_string() const;

 private:
  Res(Kind kind, std::optional<State> s) : kind_(kind), state_(std::move(s)) {}
  Kind kind_;
  std::optional<State> state_;
};

/// Information order: bottom below everything, otherwise equality.
bool res_le(const Res& lhs, const Res& rhs);

/// Definitional interpreter with recursion-depth bound `fuel`; every equation
/// consumes one unit.
Res interp(std::uint64_t fuel, const Cmd& c, const State& s,
           EvalMode mode = EvalMode::Math);

/// Hard cap on reduction steps when matching the small-step engine against
/// a terminating interpreter run.
inline constexpr std::uint64_t kSmallStepCap = 1'000'000;

/// Joint verdict of both engines on one (command, state, fuel).
struct Classification {
  Outcome outcome;
  Res interp_result;
  bool agreed;
  /// Explanation when the engines disagree; empty otherwise.
  std::string discrepancy;
};

Classification classify(const Cmd& c, const State& s, std::uint64_t fuel,
                        EvalMode mode = EvalMode::Math);

}  // namespace imp
