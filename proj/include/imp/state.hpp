#pragma once

#include <map>
#include <optional>
#include <string>

#include "imp/ident.hpp"
#include "imp/integer.hpp"

namespace imp {

/// Arithmetic and undefinedness discipline for expression evaluation.
enum class EvalMode {
  Math,    ///< exact integers
  Wrap32,  ///< signed 32-bit two's complement
  Strict,  ///< exact integers; unbound variables are undefined
};

const char* to_string(EvalMode mode);

/// Store mapping identifiers to integers. A state with a default value is
/// total (unbound names read as the default); a state without one is partial
/// and unbound lookups are undefined.
class State {
 public:
  /// Total state, all variables 0.
  State() = default;
  explicit State(std::map<Ident, Integer> bindings,
                 std::optional<Integer> default_value = Integer{0});

  /// Empty partial state for Strict mode.
  static State partial() { return State({}, std::nullopt); }

  std::optional<Integer> lookup(const Ident& x) const;
  /// Lookup that falls back to 0 on partial states.
  Integer value_or_zero(const Ident& x) const;

  State updated(const Ident& x, Integer value) const;
  void set(const Ident& x, Integer value);

  const std::map<Ident, Integer>& bindings() const { return bindings_; }
  const std::optional<Integer>& default_value() const { return default_; }
  bool is_partial() const { return !default_.has_value(); }

  /// Extensional equality: same default and same value at every name.
  bool operator==(const State& other) const;

  /// `{a=1, b=2}` in name order.
  std::string to_string() const;

 private:
  std::map<Ident, Integer> bindings_;
  std::optional<Integer> default_ = Integer{0};
};

}  // namespace imp
