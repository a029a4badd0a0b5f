#include "imp/state.hpp"

namespace imp {

const char* to_string(EvalMode mode) {
  switch (mode) {
    case EvalMode::Math: return "math";
    case EvalMode::Wrap32: return "wrap32";
    case EvalMode::Strict: return "strict";
  }
  return "?";
}

State::State(std::map<Ident, Integer> bindings,
             std::optional<Integer> default_value)
    : bindings_(std::move(bindings)), default_(std::move(default_value)) {}

std::optional<Integer> State::lookup(const Ident& x) const {
  auto it = bindings_.find(x);
  if (it != bindings_.end()) return it->second;
  return default_;
}

Integer State::value_or_zero(const Ident& x) const {
  return lookup(x).value_or(Integer{0});
}

State State::updated(const Ident& x, Integer value) const {
  State out = *this;
  out.set(x, std::move(value));
  return out;
}

void State::set(const Ident& x, Integer value) {
  bindings_.insert_or_assign(x, std::move(value));
}

bool State::operator==(const State& other) const {
  if (default_ != other.default_) return false;
  for (const auto& [x, v] : bindings_) {
    if (other.lookup(x) != v) return false;
  }
  for (const auto& [x, v] : other.bindings_) {
    if (lookup(x) != v) return false;
  }
  return true;
}

std::string State::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [x, v] : bindings_) {
    if (!first) out += ", ";
    out += x.name() + "=" + v.str();
    first = false;
  }
  return out + "}";
}

}  // namespace imp
