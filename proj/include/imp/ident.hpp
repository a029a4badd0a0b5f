#pragma once

#include <compare>
#include <functional>
#include <set>
#include <string>
#include <string_view>

namespace imp {

/// A program identifier: `[A-Za-z_][A-Za-z0-9_]*`, not a reserved word.
/// Two identifiers are equal iff their names are byte-equal.
class Ident {
 public:
  /// Throws std::invalid_argument when `name` is not a valid identifier.
  explicit Ident(std::string name);
  Ident(const char* name) : Ident(std::string(name)) {}  // NOLINT

  const std::string& name() const { return name_; }

  static bool is_valid(std::string_view name);
  static bool is_reserved(std::string_view word);

  auto operator<=>(const Ident&) const = default;
  bool operator==(const Ident&) const = default;

 private:
  std::string name_;
};

/// Finite set of identifiers, iterated in name order.
using VarSet = std::set<Ident>;

VarSet set_union(const VarSet& a, const VarSet& b);
VarSet set_difference(const VarSet& a, const VarSet& b);
bool is_subset(const VarSet& sub, const VarSet& super);
std::string format_varset(const VarSet& vars);

}  // namespace imp

template <>
struct std::hash<imp::Ident> {
  std::size_t operator()(const imp::Ident& id) const noexcept {
    return std::hash<std::string>{}(id.name());
  }
};
