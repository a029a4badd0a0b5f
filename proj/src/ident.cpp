#include "imp/ident.hpp"

#include <algorithm>
#include <array>
#include <iterator>
#include <stdexcept>

namespace imp {

namespace {

constexpr std::array<std::string_view, 13> kReserved = {
    "skip", "if",        "then",    "else",   "end",  "while", "do",
    "done", "invariant", "measure", "assert", "true", "false"};

bool is_ident_start(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

bool is_ident_char(char c) {
  return is_ident_start(c) || (c >= '0' && c <= '9');
}

}  // namespace

Ident::Ident(std::string name) : name_(std::move(name)) {
  if (!is_valid(name_)) {
    throw std::invalid_argument("invalid identifier `" + name_ + "`");
  }
}

bool Ident::is_reserved(std::string_view word) {
  return std::find(kReserved.begin(), kReserved.end(), word) !=
         kReserved.end();
}

bool Ident::is_valid(std::string_view name) {
  if (name.empty() || !is_ident_start(name.front())) return false;
  if (!std::all_of(name.begin(), name.end(), is_ident_char)) return false;
  return !is_reserved(name);
}

VarSet set_union(const VarSet& a, const VarSet& b) {
  VarSet out = a;
  out.insert(b.begin(), b.end());
  return out;
}

VarSet set_difference(const VarSet& a, const VarSet& b) {
  VarSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::inserter(out, out.end()));
  return out;
}

bool is_subset(const VarSet& sub, const VarSet& super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

std::string format_varset(const VarSet& vars) {
  std::string out = "{";
  bool first = true;
  for (const auto& v : vars) {
    if (!first) out += ", ";
    out += v.name();
    first = false;
  }
  return out + "}";
}

}  // namespace imp
