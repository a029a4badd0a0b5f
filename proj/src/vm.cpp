#include "imp/vm.hpp"

#include <charconv>
#include <limits>
#include <sstream>

#include "imp/box.hpp"
#include "imp/parser.hpp"

namespace imp {

std::string MachineState::stack_string() const {
  std::string out = "[";
  for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
    if (it != stack.rbegin()) out += ", ";
    out += it->str();
  }
  return out + "]";
}

namespace {

Integer arith_result(VmArith arith, Integer n) {
  return arith == VmArith::Wrap32 ? normalize32(n) : n;
}

// Branch target; an overflowing target is pinned to a (stuck) negative pc.
std::int64_t jump(std::int64_t fallthrough, std::int64_t offset) {
  std::int64_t target = 0;
  if (__builtin_add_overflow(fallthrough, offset, &target)) {
    return std::numeric_limits<std::int64_t>::min();
  }
  return target;
}

// Pops n2 (top) then n1.
bool pop2(std::vector<Integer>& stack, Integer& n1, Integer& n2) {
  if (stack.size() < 2) return false;
  n2 = std::move(stack.back());
  stack.pop_back();
  n1 = std::move(stack.back());
  stack.pop_back();
  return true;
}

}  // namespace

std::optional<MachineState> vm_step(const Code& code, const MachineState& m,
                                    VmArith arith) {
  if (m.pc < 0 || m.pc >= static_cast<std::int64_t>(code.size())) {
    return std::nullopt;
  }
  MachineState next = m;
  const std::int64_t fallthrough = m.pc + 1;
  next.pc = fallthrough;
  Integer n1, n2;
  const bool ok = std::visit(
      overloaded{
          [&](const instr::Const& i) {
            next.stack.push_back(arith_result(arith, i.value));
            return true;
          },
          [&](const instr::Var& i) {
            next.stack.push_back(
                arith_result(arith, next.store.value_or_zero(i.name)));
            return true;
          },
          [&](const instr::SetVar& i) {
            if (next.stack.empty()) return false;
            next.store.set(i.name, std::move(next.stack.back()));
            next.stack.pop_back();
            return true;
          },
          [&](const instr::Add&) {
            if (!pop2(next.stack, n1, n2)) return false;
            next.stack.push_back(arith_result(arith, n1 + n2));
            return true;
          },
          [&](const instr::Sub&) {
            if (!pop2(next.stack, n1, n2)) return false;
            next.stack.push_back(arith_result(arith, n1 - n2));
            return true;
          },
          [&](const instr::Branch& i) {
            next.pc = jump(fallthrough, i.offset);
            return true;
          },
          [&](const instr::Bne& i) {
            if (!pop2(next.stack, n1, n2)) return false;
            if (n1 != n2) next.pc = jump(fallthrough, i.offset);
            return true;
          },
          [&](const instr::Bge& i) {
            if (!pop2(next.stack, n1, n2)) return false;
            if (n1 >= n2) next.pc = jump(fallthrough, i.offset);
            return true;
          },
          [&](const instr::Halt&) { return false; },
      },
      code[static_cast<std::size_t>(m.pc)]);
  if (!ok) return std::nullopt;
  return next;
}

std::string describe(const VmOutcome& o) {
  return std::visit(
      overloaded{
          [](const vm_outcome::Halted& h) {
            return "halted after " + std::to_string(h.steps) + " steps in " +
                   h.store.to_string();
          },
          [](const vm_outcome::Stuck& s) {
            return std::string("stuck (") +
                   (s.reason == StuckReason::BadPc ? "bad pc"
                                                   : "stack underflow") +
                   ") at pc " + std::to_string(s.at.pc) + " with stack " +
                   s.at.stack_string();
          },
          [](const vm_outcome::OutOfFuel& f) {
            return "out of fuel at pc " + std::to_string(f.at.pc) +
                   " with store " + f.at.store.to_string();
          },
      },
      o);
}

VmRun vm_run(const Code& code, const MachineState& initial, std::uint64_t fuel,
             VmArith arith, bool record_trace) {
  VmRun run{vm_outcome::OutOfFuel{initial}, {}};
  MachineState m = initial;
  if (record_trace) run.trace.push_back(m);
  const auto size = static_cast<std::int64_t>(code.size());
  for (std::uint64_t n = 0;; ++n) {
    const bool in_range = m.pc >= 0 && m.pc < size;
    if (in_range &&
        std::holds_alternative<instr::Halt>(code[static_cast<std::size_t>(m.pc)])) {
      run.outcome = vm_outcome::Halted{std::move(m.store), n};
      return run;
    }
    if (n == fuel) {
      run.outcome = vm_outcome::OutOfFuel{std::move(m)};
      return run;
    }
    auto next = vm_step(code, m, arith);
    if (!next) {
      run.outcome = vm_outcome::Stuck{
          in_range ? StuckReason::StackUnderflow : StuckReason::BadPc,
          std::move(m)};
      return run;
    }
    m = std::move(*next);
    if (record_trace) run.trace.push_back(m);
  }
}

std::string to_string(const Instr& i) {
  return std::visit(
      overloaded{
          [](const instr::Const& c) { return "const " + c.value.str(); },
          [](const instr::Var& v) { return "var " + v.name.name(); },
          [](const instr::SetVar& v) { return "setvar " + v.name.name(); },
          [](const instr::Add&) { return std::string("add"); },
          [](const instr::Sub&) { return std::string("sub"); },
          [](const instr::Branch& b) {
            return "branch " + std::to_string(b.offset);
          },
          [](const instr::Bne& b) { return "bne " + std::to_string(b.offset); },
          [](const instr::Bge& b) { return "bge " + std::to_string(b.offset); },
          [](const instr::Halt&) { return std::string("halt"); },
      },
      i);
}

std::string print_code(const Code& code) {
  std::string out;
  for (const auto& i : code) out += to_string(i) + "\n";
  return out;
}

Code parse_code(std::string_view text) {
  Code code;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    std::istringstream in{std::string(line)};
    std::string op, arg, extra;
    if (!(in >> op)) {
      if (end == text.size()) break;
      continue;
    }
    const std::size_t col = line.find(op) + 1;
    in >> arg;
    if (in >> extra) {
      throw ParseError(line_no, col, {"end of line"}, "`" + extra + "`");
    }
    auto need_arg = [&](const char* what) {
      if (arg.empty()) throw ParseError(line_no, col, {what}, "end of line");
    };
    auto no_arg = [&] {
      if (!arg.empty()) {
        throw ParseError(line_no, col, {"end of line"}, "`" + arg + "`");
      }
    };
    auto offset = [&]() -> std::int64_t {
      need_arg("offset");
      std::int64_t v = 0;
      auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), v);
      if (ec != std::errc{} || ptr != arg.data() + arg.size()) {
        throw ParseError(line_no, col, {"offset"}, "`" + arg + "`");
      }
      return v;
    };
    auto ident = [&]() {
      need_arg("identifier");
      if (!Ident::is_valid(arg)) {
        throw ParseError(line_no, col, {"identifier"}, "`" + arg + "`");
      }
      return Ident(arg);
    };
    if (op == "const") {
      need_arg("integer");
      try {
        code.push_back(instr::Const{Integer(arg)});
      } catch (const std::exception&) {
        throw ParseError(line_no, col, {"integer"}, "`" + arg + "`");
      }
    } else if (op == "var") {
      code.push_back(instr::Var{ident()});
    } else if (op == "setvar") {
      code.push_back(instr::SetVar{ident()});
    } else if (op == "add") {
      no_arg();
      code.push_back(instr::Add{});
    } else if (op == "sub") {
      no_arg();
      code.push_back(instr::Sub{});
    } else if (op == "branch") {
      code.push_back(instr::Branch{offset()});
    } else if (op == "bne") {
      code.push_back(instr::Bne{offset()});
    } else if (op == "bge") {
      code.push_back(instr::Bge{offset()});
    } else if (op == "halt") {
      no_arg();
      code.push_back(instr::Halt{});
    } else {
      throw ParseError(line_no, col,
                       {"const", "var", "setvar", "add", "sub", "branch",
                        "bne", "bge", "halt"},
                       "`" + op + "`");
    }
    if (end == text.size()) break;
  }
  return code;
}

}  // namespace imp
