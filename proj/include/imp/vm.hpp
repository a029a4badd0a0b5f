#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "imp/state.hpp"

namespace imp {

namespace instr {
struct Const {
  Integer value;
  bool operator==(const Const&) const = default;
};
struct Var {
  Ident name;
  bool operator==(const Var&) const = default;
};
struct SetVar {
  Ident name;
  bool operator==(const SetVar&) const = default;
};
struct Add {
  bool operator==(const Add&) const = default;
};
struct Sub {
  bool operator==(const Sub&) const = default;
};
/// Offsets are relative to the next instruction.
struct Branch {
  std::int64_t offset;
  bool operator==(const Branch&) const = default;
};
struct Bne {
  std::int64_t offset;
  bool operator==(const Bne&) const = default;
};
struct Bge {
  std::int64_t offset;
  bool operator==(const Bge&) const = default;
};
struct Halt {
  bool operator==(const Halt&) const = default;
};
}  // namespace instr

using Instr = std::variant<instr::Const, instr::Var, instr::SetVar, instr::Add,
                           instr::Sub, instr::Branch, instr::Bne, instr::Bge,
                           instr::Halt>;
using Code = std::vector<Instr>;

/// Machine configuration. The stack's top is `stack.back()`.
struct MachineState {
  std::int64_t pc = 0;
  std::vector<Integer> stack;
  State store;

  bool operator==(const MachineState&) const = default;
  /// Stack listed top first, e.g. `[1, 12]`.
  std::string stack_string() const;
};

enum class VmArith { Math, Wrap32 };

/// One transition; nullopt when no rule applies (pc out of range, `halt`, or
/// too few stack operands).
std::optional<MachineState> vm_step(const Code& code, const MachineState& m,
                                    VmArith arith = VmArith::Math);

enum class StuckReason { BadPc, StackUnderflow };

namespace vm_outcome {
struct Halted {
  State store;
  std::uint64_t steps;
};
struct Stuck {
  StuckReason reason;
  MachineState at;
};
struct OutOfFuel {
  MachineState at;
};
}  // namespace vm_outcome

using VmOutcome =
    std::variant<vm_outcome::Halted, vm_outcome::Stuck, vm_outcome::OutOfFuel>;

std::string describe(const VmOutcome& o);

struct VmRun {
  VmOutcome outcome;
  /// Every machine state visited, starting with the initial one. Empty
  /// unless tracing was requested.
  std::vector<MachineState> trace;
};

VmRun vm_run(const Code& code, const MachineState& initial, std::uint64_t fuel,
             VmArith arith = VmArith::Math, bool record_trace = false);

/// Textual code: one instruction per line (`const n`, `var x`, `setvar x`,
/// `add`, `sub`, `branch d`, `bne d`, `bge d`, `halt`); `#` starts a comment.
std::string to_string(const Instr& i);
std::string print_code(const Code& code);
/// Throws ParseError (see parser.hpp) on malformed lines.
Code parse_code(std::string_view text);

}  // namespace imp
