#include "imp/compiler.hpp"

#include "imp/box.hpp"

namespace imp {

namespace {

void append(Code& dst, const Code& src) {
  dst.insert(dst.end(), src.begin(), src.end());
}

std::int64_t length(const Code& c) { return static_cast<std::int64_t>(c.size()); }

void emit_expr(const Expr& e, Code& out) {
  std::visit(overloaded{
                 [&](const expr::Var& v) { out.push_back(instr::Var{v.name}); },
                 [&](const expr::Const& c) {
                   out.push_back(instr::Const{c.value});
                 },
                 [&](const expr::Add& a) {
                   emit_expr(*a.lhs, out);
                   emit_expr(*a.rhs, out);
                   out.push_back(instr::Add{});
                 },
                 [&](const expr::Sub& s) {
                   emit_expr(*s.lhs, out);
                   emit_expr(*s.rhs, out);
                   out.push_back(instr::Sub{});
                 },
             },
             e.node);
}

}  // namespace

Code compile_expr(const Expr& e) {
  Code out;
  emit_expr(e, out);
  return out;
}

Code compile_bool(const BoolExpr& b, std::int64_t offset) {
  Code out;
  emit_expr(b.lhs, out);
  emit_expr(b.rhs, out);
  if (b.op == BoolExpr::Op::Eq) {
    out.push_back(instr::Bne{offset});
  } else {
    out.push_back(instr::Bge{offset});
  }
  return out;
}

Code compile_cmd(const Cmd& c) {
  return std::visit(
      overloaded{
          [](const cmd::Skip&) { return Code{}; },
          [](const cmd::Assign& a) {
            Code out = compile_expr(a.value);
            out.push_back(instr::SetVar{a.target});
            return out;
          },
          [](const cmd::Seq& s) {
            Code out = compile_cmd(*s.first);
            append(out, compile_cmd(*s.second));
            return out;
          },
          [](const cmd::If& i) {
            // B(|C1|+1); C1; branch(|C2|); C2
            Code then_code = compile_cmd(*i.then_branch);
            Code else_code = compile_cmd(*i.else_branch);
            Code out = compile_bool(i.cond, length(then_code) + 1);
            append(out, then_code);
            out.push_back(instr::Branch{length(else_code)});
            append(out, else_code);
            return out;
          },
          [](const cmd::While& w) {
            // B(|C|+1); C; branch(-(|B|+|C|+1))
            Code body = compile_cmd(*w.body);
            Code out = compile_bool(w.cond, length(body) + 1);
            const std::int64_t cond_len = length(out);
            append(out, body);
            out.push_back(instr::Branch{-(cond_len + length(body) + 1)});
            return out;
          },
      },
      c.node);
}

Code compile_program(const Cmd& c) {
  Code out = compile_cmd(c);
  out.push_back(instr::Halt{});
  return out;
}

}  // namespace imp
