// Acceptance checks: one PASS/FAIL line per criterion; exit status 1 if any
// criterion fails.

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "imp/compiler.hpp"
#include "imp/difftest.hpp"
#include "imp/hoare.hpp"
#include "imp/optim.hpp"
#include "imp/parser.hpp"
#include "imp/printer.hpp"
#include "imp/semantics.hpp"
#include "imp/vm.hpp"

using namespace imp;

namespace {

const std::filesystem::path kSource = IMP_SOURCE_DIR;

const char* kEuclidAnnotated =
    "r := a; q := 0;"
    "while b < r + 1 invariant { r >= 0 && b > 0 && a = b * q + r } do"
    "  r := r - b; q := q + 1 done";

struct Check {
  bool ok = true;
  std::vector<std::string> notes;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back("failed: " + what);
    }
  }
  void note(const std::string& what) { notes.push_back(what); }
};

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Cmd euclid() { return erase(parse_program(kEuclidAnnotated)); }

bool equivalent_in_box(const Assertion& p, const Assertion& q, const std::vector<Ident>& vars,
                       int box) {
  std::vector<int> v(vars.size(), -box);
  for (;;) {
    State s;
    for (std::size_t i = 0; i < vars.size(); ++i) s.set(vars[i], v[i]);
    if (eval_assertion(p, s) != eval_assertion(q, s)) return false;
    std::size_t i = 0;
    while (i < v.size() && v[i] == box) v[i++] = -box;
    if (i == v.size()) return true;
    ++v[i];
  }
}

std::string summary(const Report& r) {
  std::string out = r.campaign + " " + std::to_string(r.passed) + "/" + std::to_string(r.cases);
  for (const auto& [k, v] : r.stats) out += " " + k + "=" + std::to_string(v);
  return out;
}

Check criterion1() {
  Check c;
  State s;
  s.set("x", 12);
  auto v = eval_expr(s, eadd(evar("x"), econst(1)));
  c.expect(v && *v == 13, "x + 1 in {x=12} is 13");
  return c;
}

Check criterion2() {
  Check c;
  const Code code{instr::Var{"x"}, instr::Const{1}, instr::Add{}, instr::SetVar{"x"},
                  instr::Branch{-5}};
  State s12, s13;
  s12.set("x", 12);
  s13.set("x", 13);
  auto stack = [](std::initializer_list<long> top_first) {
    std::vector<Integer> out;
    for (long v : top_first) out.insert(out.begin(), Integer(v));
    return out;
  };
  const std::vector<MachineState> expected{
      {1, stack({12}), s12}, {2, stack({1, 12}), s12}, {3, stack({13}), s12},
      {4, stack({}), s13},   {0, stack({}), s13}};
  MachineState m{0, {}, s12};
  for (std::size_t i = 0; i < expected.size(); ++i) {
    auto next = vm_step(code, m);
    c.expect(next.has_value(), "transition " + std::to_string(i + 1) + " exists");
    if (!next) return c;
    m = *next;
    c.expect(m == expected[i], "transition " + std::to_string(i + 1) + " gives pc " +
                                   std::to_string(expected[i].pc) + " stack " +
                                   expected[i].stack_string() + " store " +
                                   expected[i].store.to_string());
  }
  return c;
}

Check criterion3() {
  Check c;
  const Assertion pre = parse_assertion("a >= 0 && b > 0");
  const Assertion post = parse_assertion("q = a / b");
  auto vcs = vcgen(pre, parse_program(kEuclidAnnotated), post);
  c.expect(vcs.size() == 3, "exactly 3 VCs (got " + std::to_string(vcs.size()) + ")");
  const char* displayed[] = {
      "a >= 0 && b > 0 -> a >= 0 && b > 0 && a = b * 0 + a",
      "!(b < r + 1) && r >= 0 && b > 0 && a = b * q + r -> q = a / b",
      "b < r + 1 && r >= 0 && b > 0 && a = b * q + r -> "
      "r - b >= 0 && b > 0 && a = b * (q + 1) + (r - b)"};
  for (std::size_t i = 0; i < 3 && i < vcs.size(); ++i) {
    c.expect(equivalent_in_box(vcs[i].formula, parse_assertion(displayed[i]),
                               {"a", "b", "q", "r"}, 8),
             "VC " + std::to_string(i + 1) + " equivalent to the displayed implication");
  }
  c.expect(!find_counterexample(vcs, 8), "no counterexample in [-8, 8]^4");

  // Planted corruption: drop "b > 0" from the invariant (loop measured by r).
  Contract bad =
      extract_contract(parse_program(read_file(kSource / "tests/data/euclid_bad_invariant.imp")));
  auto partial = vcgen(bad.pre, bad.body, bad.post);
  auto total = partial;
  for (auto& vc : termination_vcs(bad.body)) total.push_back(vc);
  auto cex = find_counterexample(total, 8);
  c.expect(cex.has_value(), "corrupted invariant yields a counterexample in the box");
  if (cex) c.note("corrupted: " + cex->vc.origin + " fails at " + cex->valuation_string());
  if (!find_counterexample(partial, 8)) {
    c.note("corrupted: the 3 partial-correctness VCs alone stay valid (loop exit forces b >= r+1 > 0)");
  }
  return c;
}

Check criterion4() {
  Check c;
  const std::string got = to_string(dce(euclid(), {}));
  c.expect(got == "r := a; skip; while b < r + 1 do r := r - b; skip done",
           "dce(Euclid, {}) printed as expected, got `" + got + "`");
  c.expect(dce(euclid(), VarSet{"q"}) == euclid(), "dce(Euclid, {q}) unchanged");
  return c;
}

Check criterion5() {
  Check c;
  GenConfig cfg;
  Report sem = check_semantics_agreement(cfg, 500);
  c.expect(sem.cases == 500 && sem.stats["mismatch"] == 0 && sem.ok(), "500 programs agree");
  c.note(summary(sem));
  Report mono = check_interp_monotonicity(cfg, 1000);
  c.expect(mono.cases == 1000 && mono.ok(), "monotonicity on 1000 quadruples");
  c.note(summary(mono));
  return c;
}

Check criterion6() {
  Check c;
  GenConfig cfg;
  Report comp = check_compiler(cfg, 500);
  c.expect(comp.cases == 500 && comp.ok(), "500 programs simulate");
  c.note(summary(comp));
  Report expr = check_expr_compilation(cfg, 1000);
  c.expect(expr.cases == 1000 && expr.ok(), "bracketed expression lemma on 1000 instances");
  c.note(summary(expr));
  return c;
}

Check criterion7() {
  Check c;
  GenConfig cfg;
  Report lw = check_live_while(cfg, 1000);
  c.expect(lw.cases == 1000 && lw.ok(), "live_while inclusions on 1000 instances");
  c.note(summary(lw));
  Report d = check_dce(cfg, 300);
  c.expect(d.cases == 300 && d.ok(), "dce agreement on 300 instances");
  c.note(summary(d));
  c.expect(live(euclid(), VarSet{"q"}) == VarSet{"a", "b"}, "live(Euclid, {q}) = {a, b}");
  return c;
}

Check criterion8() {
  Check c;
  auto corpus = load_corpus(kSource / "corpus");
  bool has_euclid = false, has_countdown = false;
  for (const auto& p : corpus) {
    has_euclid |= p.name == "euclid";
    has_countdown |= p.name == "countdown" && all_loops_measured(p.contract.body);
  }
  c.expect(corpus.size() >= 5 && has_euclid && has_countdown,
           "corpus has >= 5 programs incl. euclid and a measured countdown");
  Report r = check_hoare(corpus, 8, 200);
  c.expect(r.ok() && r.stats["hard-failures"] == 0, "every verified program passes its runs");
  c.expect(r.stats["verified"] + r.stats["excluded"] == corpus.size(), "all programs classified");
  c.expect(r.stats["runs"] == 200 * r.stats["verified"], "200 runs per verified program");
  c.note(summary(r));
  return c;
}

Check criterion9() {
  Check c;
  GenConfig cfg;
  std::size_t mismatches = 0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    Rng rng(derive_seed(cfg.seed, i));
    Cmd p = gen_program(cfg, rng);
    if (parse_cmd(to_string(p)) != p) ++mismatches;
  }
  for (const auto& entry : std::filesystem::directory_iterator(kSource / "corpus")) {
    AnnCmd a = parse_program(read_file(entry.path()));
    if (parse_program(to_string(a)) != a) ++mismatches;
  }
  c.expect(mismatches == 0, "round trip on 1000 generated programs and the corpus");

  std::vector<std::function<std::string()>> campaigns = {
      [&] { return check_semantics_agreement(cfg, 200).dump(); },
      [&] { return check_interp_monotonicity(cfg, 200).dump(); },
      [&] { return check_compiler(cfg, 200).dump(); },
      [&] { return check_expr_compilation(cfg, 200).dump(); },
      [&] { return check_bool_compilation(cfg, 200).dump(); },
      [&] { return check_bracketed_commands(cfg, 200).dump(); },
      [&] { return check_dce(cfg, 200, kDefaultInterpFuel, 2).dump(); },
      [&] { return check_live_while(cfg, 200).dump(); },
      [&] { return check_hoare(load_corpus(kSource / "corpus"), 8, 20).dump(); },
  };
  for (std::size_t i = 0; i < campaigns.size(); ++i) {
    c.expect(campaigns[i]() == campaigns[i](),
             "campaign " + std::to_string(i) + " report identical on rerun");
  }
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Check()>>> criteria = {
      {"expression evaluation", criterion1},
      {"VM golden trace", criterion2},
      {"Euclid VCs and planted invariant bug", criterion3},
      {"dead-code elimination on Euclid", criterion4},
      {"semantics property suite", criterion5},
      {"compiler property suite", criterion6},
      {"optimization property suite", criterion7},
      {"Hoare corpus soundness", criterion8},
      {"round trip and determinism", criterion9},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.ok = false;
      c.note(std::string("exception: ") + e.what());
    }
    std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << i + 1 << ": "
              << criteria[i].first << "\n";
    for (const auto& n : c.notes) std::cout << "    " << n << "\n";
    if (!c.ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
