// imp: command-line front end for the IMP toolchain.

#include <unistd.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "imp/compiler.hpp"
#include "imp/difftest.hpp"
#include "imp/hoare.hpp"
#include "imp/optim.hpp"
#include "imp/parser.hpp"
#include "imp/printer.hpp"
#include "imp/semantics.hpp"
#include "imp/vm.hpp"

namespace {

using namespace imp;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool color_enabled() {
  const char* env = std::getenv("IMP_COLOR");
  if (env && std::string(env) == "0") return false;
  return isatty(STDERR_FILENO) != 0;
}

void diag(const std::string& label, const std::string& msg) {
  if (color_enabled()) {
    std::cerr << "\033[1;31m" << label << "\033[0m: " << msg << "\n";
  } else {
    std::cerr << label << ": " << msg << "\n";
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

Ident ident_arg(const std::string& text) {
  if (!Ident::is_valid(text)) throw UsageError("invalid identifier `" + text + "`");
  return Ident(text);
}

// k=v,... on top of `base`
State parse_store(const std::string& text, State base) {
  for (const auto& item : split(text, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("expected k=v in --store, got `" + item + "`");
    Ident x = ident_arg(item.substr(0, eq));
    const std::string value = item.substr(eq + 1);
    try {
      base.set(x, Integer(value));
    } catch (const std::exception&) {
      throw UsageError("invalid integer `" + value + "` in --store");
    }
  }
  return base;
}

// Program body with a leading precondition / trailing postcondition removed.
Cmd load_body(const std::string& file) {
  return erase(extract_contract(parse_program(read_file(file))).body);
}

void print_bindings(const State& s) {
  for (const auto& [x, v] : s.bindings()) std::cout << x.name() << "=" << v << "\n";
}

int cmd_run(const std::string& file, std::uint64_t fuel, const std::string& mode_name,
            const std::string& engine, bool trace, const std::string& store) {
  EvalMode mode = EvalMode::Math;
  if (mode_name == "wrap32") mode = EvalMode::Wrap32;
  else if (mode_name == "strict") mode = EvalMode::Strict;
  const Cmd c = load_body(file);
  const State s = parse_store(store, mode == EvalMode::Strict ? State::partial() : State());

  if (engine == "interp") {
    Res r = interp(fuel, c, s, mode);
    if (!r.is_value()) {
      diag("result", r.to_string());
      return kCheckFailed;
    }
    print_bindings(r.state());
    return kOk;
  }

  SmallStepRun run = run_small_step(c, s, fuel, mode, trace);
  for (const auto& config : run.trace) {
    std::cout << "# " << config.state.to_string() << " | " << to_string(config.cmd) << "\n";
  }
  if (engine == "both") {
    Classification cl = classify(c, s, fuel, mode);
    if (!cl.agreed) {
      diag("mismatch", cl.discrepancy);
      return kCheckFailed;
    }
  }
  if (const auto* t = std::get_if<outcome::Terminated>(&run.outcome)) {
    print_bindings(t->state);
    return kOk;
  }
  diag("result", describe(run.outcome));
  return kCheckFailed;
}

int cmd_compile(const std::string& file, const std::string& out) {
  const Cmd c = load_body(file);
  write_output(out, print_code(compile_program(c)));
  return kOk;
}

int cmd_vm_run(const std::string& file, const std::string& store, std::uint64_t fuel,
               bool trace, bool wrap32) {
  const Code code = parse_code(read_file(file));
  MachineState m{0, {}, parse_store(store, State())};
  VmRun run = vm_run(code, m, fuel, wrap32 ? VmArith::Wrap32 : VmArith::Math, trace);
  for (const auto& st : run.trace) {
    std::cout << "# pc=" << st.pc << " stack=" << st.stack_string()
              << " store=" << st.store.to_string() << "\n";
  }
  if (const auto* h = std::get_if<vm_outcome::Halted>(&run.outcome)) {
    print_bindings(h->store);
    return kOk;
  }
  diag("vm", describe(run.outcome));
  return kCheckFailed;
}

int cmd_vcgen(const std::string& file, std::int64_t box, const std::string& smtlib,
              bool termination) {
  const Contract contract = extract_contract(parse_program(read_file(file)));
  std::vector<VC> vcs = vcgen(contract.pre, contract.body, contract.post);
  if (termination) {
    auto extra = termination_vcs(contract.body);
    vcs.insert(vcs.end(), extra.begin(), extra.end());
  }
  if (!smtlib.empty()) write_output(smtlib, export_smtlib(vcs));
  bool all_ok = true;
  for (std::size_t i = 0; i < vcs.size(); ++i) {
    std::cout << "[" << i + 1 << "] " << vcs[i].origin << "\n";
    std::cout << "    " << to_string(simplify(vcs[i].formula)) << "\n";
    auto cex = find_counterexample({vcs[i]}, box);
    if (cex) {
      all_ok = false;
      std::cout << "    counterexample: " << cex->valuation_string() << "\n";
    } else {
      std::cout << "    valid-in-box\n";
    }
  }
  std::cout << vcs.size() << " VCs, " << (all_ok ? "all valid-in-box" : "counterexample found")
            << " (box " << box << ")\n";
  return all_ok ? kOk : kCheckFailed;
}

int cmd_dce(const std::string& file, const std::string& live_list) {
  const Cmd c = load_body(file);
  VarSet live_out;
  for (const auto& name : split(live_list, ',')) live_out.insert(ident_arg(name));
  std::cout << "live-in: " << format_varset(live(c, live_out)) << "\n";
  std::cout << to_string(dce(c, live_out)) << "\n";
  return kOk;
}

struct DifftestOptions {
  std::string campaign;
  std::uint64_t seed = 1;
  std::size_t cases = 500;
  std::size_t max_depth = 4;
  std::uint64_t fuel = kDefaultInterpFuel;
  std::uint64_t vm_fuel = kDefaultVmFuel;
  std::size_t live_out_samples = 1;
  std::string corpus = "corpus";
  std::int64_t box = 8;
  std::size_t samples = 200;
  std::string out;
};

int cmd_difftest(const DifftestOptions& o) {
  GenConfig cfg;
  cfg.seed = o.seed;
  cfg.max_depth = o.max_depth;
  Report r;
  if (o.campaign == "semantics") {
    r = check_semantics_agreement(cfg, o.cases, o.fuel);
  } else if (o.campaign == "compiler") {
    r = check_compiler(cfg, o.cases, o.fuel, o.vm_fuel);
  } else if (o.campaign == "dce") {
    r = check_dce(cfg, o.cases, o.fuel, o.live_out_samples);
  } else {
    r = check_hoare(load_corpus(o.corpus), o.box, o.samples, o.fuel, o.seed);
  }
  write_output(o.out, r.dump() + "\n");
  if (!r.ok()) diag("difftest", std::to_string(r.failed) + " failing case(s)");
  return r.ok() ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"IMP toolchain: interpreter, verifier, compiler, optimizer"};
  app.require_subcommand(1);

  std::string file, store, out, smtlib, live_list;
  std::uint64_t fuel = 0;
  std::string mode = "math", engine = "interp";
  bool trace = false, termination = false, wrap32 = false;
  std::int64_t box = 8;

  auto* run = app.add_subcommand("run", "execute a program and print final bindings");
  run->add_option("FILE", file, "program")->required();
  run->add_option("--fuel", fuel, "interpreter depth / small-step budget")->default_val(kDefaultInterpFuel);
  run->add_option("--mode", mode)->check(CLI::IsMember({"math", "wrap32", "strict"}));
  run->add_option("--engine", engine)->check(CLI::IsMember({"interp", "smallstep", "both"}));
  run->add_option("--store", store, "initial store k=v,...");
  run->add_flag("--trace", trace, "print small-step configurations");

  auto* compile = app.add_subcommand("compile", "emit VM code");
  compile->add_option("FILE", file)->required();
  compile->add_option("-o", out, "output file");

  auto* vmrun = app.add_subcommand("vm-run", "execute VM code");
  vmrun->add_option("CODEFILE", file)->required();
  vmrun->add_option("--store", store, "initial store k=v,...");
  vmrun->add_option("--fuel", fuel)->default_val(kDefaultVmFuel);
  vmrun->add_flag("--trace", trace);
  vmrun->add_flag("--wrap32", wrap32, "32-bit wrapping arithmetic");

  auto* vc = app.add_subcommand("vcgen", "print verification conditions and discharge them");
  vc->add_option("FILE", file)->required();
  vc->add_option("--box", box, "search box [-B, B]")->default_val(8)->check(CLI::Range(0, 1000));
  vc->add_option("--smtlib", smtlib, "write an SMT-LIB2 script");
  vc->add_flag("--termination", termination, "add measure VCs");

  auto* dce_cmd = app.add_subcommand("dce", "liveness and dead-code elimination");
  dce_cmd->add_option("FILE", file)->required();
  dce_cmd->add_option("--live", live_list, "live-out set x,y,... (empty for none)")
      ->required()
      ->expected(0, 1);

  DifftestOptions dt;
  auto* diff = app.add_subcommand("difftest", "run a differential-testing campaign");
  diff->add_option("CAMPAIGN", dt.campaign)
      ->required()
      ->check(CLI::IsMember({"semantics", "compiler", "dce", "hoare"}));
  diff->add_option("--seed", dt.seed);
  diff->add_option("--cases", dt.cases);
  diff->add_option("--max-depth", dt.max_depth);
  diff->add_option("--fuel", dt.fuel);
  diff->add_option("--vm-fuel", dt.vm_fuel);
  diff->add_option("--live-out-samples", dt.live_out_samples);
  diff->add_option("--corpus", dt.corpus, "hoare corpus directory");
  diff->add_option("--box", dt.box)->check(CLI::Range(0, 1000));
  diff->add_option("--samples", dt.samples);
  diff->add_option("-o,--out", dt.out, "report file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*run) return cmd_run(file, fuel, mode, engine, trace, store);
    if (*compile) return cmd_compile(file, out);
    if (*vmrun) return cmd_vm_run(file, store, fuel, trace, wrap32);
    if (*vc) return cmd_vcgen(file, box, smtlib, termination);
    if (*dce_cmd) return cmd_dce(file, live_list);
    if (*diff) return cmd_difftest(dt);
  } catch (const ParseError& e) {
    diag("parse error", e.what());
    return kUsage;
  } catch (const UsageError& e) {
    diag("error", e.what());
    return kUsage;
  } catch (const std::invalid_argument& e) {
    diag("error", e.what());
    return kUsage;
  } catch (const BudgetError& e) {
    diag("error", e.what());
    return kCheckFailed;
  }
  return kUsage;
}
