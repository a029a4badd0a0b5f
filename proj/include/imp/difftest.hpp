#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "imp/ann_cmd.hpp"
#include "imp/hoare.hpp"
#include "imp/state.hpp"
#include "imp/vm.hpp"

namespace imp {

/// Knobs for random program generation.
struct GenConfig {
  std::uint64_t seed = 1;
  std::size_t max_depth = 4;
  std::vector<Ident> var_pool = {"x", "y", "z", "w"};
  Integer const_min = -10;
  Integer const_max = 10;
  double loop_probability = 0.3;

  /// Throws std::invalid_argument on an empty pool, zero depth, an empty
  /// constant range, or a probability outside [0, 1].
  void validate() const;
  nlohmann::ordered_json to_json() const;
};

/// Deterministic 64-bit generator with portable range reduction (the
/// standard distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [lo, hi].
  std::int64_t range(std::int64_t lo, std::int64_t hi);
  Integer range(const Integer& lo, const Integer& hi);
  /// Uniform in [0, 1).
  double unit();
  bool chance(double p) { return unit() < p; }
  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(range(0, static_cast<std::int64_t>(n) - 1));
  }

 private:
  std::mt19937_64 engine_;
};

/// Seed for the `index`-th case of a campaign seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Random program, deterministic in `cfg`. Sequences nest to the right.
/// Most loops follow a terminating counter pattern:
/// `while c < k do body; k := k - 1 done` where `body` never assigns `k`.
Cmd gen_program(const GenConfig& cfg);
Cmd gen_program(const GenConfig& cfg, Rng& rng);
Expr gen_expr(const GenConfig& cfg, Rng& rng, std::size_t depth);
BoolExpr gen_bool(const GenConfig& cfg, Rng& rng);
/// Total state binding every pool variable to a constant in range.
State gen_state(const GenConfig& cfg, Rng& rng);

/// Greedy shrinking: repeatedly replaces a command subtree by `skip` or an
/// expression subtree by `0` while `still_fails` holds.
Cmd shrink(const Cmd& c, const std::function<bool(const Cmd&)>& still_fails);

struct Failure {
  std::size_t case_index;
  std::string program;
  nlohmann::ordered_json detail;
};

/// Result of one campaign. Serializes to
/// {campaign, cfg, cases, passed, failed, stats, failures, warnings}.
struct Report {
  std::string campaign;
  nlohmann::ordered_json cfg;
  std::size_t cases = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::map<std::string, std::size_t> stats;
  std::vector<Failure> failures;
  std::vector<nlohmann::ordered_json> warnings;

  bool ok() const { return failed == 0; }
  nlohmann::ordered_json to_json() const;
  std::string dump() const { return to_json().dump(2); }
};

inline constexpr std::uint64_t kDefaultInterpFuel = 2000;
inline constexpr std::uint64_t kDefaultVmFuel = 200000;

struct Case {
  Cmd program;
  State state;
};

/// Interpreter vs small-step agreement on generated programs.
Report check_semantics_agreement(const GenConfig& cfg, std::size_t cases,
                                 std::uint64_t fuel = kDefaultInterpFuel);
Report check_semantics_agreement(const std::vector<Case>& cases,
                                 std::uint64_t fuel = kDefaultInterpFuel);

/// interp(n) below interp(m) for sampled n <= m <= max_fuel.
Report check_interp_monotonicity(const GenConfig& cfg, std::size_t samples,
                                 std::uint64_t max_fuel = 200);

/// Interpreter vs compiled code on the VM.
Report check_compiler(const GenConfig& cfg, std::size_t cases,
                      std::uint64_t fuel = kDefaultInterpFuel,
                      std::uint64_t vm_fuel = kDefaultVmFuel);
Report check_compiler(const std::vector<Case>& cases,
                      std::uint64_t fuel = kDefaultInterpFuel,
                      std::uint64_t vm_fuel = kDefaultVmFuel);

/// Bracketed-code lemmas for expressions and conditions: running
/// C1; code; C2 from pc |C1| with random C1, C2, stacks and stores.
Report check_expr_compilation(const GenConfig& cfg, std::size_t samples);
Report check_bool_compilation(const GenConfig& cfg, std::size_t samples);

/// Bracketed forward simulation for commands: whenever the interpreter
/// terminates, C1; comp(c); C2 goes from pc |C1| to |C1| + |comp(c)| with
/// the same stack and the interpreter's final store.
Report check_bracketed_commands(const GenConfig& cfg, std::size_t cases,
                                std::uint64_t fuel = kDefaultInterpFuel,
                                std::uint64_t vm_fuel = kDefaultVmFuel);

/// Forward simulation of dead-code elimination under agreement on the
/// live-in set. One instance per (case, sampled live-out set).
Report check_dce(const GenConfig& cfg, std::size_t cases,
                 std::uint64_t fuel = kDefaultInterpFuel,
                 std::size_t live_out_samples = 1);

/// The three inclusions characterizing liveness of loops, on random loops
/// and live-out sets.
Report check_live_while(const GenConfig& cfg, std::size_t samples);

/// A named program with pre/postcondition, as found in the corpus.
struct AnnotatedProgram {
  std::string name;
  Contract contract;
};

/// Loads every `*.imp` file of `dir` (sorted by file name).
std::vector<AnnotatedProgram> load_corpus(const std::filesystem::path& dir);

/// Verification-condition box check followed by sampled runs from
/// precondition states. Programs with a counterexample in the box are
/// excluded from the semantic phase (reported in stats, not as failures).
Report check_hoare(const std::vector<AnnotatedProgram>& corpus,
                   std::int64_t box, std::size_t samples,
                   std::uint64_t fuel = kDefaultInterpFuel,
                   std::uint64_t seed = 1);

}  // namespace imp
