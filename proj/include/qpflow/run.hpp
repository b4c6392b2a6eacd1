#ifndef QPFLOW_RUN_HPP
#define QPFLOW_RUN_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qpflow/abdf.hpp"
#include "qpflow/rational.hpp"
#include "qpflow/tasep.hpp"

namespace qpflow {

// Exit-code contract shared by run() and the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitDomainError = 3;
inline constexpr int kExitVerificationFailure = 4;
inline constexpr int kExitIoError = 5;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Mode {
  SimulateTasep,
  SimulateAbdf,
  SimulateBurgers,
  VerifyConjugacy,
  VerifyBijection,
  VerifyWeak,
  ExportProfile,
  Ensemble,
};

Mode parse_mode(const std::string& name);
std::string mode_name(Mode mode);

// One fully specified run.  Exactly one initial-condition source may be set:
// a preset name, an occupancy string, or a spin/act string pair.
struct RunConfig {
  Mode mode = Mode::SimulateTasep;
  std::uint64_t seed = 0;
  Domain domain = Domain::ring(16);

  std::string preset;        // "figure1" or "alternating"
  std::string occupancy;     // 0/1 literal, leftmost char at `origin`
  std::int64_t origin = 0;
  std::string spins;         // +/-/0 literal, aligned with `act`
  std::string act;           // 0/1 literal
  std::optional<int> alt_flag;

  std::int64_t horizon = 0;
  std::string out_dir;       // empty: write to stdout
  double grid_step = 1e-2;
  double tolerance = 1e-3;
  int n_runs = 1;            // ensemble members
  int n_test_functions = 20; // verify-weak bumps per trajectory
  std::vector<Rational> times;  // export-profile times; empty: 0..horizon
};

// JSON schema (all keys optional unless the mode needs them):
//   {"mode": "simulate-tasep", "seed": 1, "domain": "ring:16",
//    "preset": "figure1", "occupancy": "0101", "origin": 0,
//    "spins": "+0-0", "act": "0101", "alt_flag": 1,
//    "horizon": 10, "out": "outdir", "grid_step": 0.01,
//    "tolerance": 0.001, "runs": 100, "test_functions": 20,
//    "times": ["0", "1/2", "1"]}
RunConfig parse_run_config(const std::string& json_text);

// Cross-field sanity checks shared by the JSON and command-line paths.
void validate_run_config(const RunConfig& config);

// The "figure1" preset: ring of 64 sites whose first steps replay the worked
// example rows (seed pinned so the first-step pair creations land on sites
// 4 and 13).  "alternating" is the checkerboard 1010... on the given ring.
RunConfig apply_preset(RunConfig config);

TasepConfig initial_tasep(const RunConfig& config);
AbdfConfig initial_abdf(const RunConfig& config);

// Executes the configured mode, writing outputs under config.out_dir (or to
// `out` when out_dir is empty).  Returns an exit code from the contract
// above rather than throwing, except for std::bad_alloc and the like.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace qpflow

#endif  // QPFLOW_RUN_HPP
