#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "qpflow/domain.hpp"
#include "qpflow/rational.hpp"
#include "qpflow/run.hpp"

namespace {

struct Flags {
  std::string config_path;
  std::string preset;
  std::uint64_t seed = 0;
  std::string domain;
  std::string initial;
  std::int64_t origin = 0;
  std::string spins;
  std::string act;
  int alt = 0;
  std::int64_t horizon = 0;
  std::string out_dir;
  double grid_step = 0.01;
  double tolerance = 0.001;
  int runs = 1;
  int test_functions = 20;
  std::vector<std::string> times;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quasi-particle flows: TASEP / spin-pair / Burgers simulation "
               "and verification"};
  app.require_subcommand(1);

  Flags f;
  std::vector<std::pair<CLI::App*, qpflow::Mode>> subs;
  auto add_mode = [&](const char* name, const char* desc, qpflow::Mode mode) {
    CLI::App* s = app.add_subcommand(name, desc);
    s->add_option("--config", f.config_path, "JSON config file");
    s->add_option("--seed", f.seed, "noise field seed");
    s->add_option("--domain", f.domain,
                  "ring:L or line:x_min:x_max:TT (T = tail bit)");
    s->add_option("--preset", f.preset, "figure1 or alternating");
    s->add_option("--initial", f.initial, "occupancy literal over {0,1}");
    s->add_option("--origin", f.origin, "site of the leftmost literal char");
    s->add_option("--spins", f.spins, "spin literal over {+,-,0}");
    s->add_option("--act", f.act, "activation literal over {0,1}");
    s->add_option("--alt", f.alt, "alternation flag for all-zero spins")
        ->check(CLI::Range(0, 1));
    s->add_option("--horizon", f.horizon, "number of time steps");
    s->add_option("--out", f.out_dir, "output directory (default: stdout)");
    s->add_option("--grid-step", f.grid_step, "quadrature cell size");
    s->add_option("--tolerance", f.tolerance, "weak-residual tolerance");
    s->add_option("--runs", f.runs, "ensemble members / repeated checks");
    s->add_option("--test-functions", f.test_functions,
                  "bump test functions per trajectory");
    s->add_option("--times", f.times, "export times as rationals, e.g. 1/2");
    subs.emplace_back(s, mode);
    return s;
  };

  add_mode("simulate-tasep", "run the exclusion process, one CSV row per step",
           qpflow::Mode::SimulateTasep);
  add_mode("simulate-abdf", "run the spin/activation model, one CSV row per step",
           qpflow::Mode::SimulateAbdf);
  add_mode("simulate-burgers", "build the interpolating field and export profiles",
           qpflow::Mode::SimulateBurgers);
  add_mode("verify-conjugacy", "check the pair map intertwines the two flows",
           qpflow::Mode::VerifyConjugacy);
  add_mode("verify-bijection", "enumerate a ring and check the pair map is onto",
           qpflow::Mode::VerifyBijection);
  add_mode("verify-weak", "certify edges exactly and quadrature residuals",
           qpflow::Mode::VerifyWeak);
  add_mode("export-profile", "print breakpoint profiles at chosen times",
           qpflow::Mode::ExportProfile);
  add_mode("ensemble", "aggregate statistics and pass rates over many seeds",
           qpflow::Mode::Ensemble);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return qpflow::kExitConfigError;
  }

  CLI::App* sub = app.get_subcommands().front();
  qpflow::RunConfig config;
  try {
    if (sub->count("--config")) {
      std::ifstream in(f.config_path, std::ios::binary);
      if (!in) {
        std::cerr << "i/o error: cannot read " << f.config_path << "\n";
        return qpflow::kExitIoError;
      }
      std::ostringstream text;
      text << in.rdbuf();
      config = qpflow::parse_run_config(text.str());
    }
    for (const auto& [s, mode] : subs)
      if (s == sub) config.mode = mode;

    if (sub->count("--seed")) config.seed = f.seed;
    if (sub->count("--domain")) config.domain = qpflow::parse_domain(f.domain);
    if (sub->count("--origin")) config.origin = f.origin;
    if (sub->count("--horizon")) config.horizon = f.horizon;
    if (sub->count("--out")) config.out_dir = f.out_dir;
    if (sub->count("--grid-step")) config.grid_step = f.grid_step;
    if (sub->count("--tolerance")) config.tolerance = f.tolerance;
    if (sub->count("--runs")) config.n_runs = f.runs;
    if (sub->count("--test-functions")) config.n_test_functions = f.test_functions;
    if (sub->count("--times")) {
      config.times.clear();
      for (const std::string& t : f.times)
        config.times.push_back(qpflow::parse_rational(t));
    }

    const bool cli_initial = sub->count("--initial") || sub->count("--spins") ||
                             sub->count("--act") || sub->count("--alt");
    if (sub->count("--preset")) {
      if (cli_initial)
        throw qpflow::ConfigError(
            "--preset conflicts with --initial/--spins/--act/--alt");
      if (f.preset == "figure1" &&
          (sub->count("--seed") || sub->count("--domain") || sub->count("--origin")))
        throw qpflow::ConfigError("preset 'figure1' pins domain, seed, and origin");
      config.preset = f.preset;
      config.occupancy.clear();
      config.spins.clear();
      config.act.clear();
      config.alt_flag.reset();
      config = qpflow::apply_preset(config);
    } else if (cli_initial) {
      config.preset.clear();
      if (sub->count("--initial")) {
        config.occupancy = f.initial;
        config.spins.clear();
        config.act.clear();
      }
      if (sub->count("--spins")) {
        config.spins = f.spins;
        config.occupancy.clear();
      }
      if (sub->count("--act")) config.act = f.act;
      if (sub->count("--alt")) config.alt_flag = f.alt;
    }
    qpflow::validate_run_config(config);
  } catch (const qpflow::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return qpflow::kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return qpflow::kExitConfigError;
  }

  return qpflow::run(config, std::cout, std::cerr);
}
