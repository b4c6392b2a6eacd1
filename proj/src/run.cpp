#include "qpflow/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "qpflow/burgers.hpp"
#include "qpflow/noise.hpp"
#include "qpflow/pairmap.hpp"
#include "qpflow/verification.hpp"

namespace qpflow {
namespace {

using nlohmann::json;

// Seed pinned so the figure1 replay fires the step-1 pair creations at
// sites 4 and 13 and routes the boundary particle 1 -> 2 -> 3.
constexpr std::uint64_t kFigure1Seed = 3592;

// Occupancy of the figure1 preset, leftmost character at site 0 of a
// 64-ring: particles at {1,4,6,9,10,11,13}.  Sites 2..15 match the worked
// example row; the extra particle at 1 supplies the one that enters the
// drawn window from the left.
constexpr const char* kFigure1Occupancy = "01001010011101";

std::string checkerboard(std::int64_t n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (std::int64_t i = 0; i < n; i += 2) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

bool has_initial_literal(const RunConfig& c) {
  return !c.occupancy.empty() || !c.spins.empty() || !c.act.empty() ||
         c.alt_flag.has_value();
}

// Uniform double in [0,1) from the top 53 bits; avoids the unspecified
// rounding of uniform_real_distribution so outputs are platform-stable.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

std::vector<std::int8_t> parse_spin_literal(const std::string& s) {
  std::vector<std::int8_t> spins;
  spins.reserve(s.size());
  for (char ch : s) {
    if (ch == '+')
      spins.push_back(1);
    else if (ch == '-')
      spins.push_back(-1);
    else if (ch == '0')
      spins.push_back(0);
    else
      throw ConfigError(std::string("spin literal must use +, -, 0; got '") +
                        ch + "'");
  }
  return spins;
}

json edge_to_json(const EdgeSegment& e) {
  json j;
  j["t_start"] = e.t_start.str();
  j["t_end"] = e.t_end.str();
  j["x0"] = e.x0.str();
  j["slope"] = e.slope;
  j["u_left"] = e.u_left;
  j["u_right"] = e.u_right;
  j["rh_residual"] = rankine_hugoniot_residual(e).str();
  j["lax_entropic"] = lax_entropic(e);
  return j;
}

json config_payload(const RunConfig& c) {
  json j;
  j["seed"] = c.seed;
  j["domain"] = c.domain.describe();
  j["horizon"] = c.horizon;
  if (!c.preset.empty()) j["preset"] = c.preset;
  if (!c.occupancy.empty()) {
    j["occupancy"] = c.occupancy;
    j["origin"] = c.origin;
  }
  if (!c.spins.empty()) j["spins"] = c.spins;
  if (!c.act.empty()) j["act"] = c.act;
  if (c.alt_flag) j["alt_flag"] = *c.alt_flag;
  return j;
}

// Bump test functions for the quadrature check, drawn deterministically
// from the run seed.  Radii keep each bump inside one ring chart and the
// simulated time span.
std::vector<TestFunction> draw_test_functions(const RunConfig& c,
                                              std::uint64_t seed, int count) {
  const double T = static_cast<double>(c.horizon);
  const double span =
      c.domain.is_ring()
          ? static_cast<double>(c.domain.ring_size)
          : static_cast<double>(c.domain.x_max + 1 - c.domain.x_min);
  const double x_lo = c.domain.is_ring() ? 0.0
                                         : static_cast<double>(c.domain.x_min);
  std::mt19937_64 rng(seed ^ 0x9E3779B97F4A7C15ull);
  std::vector<TestFunction> phis;
  phis.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    TestFunction phi;
    phi.r_t = uniform(rng, 0.30, std::min(0.45, T / 2));
    const double rx_hi = std::min(1.5, span / 2);
    phi.r_x = uniform(rng, std::min(0.8, rx_hi / 2), rx_hi);
    phi.t_c = uniform(rng, phi.r_t, T - phi.r_t);
    phi.x_c = uniform(rng, x_lo + phi.r_x, x_lo + span - phi.r_x);
    phis.push_back(phi);
  }
  return phis;
}

int write_text_file(const std::filesystem::path& path, const std::string& text,
                    std::ostream& out, std::ostream& err) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  f.flush();
  if (!f.good()) {
    err << "error: could not write " << path.string() << "\n";
    return kExitIoError;
  }
  out << "wrote " << path.string() << "\n";
  return kExitOk;
}

int emit_report(const RunConfig& config, const std::string& filename,
                const json& report, bool pass, std::ostream& out,
                std::ostream& err) {
  const std::string text = report.dump(2) + "\n";
  if (config.out_dir.empty()) {
    out << text;
  } else {
    std::filesystem::create_directories(config.out_dir);
    const int rc = write_text_file(
        std::filesystem::path(config.out_dir) / filename, text, out, err);
    if (rc != kExitOk) return rc;
  }
  return pass ? kExitOk : kExitVerificationFailure;
}

std::string tasep_csv(const RunConfig& config) {
  NoiseField field(config.seed);
  TasepConfig eta = initial_tasep(config);
  std::ostringstream csv;
  csv << "t";
  for (std::int64_t i = 0; i < eta.domain.size(); ++i)
    csv << "," << eta.domain.site(i);
  csv << "\n";
  for (std::int64_t t = 1; t <= config.horizon; ++t) {
    eta = tasep_step(eta, field, t);
    csv << t;
    for (std::uint8_t v : eta.occ) csv << "," << int(v);
    csv << "\n";
  }
  return csv.str();
}

std::string abdf_csv(const std::vector<AbdfConfig>& rows) {
  std::ostringstream csv;
  csv << "t,spins,act,alt\n";
  for (std::size_t t = 0; t < rows.size(); ++t) {
    const AbdfConfig& cfg = rows[t];
    csv << t << "," << spin_string(cfg) << "," << act_string(cfg) << ",";
    if (cfg.alt_flag) csv << *cfg.alt_flag;
    csv << "\n";
  }
  return csv.str();
}

std::vector<Rational> integer_times(std::int64_t horizon) {
  std::vector<Rational> times;
  times.reserve(static_cast<std::size_t>(horizon) + 1);
  for (std::int64_t t = 0; t <= horizon; ++t) times.emplace_back(t);
  return times;
}

int run_simulate_tasep(const RunConfig& config, std::ostream& out,
                       std::ostream& err) {
  const std::string csv = tasep_csv(config);
  if (config.out_dir.empty()) {
    out << csv;
    return kExitOk;
  }
  std::filesystem::create_directories(config.out_dir);
  return write_text_file(std::filesystem::path(config.out_dir) / "tasep.csv",
                         csv, out, err);
}

int run_simulate_abdf(const RunConfig& config, std::ostream& out,
                      std::ostream& err) {
  NoiseField field(config.seed);
  AbdfConfig cfg = initial_abdf(config);
  std::vector<AbdfConfig> rows;
  for (std::int64_t t = 1; t <= config.horizon; ++t) {
    cfg = abdf_step(cfg, field, t);
    rows.push_back(cfg);
  }
  std::ostringstream csv;
  csv << "t,spins,act,alt\n";
  for (std::int64_t t = 1; t <= config.horizon; ++t) {
    const AbdfConfig& row = rows[static_cast<std::size_t>(t - 1)];
    csv << t << "," << spin_string(row) << "," << act_string(row) << ",";
    if (row.alt_flag) csv << *row.alt_flag;
    csv << "\n";
  }
  if (config.out_dir.empty()) {
    out << csv.str();
    return kExitOk;
  }
  std::filesystem::create_directories(config.out_dir);
  return write_text_file(std::filesystem::path(config.out_dir) / "abdf.csv",
                         csv.str(), out, err);
}

int run_simulate_burgers(const RunConfig& config, std::ostream& out,
                         std::ostream& err) {
  NoiseField field(config.seed);
  const AbdfConfig cfg0 = initial_abdf(config);
  std::vector<BurgersFrame> frames;
  std::vector<AbdfConfig> rows;
  if (config.horizon == 0) {
    frames.push_back(build_frame(cfg0, field, 0));
    rows.push_back(cfg0);
  } else {
    Trajectory traj = trajectory(cfg0, field, config.horizon);
    frames = std::move(traj.frames);
    rows = std::move(traj.configs);
  }
  std::ostringstream profiles;
  write_profile_csv(profiles, frames,
                    integer_times(config.horizon == 0 ? 0 : config.horizon));
  if (config.out_dir.empty()) {
    out << profiles.str();
    return kExitOk;
  }
  std::filesystem::create_directories(config.out_dir);
  const std::filesystem::path dir(config.out_dir);
  int rc = write_text_file(dir / "profiles.csv", profiles.str(), out, err);
  if (rc != kExitOk) return rc;

  json jframes = json::array();
  for (const BurgersFrame& f : frames) jframes.push_back(json::parse(frame_to_json(f)));
  rc = write_text_file(dir / "frames.json", jframes.dump(2) + "\n", out, err);
  if (rc != kExitOk) return rc;

  return write_text_file(dir / "abdf.csv", abdf_csv(rows), out, err);
}

int run_export_profile(const RunConfig& config, std::ostream& out,
                       std::ostream& err) {
  NoiseField field(config.seed);
  const AbdfConfig cfg0 = initial_abdf(config);
  std::vector<Rational> times =
      config.times.empty() ? integer_times(config.horizon) : config.times;
  Rational t_max(0);
  for (const Rational& t : times) {
    if (t < Rational(0))
      throw ConfigError("export times must be non-negative, got " + t.str());
    if (t_max < t) t_max = t;
  }
  const std::int64_t t_ceil =
      t_max.is_integer() ? t_max.floor() : t_max.floor() + 1;
  const std::int64_t span =
      std::max<std::int64_t>(std::max(config.horizon, t_ceil), 1);
  std::vector<BurgersFrame> frames;
  if (config.horizon == 0 && t_max == Rational(0)) {
    frames.push_back(build_frame(cfg0, field, 0));
  } else {
    frames = trajectory(cfg0, field, span).frames;
  }
  std::ostringstream csv;
  write_profile_csv(csv, frames, times);
  if (config.out_dir.empty()) {
    out << csv.str();
    return kExitOk;
  }
  std::filesystem::create_directories(config.out_dir);
  return write_text_file(std::filesystem::path(config.out_dir) / "profiles.csv",
                         csv.str(), out, err);
}

int run_verify_conjugacy(const RunConfig& config, std::ostream& out,
                         std::ostream& err) {
  const TasepConfig eta0 = initial_tasep(config);
  json failures = json::array();
  for (int k = 0; k < config.n_runs; ++k) {
    const std::uint64_t seed = config.seed + static_cast<std::uint64_t>(k);
    NoiseField field(seed);
    const ConjugacyReport rep = conjugacy_check(eta0, field, config.horizon);
    if (!rep.ok) {
      json f;
      f["seed"] = seed;
      f["failed_step"] = rep.failed_step;
      f["reason"] = rep.reason;
      f["config"] = config_payload(config);
      f["config"]["seed"] = seed;
      failures.push_back(f);
    }
  }
  json report;
  report["mode"] = "verify-conjugacy";
  report["runs"] = config.n_runs;
  report["horizon"] = config.horizon;
  report["initial"] = occupancy_string(eta0);
  report["failures"] = failures;
  report["pass"] = failures.empty();
  return emit_report(config, "conjugacy.json", report, failures.empty(), out,
                     err);
}

int run_verify_bijection(const RunConfig& config, std::ostream& out,
                         std::ostream& err) {
  if (!config.domain.is_ring())
    throw ConfigError("verify-bijection needs a ring domain");
  const BijectionReport rep =
      bijection_check(static_cast<int>(config.domain.ring_size));
  json report;
  report["mode"] = "verify-bijection";
  report["L"] = config.domain.ring_size;
  report["configurations"] = rep.configurations;
  report["image_size"] = rep.valid_targets;
  report["pass"] = rep.ok;
  if (!rep.ok) report["reason"] = rep.reason;
  return emit_report(config, "bijection.json", report, rep.ok, out, err);
}

int run_verify_weak(const RunConfig& config, std::ostream& out,
                    std::ostream& err) {
  if (config.horizon < 1) throw ConfigError("verify-weak needs horizon >= 1");
  NoiseField field(config.seed);
  const AbdfConfig cfg0 = initial_abdf(config);
  const Trajectory traj = trajectory(cfg0, field, config.horizon);

  const std::vector<EdgeSegment> edge_list = edges(traj.frames);
  json jedges = json::array();
  bool rh_all_zero = true;
  int lax_violations = 0;
  for (const EdgeSegment& e : edge_list) {
    jedges.push_back(edge_to_json(e));
    if (!(rankine_hugoniot_residual(e) == Rational(0))) rh_all_zero = false;
    if (!lax_entropic(e)) ++lax_violations;
  }

  const std::vector<TestFunction> phis =
      draw_test_functions(config, config.seed, config.n_test_functions);
  json jres = json::array();
  double max_abs = 0.0;
  for (std::size_t i = 0; i < phis.size(); ++i) {
    const TestFunction& phi = phis[i];
    const double r = weak_residual(traj.frames, phi, config.grid_step);
    max_abs = std::max(max_abs, std::abs(r));
    json row;
    row["t_c"] = phi.t_c;
    row["x_c"] = phi.x_c;
    row["r_t"] = phi.r_t;
    row["r_x"] = phi.r_x;
    row["residual"] = r;
    jres.push_back(row);
  }

  const bool pass = rh_all_zero && max_abs <= config.tolerance;
  json report;
  report["mode"] = "verify-weak";
  report["horizon"] = config.horizon;
  report["grid_step"] = config.grid_step;
  report["tolerance"] = config.tolerance;
  report["edges"] = jedges;
  report["rh_all_zero"] = rh_all_zero;
  report["lax_violations"] = lax_violations;
  report["residuals"] = jres;
  report["max_abs_residual"] = max_abs;
  report["pass"] = pass;
  if (!pass) report["config"] = config_payload(config);
  return emit_report(config, "weak.json", report, pass, out, err);
}

struct MemberStats {
  std::uint64_t seed = 0;
  std::int64_t creations = 0;
  std::int64_t annihilations = 0;
  std::string mass;
  std::int64_t isolated_opportunities = 0;
  std::int64_t isolated_creations = 0;
  bool pass = true;
  std::string reason;
};

// One ensemble member: simulate, then certify (edges exact, mass constant,
// reconstruction round-trip, optional quadrature) and collect counts.
MemberStats ensemble_member(const RunConfig& config, std::uint64_t seed) {
  MemberStats st;
  st.seed = seed;
  NoiseField field(seed);
  const AbdfConfig cfg0 = initial_abdf(config);
  const Trajectory traj = trajectory(cfg0, field, config.horizon);

  const Rational mass0 = total_mass(profile(traj.frames.front(), Rational(0)));
  st.mass = mass0.str();

  for (std::size_t t = 0; t < traj.frames.size(); ++t) {
    const BurgersFrame& f = traj.frames[t];
    st.creations += static_cast<std::int64_t>(f.next_arising.size());
    st.annihilations += static_cast<std::int64_t>(f.cls.C.size());
  }

  // Isolated active sites: active z whose landing sites z+-1 cannot receive
  // a competing contribution from z+-2 in the same step, so the created +1
  // appearing at z+1 is exactly the coin event and Bernoulli(1/2).  That
  // needs theta(z+2) in {+1, 0-with-act-0} and theta(z-2) in {-1,
  // 0-with-act-0}; in occupancy terms, the pattern 1,1,0,0 at z-1..z+2.
  const std::int64_t L = cfg0.domain.size();
  if (cfg0.domain.is_ring()) {
    auto at = [L](const std::vector<std::int8_t>& v, std::int64_t i) {
      return v[static_cast<std::size_t>(((i % L) + L) % L)];
    };
    auto act_at = [L](const std::vector<std::uint8_t>& v, std::int64_t i) {
      return v[static_cast<std::size_t>(((i % L) + L) % L)];
    };
    for (std::int64_t t = 0; t < config.horizon; ++t) {
      const AbdfConfig& cur = traj.configs[static_cast<std::size_t>(t)];
      const AbdfConfig& nxt = traj.configs[static_cast<std::size_t>(t + 1)];
      for (std::int64_t z = 0; z < L; ++z) {
        if (cur.act[static_cast<std::size_t>(z)] != 1) continue;
        const std::int8_t right = at(cur.spins, z + 2);
        const std::int8_t left = at(cur.spins, z - 2);
        const bool right_clear =
            right == 1 || (right == 0 && act_at(cur.act, z + 2) == 0);
        const bool left_clear =
            left == -1 || (left == 0 && act_at(cur.act, z - 2) == 0);
        if (!right_clear || !left_clear) continue;
        ++st.isolated_opportunities;
        if (at(nxt.spins, z + 1) == 1) ++st.isolated_creations;
      }
    }
  }

  for (const EdgeSegment& e : edges(traj.frames)) {
    if (!(rankine_hugoniot_residual(e) == Rational(0))) {
      st.pass = false;
      st.reason = "nonzero Rankine-Hugoniot residual";
      return st;
    }
  }
  for (std::int64_t t = 0; t <= config.horizon; ++t) {
    const BurgersFrame& f =
        traj.frames[static_cast<std::size_t>(std::min(t, config.horizon - 1))];
    const Profile p = profile(f, Rational(t));
    if (!(total_mass(p) == mass0)) {
      st.pass = false;
      st.reason = "mass drift at t=" + std::to_string(t);
      return st;
    }
    try {
      const AbdfConfig back = reconstruct(p);
      const AbdfConfig& want = traj.configs[static_cast<std::size_t>(t)];
      if (!(back.spins == want.spins && back.act == want.act &&
            back.alt_flag == want.alt_flag)) {
        st.pass = false;
        st.reason = "reconstruction mismatch at t=" + std::to_string(t);
        return st;
      }
    } catch (const ReconstructError& e) {
      if (!e.ambiguous_vacuum) {
        st.pass = false;
        st.reason = std::string("reconstruction failed at t=") +
                    std::to_string(t) + ": " + e.what();
        return st;
      }
    }
  }
  if (config.n_test_functions > 0) {
    const std::vector<TestFunction> phis =
        draw_test_functions(config, seed, config.n_test_functions);
    for (const TestFunction& phi : phis) {
      const double r = weak_residual(traj.frames, phi, config.grid_step);
      if (std::abs(r) > config.tolerance) {
        st.pass = false;
        st.reason = "weak residual above tolerance";
        return st;
      }
    }
  }
  return st;
}

int run_ensemble(const RunConfig& config, std::ostream& out,
                 std::ostream& err) {
  if (config.n_runs < 1) throw ConfigError("ensemble needs runs >= 1");
  if (config.horizon < 1) throw ConfigError("ensemble needs horizon >= 1");

  json members = json::array();
  std::int64_t creations = 0, annihilations = 0, passed = 0;
  std::int64_t iso_opp = 0, iso_cre = 0;
  json first_failure;
  for (int k = 0; k < config.n_runs; ++k) {
    const MemberStats st =
        ensemble_member(config, config.seed + static_cast<std::uint64_t>(k));
    creations += st.creations;
    annihilations += st.annihilations;
    iso_opp += st.isolated_opportunities;
    iso_cre += st.isolated_creations;
    if (st.pass) ++passed;
    json m;
    m["seed"] = st.seed;
    m["creations"] = st.creations;
    m["annihilations"] = st.annihilations;
    m["mass"] = st.mass;
    m["pass"] = st.pass;
    if (!st.pass) {
      m["reason"] = st.reason;
      if (first_failure.is_null()) {
        first_failure = config_payload(config);
        first_failure["seed"] = st.seed;
      }
    }
    members.push_back(m);
  }

  const double pass_rate =
      static_cast<double>(passed) / static_cast<double>(config.n_runs);
  json aggregate;
  aggregate["creations"] = creations;
  aggregate["annihilations"] = annihilations;
  aggregate["pass_rate"] = pass_rate;
  if (iso_opp > 0) {
    const double rate = static_cast<double>(iso_cre) / static_cast<double>(iso_opp);
    const double sigma = 0.5 / std::sqrt(static_cast<double>(iso_opp));
    json iso;
    iso["opportunities"] = iso_opp;
    iso["creations"] = iso_cre;
    iso["rate"] = rate;
    iso["expected"] = 0.5;
    iso["within_3_sigma"] = std::abs(rate - 0.5) <= 3.0 * sigma;
    aggregate["isolated_active"] = iso;
  }

  json report;
  report["mode"] = "ensemble";
  report["runs"] = config.n_runs;
  report["horizon"] = config.horizon;
  report["first_seed"] = config.seed;
  report["aggregate"] = aggregate;
  report["members"] = members;
  report["pass"] = passed == config.n_runs;
  if (!first_failure.is_null()) report["counterexample"] = first_failure;
  return emit_report(config, "ensemble.json", report, passed == config.n_runs,
                     out, err);
}

}  // namespace

Mode parse_mode(const std::string& name) {
  if (name == "simulate-tasep") return Mode::SimulateTasep;
  if (name == "simulate-abdf") return Mode::SimulateAbdf;
  if (name == "simulate-burgers") return Mode::SimulateBurgers;
  if (name == "verify-conjugacy") return Mode::VerifyConjugacy;
  if (name == "verify-bijection") return Mode::VerifyBijection;
  if (name == "verify-weak") return Mode::VerifyWeak;
  if (name == "export-profile") return Mode::ExportProfile;
  if (name == "ensemble") return Mode::Ensemble;
  throw ConfigError("unknown mode: " + name);
}

std::string mode_name(Mode mode) {
  switch (mode) {
    case Mode::SimulateTasep: return "simulate-tasep";
    case Mode::SimulateAbdf: return "simulate-abdf";
    case Mode::SimulateBurgers: return "simulate-burgers";
    case Mode::VerifyConjugacy: return "verify-conjugacy";
    case Mode::VerifyBijection: return "verify-bijection";
    case Mode::VerifyWeak: return "verify-weak";
    case Mode::ExportProfile: return "export-profile";
    case Mode::Ensemble: return "ensemble";
  }
  throw ConfigError("unknown mode value");
}

RunConfig apply_preset(RunConfig config) {
  if (config.preset.empty()) return config;
  if (has_initial_literal(config))
    throw ConfigError("preset '" + config.preset +
                      "' conflicts with an explicit initial condition");
  if (config.preset == "figure1") {
    config.domain = Domain::ring(64);
    config.seed = kFigure1Seed;
    config.occupancy = kFigure1Occupancy;
    config.origin = 0;
    if (config.horizon == 0) config.horizon = 2;
    return config;
  }
  if (config.preset == "alternating") {
    config.occupancy = checkerboard(config.domain.size());
    config.origin = config.domain.is_ring() ? 0 : config.domain.x_min;
    return config;
  }
  throw ConfigError("unknown preset: " + config.preset);
}

RunConfig parse_run_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");

  RunConfig c;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "mode")
        c.mode = parse_mode(value.get<std::string>());
      else if (key == "seed")
        c.seed = value.get<std::uint64_t>();
      else if (key == "domain")
        c.domain = parse_domain(value.get<std::string>());
      else if (key == "preset")
        c.preset = value.get<std::string>();
      else if (key == "occupancy")
        c.occupancy = value.get<std::string>();
      else if (key == "origin")
        c.origin = value.get<std::int64_t>();
      else if (key == "spins")
        c.spins = value.get<std::string>();
      else if (key == "act")
        c.act = value.get<std::string>();
      else if (key == "alt_flag")
        c.alt_flag = value.get<int>();
      else if (key == "horizon")
        c.horizon = value.get<std::int64_t>();
      else if (key == "out")
        c.out_dir = value.get<std::string>();
      else if (key == "grid_step")
        c.grid_step = value.get<double>();
      else if (key == "tolerance")
        c.tolerance = value.get<double>();
      else if (key == "runs")
        c.n_runs = value.get<int>();
      else if (key == "test_functions")
        c.n_test_functions = value.get<int>();
      else if (key == "times") {
        for (const auto& item : value)
          c.times.push_back(parse_rational(item.get<std::string>()));
      } else {
        throw ConfigError("unknown config key: " + key);
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }

  if (!c.preset.empty()) {
    if (c.preset == "figure1" &&
        (j.contains("domain") || j.contains("seed") || j.contains("origin")))
      throw ConfigError("preset 'figure1' pins domain, seed, and origin");
    c = apply_preset(c);
  }
  validate_run_config(c);
  return c;
}

void validate_run_config(const RunConfig& c) {
  if (c.horizon < 0) throw ConfigError("horizon must be >= 0");
  if (!(c.grid_step > 0)) throw ConfigError("grid_step must be positive");
  if (!(c.tolerance > 0)) throw ConfigError("tolerance must be positive");
  if (c.n_runs < 1) throw ConfigError("runs must be >= 1");
  if (c.n_test_functions < 0) throw ConfigError("test_functions must be >= 0");
  if (!c.occupancy.empty() && !c.spins.empty())
    throw ConfigError("give either an occupancy or spin/act strings, not both");
  if (!c.act.empty() && c.spins.empty())
    throw ConfigError("act string requires a spins string");
  if (!c.occupancy.empty() && (c.alt_flag.has_value()))
    throw ConfigError("alt_flag does not apply to an occupancy literal");
  if (c.alt_flag && *c.alt_flag != 0 && *c.alt_flag != 1)
    throw ConfigError("alt_flag must be 0 or 1");
}

TasepConfig initial_tasep(const RunConfig& config) {
  if (!config.occupancy.empty()) {
    TasepConfig cfg;
    cfg.domain = config.domain;
    cfg.occ.assign(static_cast<std::size_t>(config.domain.size()), 0);
    for (std::size_t i = 0; i < config.occupancy.size(); ++i) {
      const char ch = config.occupancy[i];
      if (ch != '0' && ch != '1')
        throw ConfigError(std::string("occupancy must be over {0,1}; got '") +
                          ch + "'");
      const std::int64_t x = config.origin + static_cast<std::int64_t>(i);
      std::int64_t idx;
      if (config.domain.is_ring()) {
        idx = config.domain.wrap(x);
      } else {
        if (!config.domain.contains(x))
          throw ConfigError("occupancy site " + std::to_string(x) +
                            " is outside the window");
        idx = config.domain.index_of(x);
      }
      cfg.occ[static_cast<std::size_t>(idx)] = static_cast<std::uint8_t>(ch - '0');
    }
    validate(cfg);
    return cfg;
  }
  if (!config.spins.empty() || config.alt_flag.has_value())
    return pair_inverse(initial_abdf(config));
  TasepConfig cfg;
  cfg.domain = config.domain;
  cfg.occ.assign(static_cast<std::size_t>(config.domain.size()), 0);
  return cfg;
}

AbdfConfig initial_abdf(const RunConfig& config) {
  if (!config.spins.empty()) {
    const std::vector<std::int8_t> spins = parse_spin_literal(config.spins);
    if (static_cast<std::int64_t>(spins.size()) != config.domain.size())
      throw ConfigError("spins length must equal the domain size");
    AbdfConfig cfg;
    cfg.domain = config.domain;
    cfg.spins = spins;
    const bool vacuum =
        std::all_of(spins.begin(), spins.end(), [](std::int8_t s) { return s == 0; });
    if (!config.act.empty()) {
      if (config.act.size() != spins.size())
        throw ConfigError("act length must equal the domain size");
      cfg.act.reserve(spins.size());
      for (char ch : config.act) {
        if (ch != '0' && ch != '1')
          throw ConfigError(std::string("act must be over {0,1}; got '") + ch +
                            "'");
        cfg.act.push_back(static_cast<std::uint8_t>(ch - '0'));
      }
    } else if (vacuum && config.domain.is_ring()) {
      if (!config.alt_flag)
        throw ConfigError("all-zero ring spins need alt_flag 0 or 1");
      cfg.act.reserve(spins.size());
      for (std::int64_t x = 0; x < config.domain.size(); ++x)
        cfg.act.push_back(static_cast<std::uint8_t>((x + *config.alt_flag) % 2));
    } else {
      cfg.act = activation_record(spins, config.domain);
    }
    if (vacuum && config.domain.is_ring()) cfg.alt_flag = config.alt_flag;
    const AbdfValidity v = validate_abdf(cfg);
    if (!v.ok) throw ConfigError("invalid ABDF initial condition: " + v.reason);
    return cfg;
  }
  if (config.alt_flag.has_value()) {
    if (!config.domain.is_ring())
      throw ConfigError("alt_flag without spins needs a ring domain");
    AbdfConfig cfg;
    cfg.domain = config.domain;
    cfg.spins.assign(static_cast<std::size_t>(config.domain.size()), 0);
    for (std::int64_t x = 0; x < config.domain.size(); ++x)
      cfg.act.push_back(static_cast<std::uint8_t>((x + *config.alt_flag) % 2));
    cfg.alt_flag = config.alt_flag;
    return cfg;
  }
  return pair_forward(initial_tasep(config));
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate_run_config(config);
    switch (config.mode) {
      case Mode::SimulateTasep: return run_simulate_tasep(config, out, err);
      case Mode::SimulateAbdf: return run_simulate_abdf(config, out, err);
      case Mode::SimulateBurgers: return run_simulate_burgers(config, out, err);
      case Mode::VerifyConjugacy: return run_verify_conjugacy(config, out, err);
      case Mode::VerifyBijection: return run_verify_bijection(config, out, err);
      case Mode::VerifyWeak: return run_verify_weak(config, out, err);
      case Mode::ExportProfile: return run_export_profile(config, out, err);
      case Mode::Ensemble: return run_ensemble(config, out, err);
    }
    err << "error: unhandled mode\n";
    return kExitConfigError;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitIoError;
  } catch (const std::ios_base::failure& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitIoError;
  } catch (const std::logic_error& e) {
    err << "domain error: " << e.what() << "\n";
    return kExitDomainError;
  } catch (const std::runtime_error& e) {
    err << "domain error: " << e.what() << "\n";
    return kExitDomainError;
  }
}

}  // namespace qpflow
