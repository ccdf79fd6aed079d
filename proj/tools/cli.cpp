#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tomokit/csv_io.hpp"
#include "tomokit/entropy.hpp"
#include "tomokit/error.hpp"
#include "tomokit/qtomo.hpp"
#include "tomokit/radon.hpp"
#include "tomokit/spin.hpp"
#include "tomokit/states.hpp"

namespace tomo::cli {
namespace {

using nlohmann::json;

struct RunConfig {
  std::string state;
  std::string tomogram;
  std::string grid = "1024,8";
  std::size_t angles = 64;
  double theta = 0.0;
  std::optional<double> q;
  std::size_t unitaries = 20;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
  bool quantum = false;

  std::size_t n_points = 1024;
  double half_width = 8.0;
};

void finalize(RunConfig& c) {
  const auto comma = c.grid.find(',');
  if (comma == std::string::npos) throw InvalidInput("--grid expects N,L");
  try {
    c.n_points = std::stoul(c.grid.substr(0, comma));
    c.half_width = std::stod(c.grid.substr(comma + 1));
  } catch (const std::exception&) {
    throw InvalidInput("--grid expects N,L with integer N and real L");
  }
  if (c.n_points < 64 || c.n_points > 8192) throw InvalidInput("--grid: N must lie in [64, 8192]");
  if (!(c.half_width >= 4.0 && c.half_width <= 20.0)) throw InvalidInput("--grid: L must lie in [4, 20]");
  if (c.angles < 16 || c.angles > 720) throw InvalidInput("--angles must lie in [16, 720]");
  if (c.format != "json" && c.format != "csv") throw InvalidInput("--format must be json or csv");
  if (c.unitaries < 1) throw InvalidInput("--unitaries must be positive");
}

StateParams load_state(const std::string& arg) {
  if (arg.empty()) throw InvalidInput("--state is required");
  std::string text = arg;
  if (arg.find('{') == std::string::npos) {
    std::ifstream in(arg);
    if (!in) throw InvalidInput("cannot open state file '" + arg + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("state description is not valid JSON: ") + e.what());
  }
  return parse_state_params(j);
}

Grid1D wave_grid(const RunConfig& c) { return Grid1D(c.half_width, c.n_points); }

json grid_json(const RunConfig& c) {
  return {{"N", c.n_points}, {"L", c.half_width}, {"angles", c.angles}};
}

// Phase grid for classical states: the rotated support must fit in the X grid.
PhaseSpaceDensity classical_state(const Gaussian2dParams& g, const RunConfig& c) {
  const Grid1D pg(c.half_width / std::numbers::sqrt2, std::min<std::size_t>(c.n_points, 512));
  return build_phase_density(g, pg, pg);
}

OpticalTomogram tomogram_for_state(const StateParams& params, const RunConfig& c) {
  const AngleGrid ag(c.angles);
  switch (kind_of(params)) {
    case StateKind::wave:
      return optical_tomogram_quantum(build_wavefunction(params, wave_grid(c)), wave_grid(c), ag);
    case StateKind::phase_density:
      return optical_tomogram_classical(classical_state(std::get<Gaussian2dParams>(params), c),
                                        wave_grid(c), ag);
    case StateKind::density_matrix:
      break;
  }
  throw InvalidInput("state describes a qudit; use the 'spin' commands");
}

OpticalTomogram load_tomogram(const RunConfig& c, json& source) {
  if (!c.tomogram.empty()) {
    source = {{"tomogram", c.tomogram}};
    return io::read_tomogram_csv(c.tomogram);
  }
  const StateParams params = load_state(c.state);
  source = {{"state", to_json(params)}};
  return tomogram_for_state(params, c);
}

void emit(const RunConfig& c, const std::string& content, std::ostream& out) {
  if (c.out.empty()) {
    out << content;
  } else {
    io::write_atomic(c.out, content);
  }
}

int emit_verdict(const RunConfig& c, const entropy::InequalityVerdict& v, json extra,
                 std::ostream& out) {
  json j = entropy::to_json(v);
  for (auto& [k, val] : extra.items()) j[k] = val;
  emit(c, j.dump(2) + "\n", out);
  return v.holds ? kOk : kViolated;
}

struct QuditPair {
  std::size_t d1 = 0;
  std::size_t d2 = 0;
};

std::optional<QuditPair> bipartition(const StateParams& params) {
  if (const auto* r = std::get_if<Random2Params>(&params)) {
    return QuditPair{static_cast<std::size_t>(r->d1), static_cast<std::size_t>(r->d2)};
  }
  if (std::holds_alternative<BellParams>(params)) return QuditPair{2, 2};
  return std::nullopt;
}

json spin_fields(const DensityMatrix& rho, const RunConfig& c) {
  const std::size_t d = rho.dim();
  return {{"j", 0.5 * static_cast<double>(d - 1)},
          {"d", d},
          {"n_unitaries", c.unitaries},
          {"seed", c.seed}};
}

// --- commands --------------------------------------------------------------

int cmd_tomogram(const RunConfig& c, std::ostream& out) {
  const StateParams params = load_state(c.state);
  emit(c, io::tomogram_csv(tomogram_for_state(params, c)), out);
  return kOk;
}

int cmd_entropy(const RunConfig& c, std::ostream& out) {
  json report;
  if (c.tomogram.empty()) {
    const StateParams params = load_state(c.state);
    if (kind_of(params) == StateKind::density_matrix) {
      const DensityMatrix rho = build_density_matrix(params);
      report = {{"state", to_json(params)}, {"von_neumann", entropy::von_neumann(rho)}};
      if (c.q) report["quantum_renyi"] = {{"q", *c.q}, {"value", entropy::quantum_renyi(rho, *c.q)}};
      emit(c, report.dump(2) + "\n", out);
      return kOk;
    }
  }
  json source;
  const OpticalTomogram w = load_tomogram(c, source);
  const auto profile = entropy::optical_entropy_profile(w);
  if (c.format == "csv") {
    std::string csv = "theta,S\n";
    for (std::size_t k = 0; k < profile.size(); ++k) {
      csv += io::format_double(w.angles().at(k)) + "," + io::format_double(profile[k]) + "\n";
    }
    emit(c, csv, out);
    return kOk;
  }
  const auto mod = entropy::modified_entropy(profile, uniform_circle(w.angles()));
  report = source;
  report["grid"] = {{"N", w.x().size()}, {"L", w.x().half_width()}, {"angles", w.angles().size()}};
  report["optical_profile"] = {{"theta", w.angles().points()}, {"S", profile}};
  report["modified_uniform"] = {{"total", mod.total},
                                {"mean_conditional", mod.mean_conditional},
                                {"weight_entropy", mod.weight_entropy}};
  if (c.q) {
    std::vector<double> renyi(w.angles().size());
    for (std::size_t k = 0; k < renyi.size(); ++k) {
      renyi[k] = entropy::renyi_continuous(w.slice(k), w.x().step(), *c.q);
    }
    report["renyi_profile"] = {{"q", *c.q}, {"R", renyi}};
  }
  emit(c, report.dump(2) + "\n", out);
  return kOk;
}

int cmd_check(const std::string& which, const RunConfig& c, std::ostream& out) {
  if (which == "hirschman") {
    const StateParams params = load_state(c.state);
    if (kind_of(params) != StateKind::wave) throw InvalidInput("check hirschman needs a wave-function state");
    const auto v = entropy::check_hirschman(build_wavefunction(params, wave_grid(c)));
    return emit_verdict(c, v, {{"state", to_json(params)}, {"grid", grid_json(c)}}, out);
  }
  if (which == "pair" || which == "universal") {
    json source;
    const OpticalTomogram w = load_tomogram(c, source);
    const auto v = which == "pair" ? entropy::check_theta_pair(w, c.theta) : entropy::check_universal(w);
    source["grid"] = {{"N", w.x().size()}, {"L", w.x().half_width()}, {"angles", w.angles().size()}};
    if (which == "pair") source["theta"] = c.theta;
    return emit_verdict(c, v, source, out);
  }
  // ssa / subadd on qudit states
  const StateParams params = load_state(c.state);
  const DensityMatrix rho = build_density_matrix(params);
  const auto set = spin::haar_set(rho.dim(), c.unitaries, c.seed);
  json extra = spin_fields(rho, c);
  extra["state"] = to_json(params);
  if (which == "ssa") {
    const auto pair = bipartition(params);
    if (!pair) throw InvalidInput("check ssa needs a bipartite state (random2 or bell)");
    return emit_verdict(c, spin::spin_ssa_check(spin::two_qudit_tomogram(rho, pair->d1, pair->d2, set)),
                        extra, out);
  }
  const auto joint = spin::modified_spin_tomogram(spin::spin_tomogram_rows(rho, set), set);
  return emit_verdict(c, spin::spin_subadditivity_check(joint), extra, out);
}

int cmd_reconstruct(const RunConfig& c, std::ostream& out) {
  if (c.tomogram.empty()) throw InvalidInput("reconstruct needs --tomogram");
  const OpticalTomogram w = io::read_tomogram_csv(c.tomogram);
  const double half = w.x().half_width() / std::numbers::sqrt2;
  const Grid1D g(half, std::min<std::size_t>(w.x().size(), 256));
  const Reconstruction r = c.quantum ? wigner_from_tomogram(w, g, g) : inverse_radon(w, g, g);
  json summary = {{"mode", c.quantum ? "wigner" : "classical"},
                  {"min_value", r.min_value},
                  {"integral", c.quantum ? r.raw_integral : r.field.integral()}};
  if (!c.quantum) summary["clamp_mass"] = r.clamp_mass;
  const std::string csv = io::phase_csv(r.field);
  if (c.out.empty()) {
    out << csv;
  } else {
    io::write_atomic(c.out, csv);
    out << summary.dump(2) << "\n";
  }
  return kOk;
}

int cmd_spin(const std::string& which, const RunConfig& c, std::ostream& out) {
  const StateParams params = load_state(c.state);
  const DensityMatrix rho = build_density_matrix(params);
  const auto set = spin::haar_set(rho.dim(), c.unitaries, c.seed);
  if (which == "tomogram") {
    const auto rows = spin::spin_tomogram_rows(rho, set);
    const double j = 0.5 * static_cast<double>(rho.dim() - 1);
    std::string csv = "k,m,w\n";
    for (std::size_t k = 0; k < rows.size(); ++k) {
      for (std::size_t i = 0; i < rows[k].size(); ++i) {
        csv += std::to_string(k) + "," + io::format_double(j - static_cast<double>(i)) + "," +
               io::format_double(rows[k][i]) + "\n";
      }
    }
    emit(c, csv, out);
    return kOk;
  }
  json report = spin_fields(rho, c);
  report["state"] = to_json(params);
  const auto rows = spin::spin_tomogram_rows(rho, set);
  const auto sub = spin::spin_subadditivity_check(spin::modified_spin_tomogram(rows, set));
  report["subadditivity"] = entropy::to_json(sub);
  bool holds = sub.holds;
  if (const auto pair = bipartition(params)) {
    const auto ssa = spin::spin_ssa_check(spin::two_qudit_tomogram(rho, pair->d1, pair->d2, set));
    report["strong_subadditivity"] = entropy::to_json(ssa);
    holds = holds && ssa.holds;
  }
  report["holds"] = holds;
  emit(c, report.dump(2) + "\n", out);
  return holds ? kOk : kViolated;
}

void add_common(CLI::App* app, RunConfig& c) {
  app->add_option("--state", c.state, "State params: JSON file path or inline JSON");
  app->add_option("--tomogram", c.tomogram, "Tomogram CSV (X,theta,w)");
  app->add_option("--grid", c.grid, "X grid as N,L")->capture_default_str();
  app->add_option("--angles", c.angles, "Number of local-oscillator phases")->capture_default_str();
  app->add_option("--theta", c.theta, "Angle for the theta-pair check");
  app->add_option("--q", c.q, "Renyi order");
  app->add_option("--unitaries", c.unitaries, "Number of Haar unitaries")->capture_default_str();
  app->add_option("--seed", c.seed, "RNG seed")->capture_default_str();
  app->add_option("--out", c.out, "Output path (stdout when omitted)");
  app->add_option("--format", c.format, "json or csv")->capture_default_str();
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"tomokit: tomographic probability representation toolkit", "tomokit"};
  app.require_subcommand(1);
  RunConfig c;

  auto* tomogram = app.add_subcommand("tomogram", "Write the optical tomogram of a state as CSV");
  add_common(tomogram, c);
  auto* ent = app.add_subcommand("entropy", "Tomographic and quantum entropies");
  add_common(ent, c);
  auto* check = app.add_subcommand("check", "Check an entropic inequality (exit 1 when violated)");
  check->require_subcommand(1);
  std::vector<std::pair<std::string, CLI::App*>> checks;
  const std::pair<const char*, const char*> check_names[] = {
      {"hirschman", "S_x + S_p >= ln(pi e) for a wave function"},
      {"pair", "S(theta) + S(theta + pi/2) >= ln(pi e) at --theta"},
      {"universal", "angle-integrated entropic inequality"},
      {"ssa", "strong subadditivity of a two-qudit modified tomogram"},
      {"subadd", "subadditivity of a single-qudit modified tomogram"},
  };
  for (const auto& [name, help] : check_names) {
    auto* sub = check->add_subcommand(name, help);
    add_common(sub, c);
    checks.emplace_back(name, sub);
  }
  auto* recon = app.add_subcommand("reconstruct", "Inverse Radon reconstruction from a tomogram CSV");
  add_common(recon, c);
  recon->add_flag("--quantum", c.quantum, "Reconstruct W/2pi without clamping");
  auto* spin_cmd = app.add_subcommand("spin", "Spin tomograms of qudit states");
  spin_cmd->require_subcommand(1);
  auto* spin_tomo = spin_cmd->add_subcommand("tomogram", "Rows k,m,w over Haar samples");
  auto* spin_check = spin_cmd->add_subcommand("check", "Subadditivity checks on the modified spin tomogram");
  add_common(spin_tomo, c);
  add_common(spin_check, c);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    finalize(c);
    if (tomogram->parsed()) return cmd_tomogram(c, out);
    if (ent->parsed()) return cmd_entropy(c, out);
    if (recon->parsed()) return cmd_reconstruct(c, out);
    if (spin_tomo->parsed()) return cmd_spin("tomogram", c, out);
    if (spin_check->parsed()) return cmd_spin("check", c, out);
    for (const auto& [name, sub] : checks) {
      if (sub->parsed()) return cmd_check(name, c, out);
    }
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const NumericGuard& e) {
    err << "numeric error: " << e.what() << "\n";
    return kNumericError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNumericError;
  }
  err << "error: no command\n";
  return kInputError;
}

} // namespace tomo::cli
