#include "qibound/cli.hpp"

#include <CLI11.hpp>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include "qibound/bounds.hpp"
#include "qibound/errors.hpp"
#include "qibound/fock.hpp"
#include "qibound/verify.hpp"
#include "qibound/weighting.hpp"

namespace qibound::cli {

namespace {

using report::json;
using report::Table;

weighting::ProbeFunction make_probe(const RunConfig& c) {
  if (c.probe == "lorentzian" || c.probe == "lorentzian_squared")
    return weighting::ProbeFunction::lorentzian_squared(c.t0);
  if (c.probe == "gaussian") return weighting::ProbeFunction::gaussian(c.t0);
  if (c.probe.rfind("table:", 0) == 0)
    return weighting::ProbeFunction::tabulated_from_file(c.probe.substr(6));
  throw ValidationError("unknown probe kind '" + c.probe +
                        "' (want lorentzian|gaussian|table:PATH)");
}

weighting::SensitivityFunction make_sensitivity(const RunConfig& c) {
  if (c.sensitivity == "rect_band")
    return weighting::SensitivityFunction::rect_band(c.omega0, c.bandwidth);
  if (c.sensitivity == "gaussian_band")
    return weighting::SensitivityFunction::gaussian_band(c.omega0, c.bandwidth);
  if (c.sensitivity == "sharp_line")
    return weighting::SensitivityFunction::sharp_line(c.omega0);
  throw ValidationError("unknown sensitivity kind '" + c.sensitivity +
                        "' (want rect_band|gaussian_band|sharp_line)");
}

bounds::FieldKind make_field_kind(const RunConfig& c) {
  if (c.field_kind == "electromagnetic" || c.field_kind == "em")
    return bounds::FieldKind::electromagnetic;
  if (c.field_kind == "scalar") return bounds::FieldKind::scalar_field;
  throw ValidationError("unknown field kind '" + c.field_kind + "'");
}

verify::DecompositionKind make_decomposition_kind(const RunConfig& c) {
  if (c.decomposition_kind == "electromagnetic" || c.decomposition_kind == "em")
    return verify::DecompositionKind::electromagnetic;
  if (c.decomposition_kind == "scalar_A") return verify::DecompositionKind::scalar_A;
  if (c.decomposition_kind == "scalar_A_tilde")
    return verify::DecompositionKind::scalar_A_tilde;
  throw ValidationError("unknown decomposition kind '" + c.decomposition_kind + "'");
}

std::shared_ptr<const fock::FockSpace> make_space(const RunConfig& c, int polarizations) {
  auto modes = fock::ModeSet::collinear(c.modes, c.omega0, c.mode_delta, polarizations);
  return fock::FockSpace::create(std::move(modes), c.nmax);
}

json meta_block(const RunConfig& c) {
  json meta;
  meta["version"] = kVersion;
  meta["seed"] = c.seed;
  meta["quadrature_rel_tol"] = c.quadrature_rel_tol;
  meta["operator_residual_tol"] = c.operator_residual_tol;
  return meta;
}

void apply_config_file(RunConfig& c, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const std::exception& e) {
    throw ValidationError(std::string("config parse error: ") + e.what());
  }
  auto get = [&](const char* key, auto& field) {
    if (doc.contains(key)) field = doc[key].get<std::decay_t<decltype(field)>>();
  };
  if (doc.contains("probe")) {
    const auto& p = doc["probe"];
    if (p.contains("kind")) c.probe = p["kind"].get<std::string>();
    if (p.contains("t0")) c.t0 = p["t0"].get<double>();
    if (p.contains("path")) c.probe = "table:" + p["path"].get<std::string>();
  }
  if (doc.contains("sensitivity")) {
    const auto& s = doc["sensitivity"];
    if (s.contains("kind")) c.sensitivity = s["kind"].get<std::string>();
    if (s.contains("omega0")) c.omega0 = s["omega0"].get<double>();
    if (s.contains("bandwidth")) c.bandwidth = s["bandwidth"].get<double>();
  }
  if (doc.contains("modes")) {
    const auto& m = doc["modes"];
    if (m.contains("count")) c.modes = m["count"].get<int>();
    if (m.contains("delta")) c.mode_delta = m["delta"].get<double>();
    if (m.contains("nmax")) c.nmax = m["nmax"].get<int>();
  }
  if (doc.contains("tolerances")) {
    const auto& t = doc["tolerances"];
    if (t.contains("quadrature_rel_tol"))
      c.quadrature_rel_tol = t["quadrature_rel_tol"].get<double>();
    if (t.contains("operator_residual_tol"))
      c.operator_residual_tol = t["operator_residual_tol"].get<double>();
  }
  get("field_kind", c.field_kind);
  get("decomposition_kind", c.decomposition_kind);
  get("taus", c.taus);
  get("states_per_family", c.states_per_family);
  get("seed", c.seed);
  get("t_offset", c.t_offset);
  get("format", c.format);
  get("out", c.out_path);
  get("grid_density", c.grid_density);
}

int run_limit_like(const RunConfig& c, bool parallel) {
  if (c.taus.empty())
    throw ValidationError("limit/sweep: at least one --tau (or config taus) is required");
  for (double tau : c.taus)
    if (!(tau > 0.0)) throw ValidationError("limit/sweep: tau values must be > 0");

  Table table;
  table.title = parallel ? "squeezing-limit sweep" : "squeezing limits";
  table.columns = {"tau", "r_db_paper_erf", "r_db_direct_integral", "status"};
  table.db_columns = {"r_db_paper_erf", "r_db_direct_integral"};
  table.meta = meta_block(c);
  table.meta["modes_note"] =
      "paper_erf = 10*log10(erf(2*sqrt(2)*tau)); direct_integral = quadrature of the "
      "narrow-band gaussian-probe reduction (analytically 10*log10(erf(sqrt(2)*tau))); "
      "the two routes disagree and are reported side by side";

  const std::size_t n = c.taus.size();
  std::vector<std::array<double, 2>> values(n);
  std::vector<std::string> status(n, "ok");
  auto work = [&](std::size_t i) {
    try {
      values[i][0] = bounds::squeezing_limit_paper(c.taus[i]);
      values[i][1] = bounds::squeezing_limit_integral(c.taus[i]);
    } catch (const Error& e) {
      values[i][0] = values[i][1] = std::numeric_limits<double>::quiet_NaN();
      status[i] = std::string("failed: ") + e.what();
    }
  };
  if (parallel && n > 1) {
    const unsigned workers = std::min<std::size_t>(worker_count(), n);
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) work(i);
      });
    for (auto& th : pool) th.join();
  } else {
    for (std::size_t i = 0; i < n; ++i) work(i);
  }
  for (std::size_t i = 0; i < n; ++i)
    table.add_row({report::cell(c.taus[i]), report::cell(values[i][0]),
                   report::cell(values[i][1]), report::cell(status[i])});

  report::emit(table, report::parse_format(c.format), c.out_path);
  return 0;
}

int run_bound(const RunConfig& c) {
  bounds::BoundQuery query{make_probe(c), make_sensitivity(c), make_field_kind(c), {}};
  query.quad.rel_tol = c.quadrature_rel_tol;
  const bounds::BoundResult r = bounds::qi_bound(query);

  Table table;
  table.title = "fluctuation bound";
  table.columns = {"probe", "sensitivity", "field_kind", "delta_max", "vacuum_e2",
                   "r_db", "quadrature_error"};
  table.db_columns = {"r_db"};
  table.meta = meta_block(c);
  table.add_row({report::cell(query.probe.describe()),
                 report::cell(query.sensitivity.describe()), report::cell(c.field_kind),
                 report::cell(r.delta_max), report::cell(r.vacuum_e2), report::cell(r.r_db),
                 report::cell(r.quadrature_error)});
  report::emit(table, report::parse_format(c.format), c.out_path);
  return 0;
}

int run_verify(const RunConfig& c) {
  const auto probe = make_probe(c);
  const int pol = (c.field_kind == "scalar") ? 1 : 2;
  auto space = make_space(c, pol);
  std::optional<weighting::SensitivityFunction> mu;
  if (c.sensitivity != "sharp_line") mu = make_sensitivity(c);

  auto states = verify::random_scan_states(space, c.states_per_family, c.seed);
  const auto scan = verify::inequality_scan(space, probe, mu, states);

  Table table;
  table.title = "discrete inequality scan";
  table.columns = {"state", "delta_expectation", "bound", "margin"};
  table.meta = meta_block(c);
  table.meta["min_margin"] = scan.min_margin;
  table.meta["bound"] = scan.bound;
  table.meta["states"] = states.size();
  for (const auto& row : scan.rows)
    table.add_row({report::cell(row.state), report::cell(row.delta_expectation),
                   report::cell(row.bound), report::cell(row.margin)});
  report::emit(table, report::parse_format(c.format), c.out_path);
  return 0;
}

int run_decompose(const RunConfig& c) {
  const auto probe = make_probe(c);
  const auto kind = make_decomposition_kind(c);
  const int pol = (kind == verify::DecompositionKind::electromagnetic) ? 2 : 1;
  auto space = make_space(c, pol);
  verify::OmegaGridOptions grid_opt;
  grid_opt.density = c.grid_density;
  const auto chi = fock::chi_ident(space->modes());
  const auto rep = verify::decomposition_check(*space, probe, chi, kind, grid_opt);

  Table table;
  table.title = "frequency-decomposition identity";
  table.columns = {"kind",           "probe",          "operator_residual",
                   "residue_c_grid", "residue_c_closed", "residue_rel_gap",
                   "grid_points",    "omega_max"};
  table.meta = meta_block(c);
  table.add_row({report::cell(c.decomposition_kind), report::cell(probe.describe()),
                 report::cell(rep.operator_residual), report::cell(rep.residue_constant),
                 report::cell(rep.residue_closed_form),
                 report::cell(rep.residue_relative_gap),
                 report::cell(double(rep.grid_points)), report::cell(rep.omega_max)});
  report::emit(table, report::parse_format(c.format), c.out_path);

  if (rep.operator_residual > c.operator_residual_tol)
    throw InequalityViolationError("decomposition identity residual " +
                                   std::to_string(rep.operator_residual) +
                                   " exceeds the tolerance");
  return 0;
}

int run_energy(const RunConfig& c) {
  const auto probe = make_probe(c);
  auto space = make_space(c, 2);
  const int L = space->modes().ladder_count();

  // Pair wavepacket on the first polarization of every momentum.
  Eigen::MatrixXcd F = Eigen::MatrixXcd::Zero(L, L);
  for (int i = 0; i < space->modes().momentum_count(); ++i)
    for (int j = 0; j < space->modes().momentum_count(); ++j)
      F(space->modes().ladder_index(i, 0), space->modes().ladder_index(j, 0)) = 1.0;
  F /= F.norm();

  const auto opt = verify::optimize_epsilon(space, probe, {}, F);
  auto state = fock::make_pair_superposition(space, F, opt.eps_star);

  const double period = 2.0 * M_PI / c.omega0;
  std::vector<double> t_grid;
  for (int i = 0; i < 160; ++i) t_grid.push_back(period * 2.0 * i / 159.0);
  std::vector<fock::Vec3> x_grid;
  for (int i = 0; i < 5; ++i)
    x_grid.push_back(fock::Vec3(0, 0, period * 0.25 * i));

  const auto scan = verify::energy_density_scan(state, x_grid, t_grid);

  Table table;
  table.title = "pointwise energy density scan";
  table.columns = {"t", "z", "rho"};
  table.meta = meta_block(c);
  table.meta["eps_star"] = opt.eps_star;
  table.meta["delta_min"] = opt.delta_min;
  table.meta["min_rho"] = scan.min_rho;
  table.meta["total_energy"] = scan.total_energy;
  for (const auto& row : scan.rows)
    table.add_row({report::cell(row.t), report::cell(row.x[2]), report::cell(row.rho)});
  report::emit(table, report::parse_format(c.format), c.out_path);
  return 0;
}

}  // namespace

unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("QIBOUND_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
  }
  return hw;
}

RunConfig parse_command_line(const std::vector<std::string>& args) {
  RunConfig config;

  // Phase 1: locate --config and load its values as the base layer.
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) apply_config_file(config, args[i + 1]);
    else if (args[i].rfind("--config=", 0) == 0) apply_config_file(config, args[i].substr(9));
  }

  CLI::App app{"quantum-inequality bounds on vacuum-fluctuation reduction"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config document (flags override it)");

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config document (flags override it)");
    sub->add_option("--probe", config.probe, "lorentzian|gaussian|table:PATH");
    sub->add_option("--t0", config.t0, "probe time scale");
    sub->add_option("--sensitivity", config.sensitivity,
                    "rect_band|gaussian_band|sharp_line");
    sub->add_option("--omega0", config.omega0, "sensitivity center frequency");
    sub->add_option("--bandwidth", config.bandwidth, "sensitivity bandwidth");
    sub->add_option("--field", config.field_kind, "electromagnetic|scalar");
    sub->add_option("--modes", config.modes, "collinear momentum mode count");
    sub->add_option("--mode-delta", config.mode_delta, "collinear spacing (relative)");
    sub->add_option("--nmax", config.nmax, "per-mode occupation cutoff");
    sub->add_option("--seed", config.seed, "random seed (recorded in outputs)");
    sub->add_option("--format", config.format, "table|csv|json");
    sub->add_option("--out", config.out_path, "output path (default stdout)");
    sub->add_option("--rel-tol", config.quadrature_rel_tol, "quadrature relative tolerance");
    sub->add_option("--residual-tol", config.operator_residual_tol,
                    "operator residual tolerance");
    sub->add_option("--grid-density", config.grid_density, "omega-grid density factor");
    sub->add_option("--t-offset", config.t_offset, "probe center offset");
  };

  auto* bound = app.add_subcommand("bound", "evaluate the fluctuation bound");
  add_common(bound);
  auto* limit = app.add_subcommand("limit", "Appendix-style squeezing limits R(tau)");
  add_common(limit);
  limit->add_option("--tau", config.taus, "tau = omega0*t0 (repeatable)");
  auto* sweep = app.add_subcommand("sweep", "parallel R(tau) sweep over a grid");
  add_common(sweep);
  sweep->add_option("--tau", config.taus, "tau grid (repeatable)");
  auto* verify_cmd = app.add_subcommand("verify", "randomized discrete-inequality scan");
  add_common(verify_cmd);
  verify_cmd->add_option("--states", config.states_per_family, "states per family");
  auto* decompose = app.add_subcommand("decompose", "frequency-decomposition identity check");
  add_common(decompose);
  decompose->add_option("--kind", config.decomposition_kind,
                        "electromagnetic|scalar_A|scalar_A_tilde");
  auto* energy = app.add_subcommand("energy", "pointwise energy-density scan");
  add_common(energy);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    std::exit(0);
  } catch (const CLI::ParseError& e) {
    throw ValidationError(std::string("command line: ") + e.what());
  }

  if (bound->parsed()) config.subcommand = Subcommand::bound;
  else if (limit->parsed()) config.subcommand = Subcommand::limit;
  else if (sweep->parsed()) config.subcommand = Subcommand::sweep;
  else if (verify_cmd->parsed()) config.subcommand = Subcommand::verify;
  else if (decompose->parsed()) config.subcommand = Subcommand::decompose;
  else if (energy->parsed()) config.subcommand = Subcommand::energy;
  return config;
}

void validate(const RunConfig& config) {
  // Resolve every referenced object before any numeric work.
  (void)make_probe(config);
  (void)make_sensitivity(config);
  (void)make_field_kind(config);
  (void)report::parse_format(config.format);
  if (config.subcommand == Subcommand::decompose) (void)make_decomposition_kind(config);
  if (config.subcommand == Subcommand::verify || config.subcommand == Subcommand::decompose ||
      config.subcommand == Subcommand::energy) {
    const int pol = (config.subcommand == Subcommand::energy)
                        ? 2
                        : ((config.field_kind == "scalar" ||
                            config.decomposition_kind.rfind("scalar", 0) == 0)
                               ? 1
                               : 2);
    auto modes = fock::ModeSet::collinear(config.modes, config.omega0, config.mode_delta, pol);
    (void)fock::FockSpace::create(std::move(modes), config.nmax);
  }
  if (config.states_per_family < 1)
    throw ValidationError("states_per_family must be >= 1");
  if (config.quadrature_rel_tol <= 0.0 || config.operator_residual_tol <= 0.0)
    throw ValidationError("tolerances must be > 0");
}

int run(const RunConfig& config) {
  try {
    validate(config);
    switch (config.subcommand) {
      case Subcommand::bound: return run_bound(config);
      case Subcommand::limit: return run_limit_like(config, false);
      case Subcommand::sweep: return run_limit_like(config, true);
      case Subcommand::verify: return run_verify(config);
      case Subcommand::decompose: return run_decompose(config);
      case Subcommand::energy: return run_energy(config);
    }
    return 0;
  } catch (const Error& e) {
    json record;
    record["error"] = e.what();
    record["exit_code"] = e.exit_code();
    std::cerr << record.dump() << std::endl;
    return e.exit_code();
  } catch (const std::exception& e) {
    json record;
    record["error"] = e.what();
    record["exit_code"] = 1;
    std::cerr << record.dump() << std::endl;
    return 1;
  }
}

}  // namespace qibound::cli
