// ptscatter: scattering workbench for the complex PT-symmetric Scarf II
// potential. Subcommands: sweep | spectrum | singularity | poles | scan2d |
// validate. Exit codes: 0 success, 1 validation failure, 2 computational
// nonconvergence.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "output.hpp"
#include "ptscatter/acceptance.hpp"
#include "ptscatter/pole_hunt.hpp"
#include "ptscatter/scarf2.hpp"
#include "ptscatter/scatter1d.hpp"
#include "ptscatter/version.hpp"

namespace {

using namespace ptscatter;
using cli::Cell;
using cli::Table;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNonConvergence = 2;

struct CommonOpts {
  std::string format = "csv";
  std::string output = "-";
  unsigned jobs = 1;
  double domain_half_width = 18.0;
  double rel_tol = 1e-10;
  double sing_tol = 1e-9;

  scatter1d::DomainConfig domain() const {
    scatter1d::DomainConfig cfg;
    cfg.half_width = domain_half_width;
    cfg.rel_tol = rel_tol;
    return cfg;
  }
};

unsigned default_jobs() {
  if (const char* env = std::getenv("PTSCATTER_JOBS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 4096) {
      return static_cast<unsigned>(v);
    }
  }
  return 1;
}

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--output", opts.output,
                  "Output path ('-' for standard output)")
      ->capture_default_str();
  cmd->add_option("--jobs", opts.jobs,
                  "Worker threads for sweeps/scans (default: PTSCATTER_JOBS "
                  "or 1)")
      ->check(CLI::Range(1u, 4096u));
  cmd->add_option("--domain-L", opts.domain_half_width,
                  "Truncation half-width for the numeric solver")
      ->capture_default_str();
  cmd->add_option("--rel-tol", opts.rel_tol, "Integrator relative tolerance")
      ->capture_default_str();
  cmd->add_option("--sing-tol", opts.sing_tol,
                  "Tolerance on the singularity-condition residual")
      ->capture_default_str();
}

ordered_json meta_json(const CommonOpts& opts) {
  ordered_json meta;
  meta["version"] = kVersion;
  meta["domain_L"] = opts.domain_half_width;
  meta["rel_tol"] = opts.rel_tol;
  meta["sing_tol"] = opts.sing_tol;
  meta["jobs"] = opts.jobs;
  return meta;
}

// Serialization happens before any file is opened, so failed runs never
// leave partial artifacts behind.
void emit(const CommonOpts& opts, const ordered_json& params,
          const Table& table, const ordered_json& meta) {
  const std::string payload = (opts.format == "json")
                                  ? cli::to_json(params, table, meta)
                                  : cli::to_csv(table);
  if (opts.output == "-") {
    std::cout << payload;
    return;
  }
  std::ofstream file(opts.output, std::ios::binary);
  if (!file) {
    throw ValidationError("cannot open output path: " + opts.output);
  }
  file << payload;
}

Cell opt_double(std::optional<double> v) {
  if (!v) return std::monostate{};
  return *v;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepOpts {
  CommonOpts common;
  double v1 = 0.0, v2 = 0.0;
  double kmin = 0.0, kmax = 0.0;
  int n_points = 0;
  std::string side = "both";
  std::string mode = "both";
};

int run_sweep(const SweepOpts& o) {
  if (!(o.kmin > 0.0) || !(o.kmax > o.kmin)) {
    throw ValidationError("sweep requires 0 < kmin < kmax");
  }
  const scarf2::PotentialParams p{o.v1, o.v2};
  const auto cfg = o.common.domain();
  const bool want_analytic = o.mode != "numeric";
  const bool want_numeric = o.mode != "analytic";
  const bool left = o.side != "right";
  const bool right = o.side != "left";

  std::vector<double> grid(o.n_points);
  for (int i = 0; i < o.n_points; ++i) {
    grid[i] = o.kmin + (o.kmax - o.kmin) * i / (o.n_points - 1);
  }

  std::vector<scatter1d::SweepPoint> num_left, num_right;
  if (want_numeric) {
    const auto pot = scarf2::as_potential_fn(p, cfg.tail_tol);
    cfg.validate(pot);  // a bad domain fails the whole sweep up front
    if (left) {
      num_left = scatter1d::sweep(pot, grid, scatter1d::Side::LeftIncidence,
                                  cfg, o.common.jobs);
    }
    if (right) {
      num_right = scatter1d::sweep(pot, grid, scatter1d::Side::RightIncidence,
                                   cfg, o.common.jobs);
    }
  }

  Table table;
  table.columns = {"k",      "energy",      "T_analytic",      "T_numeric",
                   "R_left", "R_right",     "flux_defect",     "rel_discrepancy"};
  long long warnings = 0;
  for (int i = 0; i < o.n_points; ++i) {
    const double k = grid[i];
    std::optional<double> t_ana, t_num, r_left, r_right, flux, discrepancy;
    if (want_analytic) t_ana = scarf2::transmission_coefficient(p, k);
    if (want_numeric) {
      const auto* lp = left ? &num_left[i] : nullptr;
      const auto* rp = right ? &num_right[i] : nullptr;
      if (lp && !lp->result) ++warnings;
      if (rp && !rp->result) ++warnings;
      if (lp && lp->result) {
        t_num = lp->result->T;
        r_left = lp->result->R;
        flux = lp->result->flux_defect;
      }
      if (rp && rp->result) {
        if (!t_num) t_num = rp->result->T;
        r_right = rp->result->R;
        if (!flux) flux = rp->result->flux_defect;
      }
    }
    if (t_ana && t_num && std::isfinite(*t_ana) && *t_ana > 0.0) {
      discrepancy = std::abs(*t_num - *t_ana) / *t_ana;
    }
    table.rows.push_back({k, k * k, opt_double(t_ana), opt_double(t_num),
                          opt_double(r_left), opt_double(r_right),
                          opt_double(flux), opt_double(discrepancy)});
  }
  if (warnings > 0) {
    std::cerr << "warning: " << warnings << " numeric point(s) failed\n";
  }

  ordered_json params;
  params["v1"] = o.v1;
  params["v2"] = o.v2;
  params["kmin"] = o.kmin;
  params["kmax"] = o.kmax;
  params["n"] = o.n_points;
  params["side"] = o.side;
  params["mode"] = o.mode;
  auto meta = meta_json(o.common);
  meta["warnings"] = warnings;
  emit(o.common, params, table, meta);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// spectrum

struct SpectrumOpts {
  CommonOpts common;
  double v1 = 0.0, v2 = 0.0;
};

int run_spectrum(const SpectrumOpts& o) {
  const auto rep = scarf2::bound_spectrum({o.v1, o.v2});
  Table table;
  table.columns = {"phase", "branch", "n", "re_energy", "im_energy"};
  for (const auto& level : rep.levels) {
    table.rows.push_back({std::string(scarf2::to_string(rep.phase)),
                          std::string(scarf2::to_string(level.branch)),
                          static_cast<long long>(level.n),
                          level.energy.real(), level.energy.imag()});
  }
  ordered_json params;
  params["v1"] = o.v1;
  params["v2"] = o.v2;
  auto meta = meta_json(o.common);
  meta["phase"] = scarf2::to_string(rep.phase);
  meta["levels"] = static_cast<long long>(rep.levels.size());
  emit(o.common, params, table, meta);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// singularity

struct SingularityOpts {
  CommonOpts common;
  double v1 = 0.0;
  std::optional<double> v2;
  std::optional<int> n;
};

int run_singularity(const SingularityOpts& o) {
  if (o.v2.has_value() == o.n.has_value()) {
    throw ValidationError("singularity requires exactly one of --v2 or --n");
  }
  const auto cfg = o.common.domain();

  double v2 = 0.0, e_star = 0.0, detuning = 0.0;
  long long n = 0, satisfied = 0, positivity = 0;
  if (o.n) {
    const auto sol = scarf2::singularity_solve_v2(o.v1, *o.n);
    v2 = sol.v2;
    e_star = sol.e_star;
    n = *o.n;
    satisfied = 1;
    positivity = 1;
  } else {
    v2 = *o.v2;
    const auto rep = scarf2::singularity_check({o.v1, v2}, o.common.sing_tol);
    e_star = rep.e_star;
    detuning = rep.detuning;
    n = rep.n;
    satisfied = rep.satisfied ? 1 : 0;
    positivity = rep.positivity_ok ? 1 : 0;
  }

  // Numeric confirmation: the transmission coefficient at the resonant
  // energy and one tenth above/below it.
  std::optional<double> t_at, t_below, t_above;
  if (e_star > 0.0) {
    const auto pot = scarf2::as_potential_fn({o.v1, v2}, cfg.tail_tol);
    const auto T_of = [&](double energy) -> std::optional<double> {
      if (!(energy > 0.0)) return std::nullopt;
      return scatter1d::solve_scattering(pot, std::sqrt(energy),
                                         scatter1d::Side::LeftIncidence, cfg)
          .T;
    };
    t_at = T_of(e_star);
    t_below = T_of(e_star - 0.1);
    t_above = T_of(e_star + 0.1);
  }

  Table table;
  table.columns = {"v1",       "v2",     "n",
                   "satisfied", "detuning", "e_star",
                   "positivity_ok", "T_numeric_at_estar",
                   "T_numeric_below", "T_numeric_above"};
  table.rows.push_back({o.v1, v2, n, satisfied, detuning, e_star, positivity,
                        opt_double(t_at), opt_double(t_below),
                        opt_double(t_above)});

  ordered_json params;
  params["v1"] = o.v1;
  if (o.v2) params["v2"] = *o.v2;
  if (o.n) params["n"] = *o.n;
  emit(o.common, params, table, meta_json(o.common));
  return kExitOk;
}

// ---------------------------------------------------------------------------
// poles

struct PolesOpts {
  CommonOpts common;
  double v1 = 0.0, v2 = 0.0;
  double re_min = 0.0, re_max = 0.0, im_min = 0.0, im_max = 0.0;
  int density = 4;
};

int run_poles(const PolesOpts& o) {
  const auto scan = pole_hunt::scan_poles(
      {o.v1, o.v2}, {o.re_min, o.re_max, o.im_min, o.im_max}, o.density,
      o.common.jobs);
  Table table;
  table.columns = {"re_k",     "im_k", "re_energy", "im_energy",
                   "kind",     "residual", "iterations"};
  for (const auto& rec : scan.poles) {
    table.rows.push_back(
        {rec.k_pole.real(), rec.k_pole.imag(), rec.energy.real(),
         rec.energy.imag(), std::string(pole_hunt::to_string(rec.kind)),
         rec.residual, static_cast<long long>(rec.iterations)});
  }
  ordered_json params;
  params["v1"] = o.v1;
  params["v2"] = o.v2;
  params["re_min"] = o.re_min;
  params["re_max"] = o.re_max;
  params["im_min"] = o.im_min;
  params["im_max"] = o.im_max;
  params["density"] = o.density;
  auto meta = meta_json(o.common);
  meta["seeds_total"] = scan.seeds_total;
  meta["seeds_failed"] = scan.seeds_failed;
  emit(o.common, params, table, meta);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// scan2d

struct Scan2dOpts {
  CommonOpts common;
  double v1_min = 0.0, v1_max = 0.0, v2_min = 0.0, v2_max = 0.0;
  int resolution = 101;
};

int run_scan2d(const Scan2dOpts& o) {
  if (!(o.v1_max > o.v1_min) || !(o.v2_max > o.v2_min)) {
    throw ValidationError("scan2d requires non-empty parameter ranges");
  }
  if (o.resolution < 2 ||
      static_cast<long long>(o.resolution) * o.resolution > 1'000'000) {
    throw ValidationError(
        "scan2d resolution must be >= 2 with at most 1e6 cells");
  }
  Table table;
  table.columns = {"v1",     "v2",     "n",    "detuning",
                   "e_star", "e_star_positive", "phase"};
  for (int i = 0; i < o.resolution; ++i) {
    const double v1 =
        o.v1_min + (o.v1_max - o.v1_min) * i / (o.resolution - 1);
    for (int j = 0; j < o.resolution; ++j) {
      const double v2 =
          o.v2_min + (o.v2_max - o.v2_min) * j / (o.resolution - 1);
      const scarf2::PotentialParams p{v1, v2};
      const auto rep = scarf2::singularity_check(p, o.common.sing_tol);
      table.rows.push_back({v1, v2, static_cast<long long>(rep.n),
                            rep.detuning, rep.e_star,
                            static_cast<long long>(rep.positivity_ok ? 1 : 0),
                            std::string(scarf2::to_string(scarf2::pt_phase(p)))});
    }
  }
  ordered_json params;
  params["v1_min"] = o.v1_min;
  params["v1_max"] = o.v1_max;
  params["v2_min"] = o.v2_min;
  params["v2_max"] = o.v2_max;
  params["resolution"] = o.resolution;
  emit(o.common, params, table, meta_json(o.common));
  return kExitOk;
}

// ---------------------------------------------------------------------------
// validate

int run_validate(const CommonOpts& common) {
  acceptance::Environment env;
  env.domain = common.domain();
  env.sing_tol = common.sing_tol;
  const auto results = acceptance::run_all(env);

  Table table;
  table.columns = {"name", "passed", "informational", "seconds", "detail"};
  long long failed = 0;
  for (const auto& r : results) {
    std::cerr << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << " ("
              << cli::format_double(r.seconds) << " s): " << r.detail << "\n";
    if (!r.passed && !r.informational) ++failed;
    table.rows.push_back({r.name, static_cast<long long>(r.passed ? 1 : 0),
                          static_cast<long long>(r.informational ? 1 : 0),
                          r.seconds, r.detail});
  }
  auto meta = meta_json(common);
  meta["checks"] = static_cast<long long>(results.size());
  meta["failed"] = failed;
  CommonOpts json_common = common;
  json_common.format = "json";  // the machine-readable summary is JSON
  emit(json_common, ordered_json::object(), table, meta);
  return failed == 0 ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scattering workbench for the complex PT-symmetric Scarf II "
               "potential: closed-form transmission, bound spectra and "
               "zero-width resonances, cross-checked by a numeric solver "
               "and a complex-plane pole hunter"};
  app.require_subcommand(1);
  const unsigned jobs_default = default_jobs();

  SweepOpts sweep_opts;
  sweep_opts.common.jobs = jobs_default;
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "Transmission/reflection over a wavenumber grid");
  sweep_cmd->add_option("--v1", sweep_opts.v1, "Real well depth")->required();
  sweep_cmd->add_option("--v2", sweep_opts.v2, "Imaginary strength")->required();
  sweep_cmd->add_option("--kmin", sweep_opts.kmin, "Grid start (k > 0)")
      ->required();
  sweep_cmd->add_option("--kmax", sweep_opts.kmax, "Grid end")->required();
  sweep_cmd->add_option("--n", sweep_opts.n_points, "Grid size")
      ->required()
      ->check(CLI::Range(2, 10'000'000));
  sweep_cmd->add_option("--side", sweep_opts.side, "Incidence side")
      ->check(CLI::IsMember({"left", "right", "both"}))
      ->capture_default_str();
  sweep_cmd->add_option("--mode", sweep_opts.mode, "Evaluation path")
      ->check(CLI::IsMember({"analytic", "numeric", "both"}))
      ->capture_default_str();
  add_common(sweep_cmd, sweep_opts.common);

  SpectrumOpts spectrum_opts;
  spectrum_opts.common.jobs = jobs_default;
  auto* spectrum_cmd =
      app.add_subcommand("spectrum", "Bound-state spectrum and PT phase");
  spectrum_cmd->add_option("--v1", spectrum_opts.v1, "Real well depth")
      ->required();
  spectrum_cmd->add_option("--v2", spectrum_opts.v2, "Imaginary strength")
      ->required();
  add_common(spectrum_cmd, spectrum_opts.common);

  SingularityOpts sing_opts;
  sing_opts.common.jobs = jobs_default;
  auto* sing_cmd = app.add_subcommand(
      "singularity",
      "Zero-width-resonance condition: check --v2 or solve for it via --n");
  sing_cmd->add_option("--v1", sing_opts.v1, "Real well depth")->required();
  double sing_v2 = 0.0;
  int sing_n = 0;
  auto* v2_opt = sing_cmd->add_option("--v2", sing_v2, "Imaginary strength");
  auto* n_opt =
      sing_cmd->add_option("--n", sing_n, "Level index (n >= 1)")->check(
          CLI::PositiveNumber);
  add_common(sing_cmd, sing_opts.common);
  sing_cmd->callback([&] {
    if (*v2_opt) sing_opts.v2 = sing_v2;
    if (*n_opt) sing_opts.n = sing_n;
  });

  PolesOpts poles_opts;
  poles_opts.common.jobs = jobs_default;
  auto* poles_cmd = app.add_subcommand(
      "poles", "Scan a complex-k rectangle for amplitude poles");
  poles_cmd->add_option("--v1", poles_opts.v1, "Real well depth")->required();
  poles_cmd->add_option("--v2", poles_opts.v2, "Imaginary strength")
      ->required();
  poles_cmd->add_option("--re-min", poles_opts.re_min, "Re k lower edge")
      ->required();
  poles_cmd->add_option("--re-max", poles_opts.re_max, "Re k upper edge")
      ->required();
  poles_cmd->add_option("--im-min", poles_opts.im_min, "Im k lower edge")
      ->required();
  poles_cmd->add_option("--im-max", poles_opts.im_max, "Im k upper edge")
      ->required();
  poles_cmd
      ->add_option("--density", poles_opts.density, "Newton seeds per unit")
      ->check(CLI::Range(1, 1000))
      ->capture_default_str();
  add_common(poles_cmd, poles_opts.common);

  Scan2dOpts scan_opts;
  scan_opts.common.jobs = jobs_default;
  auto* scan_cmd = app.add_subcommand(
      "scan2d", "Map singularity detuning and PT phase over (v1, v2)");
  scan_cmd->add_option("--v1-min", scan_opts.v1_min, "v1 range start")
      ->required();
  scan_cmd->add_option("--v1-max", scan_opts.v1_max, "v1 range end")
      ->required();
  scan_cmd->add_option("--v2-min", scan_opts.v2_min, "v2 range start")
      ->required();
  scan_cmd->add_option("--v2-max", scan_opts.v2_max, "v2 range end")
      ->required();
  scan_cmd->add_option("--res", scan_opts.resolution, "Cells per axis")
      ->capture_default_str();
  add_common(scan_cmd, scan_opts.common);

  CommonOpts validate_common;
  validate_common.jobs = jobs_default;
  auto* validate_cmd = app.add_subcommand(
      "validate", "Run the full acceptance suite (JSON summary on output)");
  add_common(validate_cmd, validate_common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*sweep_cmd) return run_sweep(sweep_opts);
    if (*spectrum_cmd) return run_spectrum(spectrum_opts);
    if (*sing_cmd) return run_singularity(sing_opts);
    if (*poles_cmd) return run_poles(poles_opts);
    if (*scan_cmd) return run_scan2d(scan_opts);
    if (*validate_cmd) return run_validate(validate_common);
  } catch (const NonConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const StagnationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}
