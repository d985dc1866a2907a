#include "faberelast/cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <thread>

#include "faberelast/certify.hpp"
#include "faberelast/cli/config.hpp"
#include "faberelast/cli/csv.hpp"
#include "faberelast/density_solver.hpp"
#include "faberelast/errors.hpp"
#include "faberelast/field_eval.hpp"
#include "faberelast/oracle.hpp"

namespace faberelast::cli {

namespace {

struct Options {
  std::string config;
  int order = 0;
  int quadrature = 0;
  std::string out;
};

struct Job {
  JobConfig cfg;
  std::string prefix;
  ExteriorMap map;
  Material mat;
  FarFieldLoading loading;
};

std::string output_prefix(const Options& opt, const JobConfig& cfg) {
  std::string prefix = !opt.out.empty() ? opt.out : cfg.output_path;
  if (prefix.empty()) prefix = std::filesystem::path(opt.config).stem().string();
  const auto parent = std::filesystem::path(prefix).parent_path();
  if (!parent.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(parent, ec);
    if (ec) throw ConfigError("cannot create output directory '" + parent.string() + "'");
  }
  return prefix;
}

JobConfig load_config(const Options& opt) {
  JobConfig cfg = parse_config_file(opt.config);
  if (opt.order > 0) cfg.truncation_N = opt.order;
  if (opt.quadrature > 0) cfg.quadrature_Q = opt.quadrature;
  return cfg;
}

void require_univalent(const ExteriorMap& map) {
  const UnivalenceReport report = validate_univalence(map);
  if (!report.passed) throw UnivalenceError(report.summary());
}

Job prepare(const Options& opt) {
  Job job;
  job.cfg = load_config(opt);
  job.cfg.check();
  job.map = job.cfg.exterior_map();
  require_univalent(job.map);
  job.mat = job.cfg.material();
  job.loading = job.cfg.loading();
  job.prefix = output_prefix(opt, job.cfg);
  return job;
}

void write_solution(const std::string& prefix, const DensitySolution& sol) {
  CsvWriter csv(prefix + "_solution.csv", {"m", "re_s", "im_s", "re_t", "im_t"});
  for (int m = 1; m <= sol.order_N; ++m) {
    csv << m << sol.s_at(m).real() << sol.s_at(m).imag() << sol.t_at(m).real() << sol.t_at(m).imag();
    csv.end_row();
  }
}

void write_density(const std::string& prefix, const DensitySolution& sol, const ExteriorMap& map) {
  CsvWriter csv(prefix + "_density.csv", {"theta", "x", "y", "re_phi", "im_phi"});
  constexpr int kSamples = 256;
  for (int q = 0; q < kSamples; ++q) {
    const double theta = kTwoPi * q / kSamples;
    const cplx z = map.boundary_point(theta);
    const cplx phi = density_on_boundary(sol, map, theta);
    csv << theta << z.real() << z.imag() << phi.real() << phi.imag();
    csv.end_row();
  }
}

int cmd_solve(const Options& opt, std::ostream& out) {
  const Job job = prepare(opt);
  const int N = job.cfg.truncation_N;
  const DensitySolution sol = solve_full(job.map, job.loading, job.mat, N);
  const FaberTable table = build_faber(job.map, table_order_for(job.map, N));

  const double trans = transmission_residual(sol, table, job.loading, job.mat, 256);
  const double rot = rotation_constraint_residual(sol, job.map, job.loading, job.mat);
  const auto eq = equilibrium_residual(sol, job.map, job.cfg.quadrature_Q);
  const double eq_max = *std::max_element(eq.begin(), eq.end());

  write_solution(job.prefix, sol);
  write_density(job.prefix, sol, job.map);
  {
    CsvWriter csv(job.prefix + "_constants.csv", {"quantity", "value"});
    csv << "c1" << sol.c1;
    csv.end_row();
    csv << "c2" << sol.c2;
    csv.end_row();
    csv << "c3" << sol.c3;
    csv.end_row();
    csv << "N" << N;
    csv.end_row();
    csv << "transmission_residual" << trans;
    csv.end_row();
    csv << "torque_residual" << rot;
    csv.end_row();
    csv << "equilibrium_residual" << eq_max;
    csv.end_row();
  }

  const bool ok = trans < 1e-6 && rot < 1e-8 && eq_max < 1e-8;
  out << "c1 = " << format_double(sol.c1) << "\n"
      << "c2 = " << format_double(sol.c2) << "\n"
      << "c3 = " << format_double(sol.c3) << "\n"
      << std::scientific << std::setprecision(3) << "transmission residual " << trans << " (< 1e-6)\n"
      << "torque residual       " << rot << " (< 1e-8)\n"
      << "equilibrium residual  " << eq_max << " (< 1e-8)\n"
      << (ok ? "solve: ok" : "solve: residual check FAILED") << "\n"
      << "wrote " << job.prefix << "_solution.csv, _constants.csv, _density.csv\n";
  return ok ? kExitOk : kExitValidationFailure;
}

int cmd_field(const Options& opt, std::ostream& out) {
  const Job job = prepare(opt);
  if (!job.cfg.grid) throw ConfigError("field: config has no grid");
  const int N = job.cfg.truncation_N;
  const DensitySolution sol = solve_full(job.map, job.loading, job.mat, N);
  const FaberTable table = build_faber(job.map, table_order_for(job.map, N));
  const std::vector<FieldSample> samples =
      field_grid(sol, table, job.mat, job.loading, *job.cfg.grid, grid_threads());

  CsvWriter csv(job.prefix + "_field.csv",
                {"x", "y", "re_w", "im_w", "region", "re_u0", "im_u0", "re_S", "im_S", "re_u", "im_u"});
  int counts[4] = {0, 0, 0, 0};
  for (const FieldSample& s : samples) {
    ++counts[static_cast<int>(s.region)];
    csv << s.z.real() << s.z.imag() << s.w.real() << s.w.imag() << region_name(s.region) << s.u0.real()
        << s.u0.imag() << s.S.real() << s.S.imag() << s.u.real() << s.u.imag();
    csv.end_row();
  }
  out << "field: " << samples.size() << " samples (" << counts[0] << " interior, " << counts[1]
      << " boundary, " << counts[2] << " exterior, " << counts[3] << " ambiguous)\n"
      << "wrote " << job.prefix << "_field.csv\n";
  return kExitOk;
}

int cmd_validate(const Options& opt, std::ostream& out) {
  const JobConfig cfg = load_config(opt);
  cfg.check();
  const ExteriorMap map = cfg.exterior_map();
  require_univalent(map);
  const DensitySolution sol = solve_full(map, cfg.loading(), cfg.material(), cfg.truncation_N);
  const std::vector<CheckRow> rows = certify(map, cfg.loading(), cfg.material(), sol, cfg.quadrature_Q);

  bool ok = true;
  out << std::left << std::setw(36) << "check" << std::setw(14) << "value" << std::setw(14) << "threshold"
      << "result\n";
  for (const CheckRow& r : rows) {
    ok = ok && r.passed;
    out << std::left << std::setw(36) << r.name << std::scientific << std::setprecision(3) << std::setw(14)
        << r.value << std::setw(14) << r.threshold << (r.passed ? "PASS" : "FAIL") << "\n";
  }
  out << (ok ? "validate: all checks passed" : "validate: FAILED") << "\n";
  return ok ? kExitOk : kExitValidationFailure;
}

void write_matrix(const std::string& path, const Eigen::MatrixXcd& mat, int row0, int col0) {
  CsvWriter csv(path, {"m", "k", "re", "im"});
  for (Eigen::Index i = 0; i < mat.rows(); ++i) {
    for (Eigen::Index j = 0; j < mat.cols(); ++j) {
      csv << static_cast<int>(i) + row0 << static_cast<int>(j) + col0 << mat(i, j).real() << mat(i, j).imag();
      csv.end_row();
    }
  }
}

int cmd_faber_table(const Options& opt, std::ostream& out) {
  const JobConfig cfg = load_config(opt);
  if (cfg.map.empty()) throw ConfigError("map: missing (give at least a_0)");
  if (cfg.truncation_N < 1) throw ConfigError("N must be >= 1");
  const ExteriorMap map = cfg.exterior_map();
  const FaberTable table = build_faber(map, cfg.truncation_N);
  const std::string prefix = output_prefix(opt, cfg);

  write_matrix(prefix + "_faber_monomial.csv", table.monomial_coeffs(), 0, 0);
  write_matrix(prefix + "_grunsky.csv", table.grunsky(), 1, 1);
  write_matrix(prefix + "_gamma.csv", table.deriv_matrix(), 1, 1);
  {
    CsvWriter csv(prefix + "_gamma0.csv", {"m", "re", "im"});
    for (int m = 1; m <= table.order(); ++m) {
      csv << m << table.deriv_const()(m - 1).real() << table.deriv_const()(m - 1).imag();
      csv.end_row();
    }
  }
  out << "faber-table: order " << table.order() << ", map order " << map.order() << "\n"
      << "wrote " << prefix << "_faber_monomial.csv, _grunsky.csv, _gamma.csv, _gamma0.csv\n";
  return kExitOk;
}

}  // namespace

int grid_threads() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("FABERELAST_THREADS"); env && *env) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (*end != '\0' || cap < 1) throw ConfigError("FABERELAST_THREADS must be a positive integer");
    n = std::min<long>(n, cap);
  }
  return n;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rigid inclusion fields from Faber-polynomial series", "faberelast"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--config", opt.config, "job config file")->required()->check(CLI::ExistingFile);
  app.add_option("--order", opt.order, "truncation order N (overrides the config)")
      ->check(CLI::PositiveNumber);
  app.add_option("--quadrature", opt.quadrature, "quadrature size Q (overrides the config)")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", opt.out, "output path prefix (overrides the config)");

  auto* solve = app.add_subcommand("solve", "solve for the density and the rigid motion");
  auto* field = app.add_subcommand("field", "evaluate the displacement on the config grid");
  auto* validate = app.add_subcommand("validate", "run the certification checks");
  auto* table = app.add_subcommand("faber-table", "dump Faber, Grunsky and derivative tables");
  for (auto* sub : {solve, field, validate, table}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kExitConfigError;
  }

  try {
    if (*solve) return cmd_solve(opt, out);
    if (*field) return cmd_field(opt, out);
    if (*validate) return cmd_validate(opt, out);
    return cmd_faber_table(opt, out);
  } catch (const DegeneracyError& e) {
    err << "solver degeneracy: " << e.what() << "\n";
    return kExitDegeneracy;
  } catch (const NumericError& e) {
    err << "solver degeneracy: " << e.what() << "\n";
    return kExitDegeneracy;
  } catch (const TruncationError& e) {
    err << "truncation error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::logic_error& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidationFailure;
  }
}

}  // namespace faberelast::cli
