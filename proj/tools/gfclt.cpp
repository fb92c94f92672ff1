// gfclt: kernel-based central limit analysis from generating functions.
//
// Subcommands: analyze, coeffs, verify-defant, simulate.  Exit codes:
// 0 = pass, 1 = usage/config error, 2 = numerical/verification failure.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "gfclt/coeffs.hpp"
#include "gfclt/errors.hpp"
#include "gfclt/kernel.hpp"
#include "gfclt/kernel_io.hpp"
#include "gfclt/limits.hpp"
#include "gfclt/permlab.hpp"
#include "gfclt/report_io.hpp"
#include "gfclt/run_config.hpp"
#include "gfclt/series.hpp"
#include "gfclt/singularity.hpp"

namespace {

using nlohmann::json;

void write_output(const gfclt::RunConfig& cfg, const std::string& text) {
  if (cfg.out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(cfg.out_path, std::ios::binary);
  if (!out) throw gfclt::ConfigError("cannot open output file: " + cfg.out_path);
  out << text;
}

json base_report(const gfclt::RunConfig& cfg) {
  return json{{"command", cfg.command}, {"version", gfclt::kVersion}, {"config", cfg}};
}

json self_check_json(const gfclt::KernelDiagnostics& d) {
  return {{"max_eval_dev", d.max_eval_dev},
          {"g01_dev", d.g01_dev},
          {"gz01_dev", d.gz01_dev},
          {"tolerance", d.tolerance},
          {"passed", d.passed}};
}

json parse_kernel_spec_json(const std::string& path_or_inline) {
  size_t first = path_or_inline.find_first_not_of(" \t\r\n");
  std::string text = path_or_inline;
  if (first == std::string::npos || path_or_inline[first] != '{') {
    std::ifstream in(path_or_inline);
    if (!in) throw gfclt::ConfigError("cannot open kernel spec file: " + path_or_inline);
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw gfclt::ConfigError(std::string("kernel spec is not valid JSON: ") + e.what());
  }
}

void maybe_dump_series(const gfclt::RunConfig& cfg, const json& spec) {
  if (cfg.dump_series_path.empty()) return;
  std::string type = spec.value("type", "");
  gfclt::TruncatedSeries2 table;
  if (type == "defant") {
    table = gfclt::defant_fhat_series(spec.value("trunc", cfg.trunc));
  } else if (type == "series") {
    int m_max = 0, n_max = 0;
    for (const auto& row : spec.at("coeffs")) {
      m_max = std::max(m_max, row[0].get<int>());
      n_max = std::max(n_max, row[1].get<int>());
    }
    table = gfclt::TruncatedSeries2(m_max, n_max);
    for (const auto& row : spec.at("coeffs"))
      table.ref(row[0].get<int>(), row[1].get<int>()) +=
          gfclt::cplx{row[2].get<double>(), row[3].get<double>()};
  } else {
    throw gfclt::ConfigError("--dump-series requires a series-backed kernel");
  }
  std::ofstream out(cfg.dump_series_path);
  if (!out)
    throw gfclt::ConfigError("cannot open series dump file: " + cfg.dump_series_path);
  gfclt::write_series_csv(out, table);
}

int cmd_analyze(const gfclt::RunConfig& cfg) {
  json spec = parse_kernel_spec_json(cfg.kernel_spec);
  auto kernel = gfclt::kernel_from_json(spec, cfg.trunc);
  maybe_dump_series(cfg, spec);

  gfclt::KernelDiagnostics diag = gfclt::kernel_self_check(*kernel);
  json report = base_report(cfg);
  report["self_check"] = self_check_json(diag);
  if (!diag.passed) {
    write_output(cfg, report.dump(2));
    std::cerr << "analyze: kernel self-check failed\n";
    return 2;
  }
  gfclt::LimitParams lp = gfclt::compute_limits(*kernel);
  report.update(gfclt::limit_params_json(lp));

  if (cfg.out_format == "csv") {
    std::ostringstream os;
    os << "key,value\n" << std::setprecision(17);
    for (size_t j = 0; j < lp.mu.size(); ++j) os << "mu_" << j << ',' << lp.mu[j] << '\n';
    for (size_t j = 0; j < lp.mu.size(); ++j)
      for (size_t l = 0; l < lp.mu.size(); ++l)
        os << "sigma_" << j << '_' << l << ',' << lp.sigma[j][l] << '\n';
    os << "imag_residue," << lp.imag_residue << '\n';
    os << "psd_slack," << lp.psd_slack << '\n';
    write_output(cfg, os.str());
  } else {
    write_output(cfg, report.dump(2));
  }
  return 0;
}

int cmd_coeffs(const gfclt::RunConfig& cfg) {
  json spec = parse_kernel_spec_json(cfg.kernel_spec);
  auto kernel = gfclt::kernel_from_json(spec, cfg.trunc);
  maybe_dump_series(cfg, spec);

  json report = base_report(cfg);
  json probes = json::array();
  std::vector<gfclt::PhiSequence> csv_seqs;
  for (double xp : cfg.x_probe) {
    std::vector<double> x(kernel->dim(), 0.0);
    x[0] = xp;
    gfclt::PhiSequence ser = gfclt::phi_by_series(*kernel, x, cfg.n_max);
    gfclt::Singularity sing = gfclt::track_root(*kernel, x);
    double r = cfg.quad_r > 0.0 ? cfg.quad_r : 0.9 * std::abs(sing.b);
    if (r >= std::abs(sing.b))
      throw gfclt::QuadratureDomainError(
          "coeffs: quadrature radius encloses the pole at |b| = " +
          std::to_string(std::abs(sing.b)));
    gfclt::PhiSequence quad = gfclt::phi_by_quadrature(*kernel, x, cfg.n_max, r);
    gfclt::DecayFitReport decay = gfclt::decay_rate_check(*kernel, x, cfg.n_max);

    json probe{{"x", x}, {"quad_r", r}};
    auto col = [](const std::vector<gfclt::cplx>& v) {
      json a = json::array();
      for (const auto& c : v) a.push_back({c.real(), c.imag()});
      return a;
    };
    probe["series"] = col(ser.values);
    probe["quadrature"] = col(quad.values);
    std::vector<gfclt::cplx> principal(ser.values.size());
    for (size_t n = 0; n < principal.size(); ++n)
      principal[n] = gfclt::principal_part_phi(sing, static_cast<int>(n));
    probe["principal"] = col(principal);
    probe["singularity"] = gfclt::singularity_report_json(sing, &decay);
    double dual_dev = 0.0;
    for (size_t n = 0; n < ser.values.size(); ++n)
      dual_dev = std::max(dual_dev, std::abs(ser.values[n] - quad.values[n]));
    probe["dual_path_dev"] = dual_dev;
    probes.push_back(std::move(probe));

    csv_seqs.push_back(std::move(ser));
    csv_seqs.push_back(std::move(quad));
  }
  report["probes"] = std::move(probes);

  if (cfg.out_format == "csv") {
    if (cfg.x_probe.size() != 1)
      throw gfclt::ConfigError("coeffs: csv output supports exactly one --x probe");
    std::ostringstream os;
    gfclt::write_phi_csv(os, csv_seqs);
    write_output(cfg, os.str());
  } else {
    write_output(cfg, report.dump(2));
  }
  return 0;
}

int cmd_verify_defant(const gfclt::RunConfig& cfg) {
  const double euler = std::exp(1.0);
  const double mu_expected = 3.0 - euler;
  const double sigma_expected = 2.0 + 2.0 * euler - euler * euler;

  auto kernel = gfclt::make_defant_kernel(cfg.trunc);
  json report = base_report(cfg);
  json checks = json::array();
  bool all_pass = true;

  gfclt::KernelDiagnostics diag = gfclt::kernel_self_check(*kernel);
  checks.push_back({{"name", "kernel_self_check"},
                    {"pass", diag.passed},
                    {"detail", self_check_json(diag)}});
  all_pass = all_pass && diag.passed;

  gfclt::LimitParams lp = gfclt::compute_limits(*kernel);
  double mu_err = std::abs(lp.mu[0] - mu_expected);
  double sigma_err = std::abs(lp.sigma[0][0] - sigma_expected);
  checks.push_back({{"name", "limit_mu"},
                    {"pass", mu_err < 1e-8},
                    {"detail", {{"mu", lp.mu[0]}, {"expected", mu_expected}, {"error", mu_err}}}});
  checks.push_back({{"name", "limit_sigma"},
                    {"pass", sigma_err < 1e-7},
                    {"detail",
                     {{"sigma", lp.sigma[0][0]},
                      {"expected", sigma_expected},
                      {"error", sigma_err}}}});
  all_pass = all_pass && mu_err < 1e-8 && sigma_err < 1e-7;

  gfclt::IdentityReport ident = gfclt::verify_descent_identity(cfg.identity_n_max);
  checks.push_back({{"name", "descent_identity"},
                    {"pass", ident.pass},
                    {"detail", gfclt::identity_report_json(ident)}});
  all_pass = all_pass && ident.pass;

  // truncation stability: compare against trunc+8 at fixed sample points
  {
    auto finer = gfclt::make_defant_kernel(cfg.trunc + 8);
    double worst = 0.0;
    std::uint64_t state = 88172645463325252ULL;  // xorshift64 point generator
    auto next_unit = [&state]() {
      state ^= state << 13;
      state ^= state >> 7;
      state ^= state << 17;
      return static_cast<double>(state >> 11) / 9007199254740992.0;
    };
    for (int i = 0; i < 16; ++i) {
      std::vector<double> x{(next_unit() - 0.5)};
      gfclt::cplx z = 1.05 * next_unit() *
                      std::exp(gfclt::cplx{0.0, 2.0 * 3.141592653589793 * next_unit()});
      worst = std::max(worst, std::abs(kernel->eval(x, z) - finer->eval(x, z)));
    }
    bool stable = worst < 1e-10;
    checks.push_back({{"name", "truncation_stability"},
                      {"pass", stable},
                      {"warning", !stable},
                      {"detail", {{"max_dev", worst}, {"trunc", cfg.trunc}}}});
    if (!stable)
      std::cerr << "verify-defant: truncation-stability warning (max dev " << worst
                << " at trunc " << cfg.trunc << ")\n";
    // a deliberately low trunc is reported but does not fail the run
  }

  // Monte Carlo weak-convergence trend
  {
    json ks_rows = json::array();
    std::vector<double> ks_vals;
    for (int n : cfg.n_grid) {
      gfclt::DistTable t = gfclt::mc_distribution(n, cfg.samples, cfg.seed);
      double ks = gfclt::ks_to_normal(t, lp.mu[0], lp.sigma[0][0]);
      ks_vals.push_back(ks);
      ks_rows.push_back({{"n", n},
                         {"ks", ks},
                         {"mean_over_n", t.mean() / n},
                         {"var_over_n", t.variance() / n}});
    }
    bool nonincreasing = true;
    for (size_t i = 1; i < ks_vals.size(); ++i)
      nonincreasing = nonincreasing && ks_vals[i] <= ks_vals[i - 1] + 1e-12;
    bool converged = !ks_vals.empty() && ks_vals.back() < 0.05 &&
                     ks_vals.back() <= ks_vals.front();
    checks.push_back({{"name", "ks_convergence"},
                      {"pass", converged},
                      {"nonincreasing", nonincreasing},
                      {"detail", ks_rows}});
    all_pass = all_pass && converged;
  }

  report["checks"] = std::move(checks);
  report["pass"] = all_pass;
  write_output(cfg, report.dump(2));
  return all_pass ? 0 : 2;
}

int cmd_simulate(const gfclt::RunConfig& cfg) {
  int n = cfg.n_max;
  bool exact = cfg.exact && n <= 10;
  gfclt::DistTable t =
      exact ? gfclt::exact_distribution(n) : gfclt::mc_distribution(n, cfg.samples, cfg.seed);

  const double euler = std::exp(1.0);
  double mu_ref = 3.0 - euler;
  double sigma2_ref = 2.0 + 2.0 * euler - euler * euler;

  json report = base_report(cfg);
  report["table"] = gfclt::dist_table_json(t);
  report["summary"] = {{"mean_over_n", t.mean() / n},
                       {"var_over_n", t.variance() / n},
                       {"ks_to_normal", gfclt::ks_to_normal(t, mu_ref, sigma2_ref)}};

  if (cfg.out_format == "csv") {
    std::ostringstream os;
    gfclt::write_dist_table_csv(os, t);
    write_output(cfg, os.str());
  } else {
    write_output(cfg, report.dump(2));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generating-function central limit toolkit"};
  app.require_subcommand(1);
  gfclt::RunConfig cfg;

  auto add_common = [&cfg](CLI::App* sub, bool needs_kernel) {
    if (needs_kernel)
      sub->add_option("--kernel", cfg.kernel_spec, "kernel spec (JSON file or inline)")
          ->required();
    sub->add_option("--n-max", cfg.n_max, "max coefficient index / permutation size");
    sub->add_option("--x", cfg.x_probe, "probe frequencies");
    sub->add_option("--samples", cfg.samples, "Monte Carlo sample count");
    sub->add_option("--seed", cfg.seed, "RNG seed");
    sub->add_option("--trunc", cfg.trunc, "series truncation order");
    sub->add_option("--out", cfg.out_path, "output path (default stdout)");
    sub->add_option("--format", cfg.out_format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--dump-series", cfg.dump_series_path,
                    "write the kernel's coefficient table as CSV to this path");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "limit parameters from a kernel");
  add_common(analyze, true);

  CLI::App* coeffs = app.add_subcommand(
      "coeffs", "characteristic-function coefficients by series and quadrature");
  add_common(coeffs, true);
  coeffs->add_option("--r", cfg.quad_r, "quadrature radius (default 0.9 |b(x)|)");

  CLI::App* verify =
      app.add_subcommand("verify-defant", "consolidated stack-sorting verification");
  add_common(verify, false);
  verify->add_option("--n-grid", cfg.n_grid, "permutation sizes for the MC trend");
  verify->add_option("--identity-n-max", cfg.identity_n_max,
                     "descent identity depth (<= 10)");

  CLI::App* simulate =
      app.add_subcommand("simulate", "distribution of the stack-sorting statistic");
  add_common(simulate, false);
  simulate->add_flag("--exact", cfg.exact, "exhaustive table (requires --n-max <= 10)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*analyze) {
      cfg.command = "analyze";
      return cmd_analyze(cfg);
    }
    if (*coeffs) {
      cfg.command = "coeffs";
      return cmd_coeffs(cfg);
    }
    if (*verify) {
      cfg.command = "verify-defant";
      return cmd_verify_defant(cfg);
    }
    cfg.command = "simulate";
    return cmd_simulate(cfg);
  } catch (const gfclt::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const gfclt::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
