#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/resonance.hpp"
#include "biphoton/sweep.hpp"
#include "biphoton/units.hpp"

namespace {

struct CommonFlags {
  std::string config;
  std::string out;
  std::string format;
  int threads = 0;
  int quad_order = 0;
  double tol = 0.0;
  bool timing = false;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "key=value configuration file");
  cmd->add_option("--out", f.out, "output file (sweep) or directory (figure); default stdout");
  cmd->add_option("--format", f.format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
  cmd->add_option("--threads", f.threads, "worker threads");
  cmd->add_option("--quad-order", f.quad_order, "Gauss-Hermite order per axis");
  cmd->add_option("--tol", f.tol, "Schmidt truncation tolerance");
  cmd->add_flag("--timing", f.timing, "append per-row wall-clock seconds");
  cmd->add_option("--set", f.overrides, "override a configuration key (key=value), repeatable");
}

void apply_flags(hom::SweepJob& job, const CommonFlags& f) {
  for (const auto& kv : f.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw hom::ConfigError("--set expects key=value, got '" + kv + "'");
    hom::apply_config_key(job, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (!f.format.empty()) hom::apply_config_key(job, "format", f.format);
  if (f.threads > 0) job.threads = f.threads;
  if (f.quad_order > 0) job.quad_order = f.quad_order;
  if (f.tol > 0.0) job.tol = f.tol;
}

void emit(const hom::SweepResult& res, std::ostream& out, bool timing) {
  if (res.job.format == hom::OutputFormat::csv)
    hom::write_csv(res, out, timing);
  else
    hom::write_jsonl(res, out, timing);
}

void write_to(const std::string& path, const hom::SweepResult& res, bool timing) {
  if (path.empty() || path == "-") {
    emit(res, std::cout, timing);
    return;
  }
  std::ofstream out(path);
  if (!out) throw hom::ConfigError("cannot write '" + path + "'");
  emit(res, out, timing);
}

int run_sweep_cmd(const CommonFlags& f) {
  hom::SweepJob job = f.config.empty() ? hom::default_job() : hom::parse_config_file(f.config);
  apply_flags(job, f);
  const hom::SweepResult res = hom::run_sweep(job);
  write_to(f.out.empty() ? job.output : f.out, res, f.timing);
  return 0;
}

int run_figure_cmd(const std::string& id, const CommonFlags& f) {
  std::vector<hom::SweepJob> jobs = hom::figure_job(hom::parse_figure(id));
  if (!f.out.empty()) std::filesystem::create_directories(f.out);
  bool first = true;
  for (auto& job : jobs) {
    apply_flags(job, f);
    const hom::SweepResult res = hom::run_sweep(job);
    if (f.out.empty()) {
      if (!first) std::cout << "\n";
      emit(res, std::cout, f.timing);
    } else {
      const std::string ext = job.format == hom::OutputFormat::csv ? ".csv" : ".jsonl";
      write_to((std::filesystem::path(f.out) / (job.name + ext)).string(), res, f.timing);
    }
    first = false;
  }
  return 0;
}

int run_resonance_cmd(const CommonFlags& f, int n, bool with_k) {
  hom::SweepJob job = f.config.empty() ? hom::default_job() : hom::parse_config_file(f.config);
  apply_flags(job, f);
  job.base.validate();
  hom::ResonanceReport r = hom::locate_resonance(job.base, n, with_k);
  const double b0 = hom::beta0(job.base.omega);
  std::printf("order_n=%d\n", r.order_n);
  std::printf("beta_seed_over_beta0=%.10f\n", r.beta_seed / b0);
  std::printf("beta_center_over_beta0=%.10f\n", r.beta_center / b0);
  std::printf("ds_at_center=%.12f\n", r.ds_at_center);
  try {
    r = hom::hwhm_ds(job.base, r);
    std::printf("ds_hwhm_beta_over_beta0=%.6e\n", r.hwhm_beta / b0);
    std::printf("ds_hwhm_epsilon=%.6e\n", r.hwhm_epsilon);
    std::printf("ds_hwhm_delta_l_nm=%.6f\n", r.hwhm_delta_l * 1e9);
  } catch (const hom::DomainError& e) {
    std::printf("ds_hwhm=unavailable (%s)\n", e.what());
    r = hom::ds_half_prominence(job.base, r);
  }
  if (r.ds_half_prominence_beta)
    std::printf("ds_half_prominence_beta_over_beta0=%.6e\n", *r.ds_half_prominence_beta / b0);
  if (with_k) {
    std::printf("k0=%.10f\n", r.k0);
    std::printf("k_at_center=%.10f\n", r.k_at_center);
    std::printf("k_ratio=%.10f\n", r.k_at_center / r.k0);
    r = hom::hwhm_k(job.base, r);
    if (r.k_hwhm_beta) std::printf("k_hwhm_beta_over_beta0=%.6e\n", *r.k_hwhm_beta / b0);
    if (r.k_hwhm_delta_l) std::printf("k_hwhm_delta_l_nm=%.6f\n", *r.k_hwhm_delta_l * 1e9);
    if (r.wing_dip_beta) std::printf("wing_dip_beta_over_beta0=%.6f\n", *r.wing_dip_beta / b0);
    if (r.wing_dip_depth) std::printf("wing_dip_depth_over_k0=%.6f\n", *r.wing_dip_depth / r.k0);
  }
  std::printf("hwhm_convention=%s\n", r.hwhm_convention.c_str());
  return 0;
}

int run_validate_cmd(const CommonFlags& f, int draws, double q) {
  hom::ValidateOptions opt;
  if (f.quad_order > 0) opt.quad_order = f.quad_order;
  if (f.threads > 0) opt.threads = f.threads;
  opt.draws = draws;
  opt.mehler_q = q;
  bool ok = true;
  for (const auto& c : hom::validate_suite(opt)) {
    std::printf("%s  %s: %s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
    ok = ok && c.passed;
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-photon interference and Schmidt analysis of modulated biphoton states"};
  app.set_version_flag("--version", std::string(hom::kLibraryVersion));
  app.require_subcommand(1);

  CommonFlags sweep_flags, figure_flags, res_flags, val_flags;
  auto* sweep = app.add_subcommand("sweep", "run a parameter sweep");
  add_common(sweep, sweep_flags);

  std::string fig_id;
  auto* figure = app.add_subcommand("figure", "reproduce a figure dataset (fig2, fig4, fig5, fig6, fig7)");
  figure->add_option("id", fig_id, "figure id")->required();
  add_common(figure, figure_flags);

  int order_n = 0;
  bool no_k = false;
  auto* resonance = app.add_subcommand("resonance", "locate the n-th resonance and its widths");
  add_common(resonance, res_flags);
  resonance->add_option("-n,--order", order_n, "resonance order")->check(CLI::NonNegativeNumber);
  resonance->add_flag("--no-k", no_k, "skip the Schmidt number");

  int draws = 100;
  double mehler_q = hom::ValidateOptions{}.mehler_q;
  auto* validate = app.add_subcommand("validate", "run the oracle and benchmark suite");
  validate->add_option("--quad-order", val_flags.quad_order, "quadrature order for the oracle");
  validate->add_option("--threads", val_flags.threads, "worker threads");
  validate->add_option("--draws", draws, "number of random draws");
  validate->add_option("--mehler-q", mehler_q, "q used by the Mehler identity check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*sweep) return run_sweep_cmd(sweep_flags);
    if (*figure) return run_figure_cmd(fig_id, figure_flags);
    if (*resonance) return run_resonance_cmd(res_flags, order_n, !no_k);
    if (*validate) return run_validate_cmd(val_flags, draws, mehler_q);
  } catch (const hom::ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
