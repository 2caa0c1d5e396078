#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "biphoton/jsa.hpp"

namespace hom {

inline constexpr const char* kLibraryVersion = "1.0.0";

enum class SweepAxis { beta, k, sigma_p, delta_tau };
enum class GridSpacing { linear, log };
enum class OutputFormat { csv, jsonl };

enum class Estimator {
  ds_closed,       // closed_spdc for unmodulated states, closed_modulated for cosine
  ds_quadrature,
  ds_parity,
  ds_small_beta,
  k_exact,         // geometric spectrum of the unmodulated state
  k_numeric,       // diagonalization of the reduced density matrix
  k_perturbative,
  k_heuristic,
  k_approx,        // closed-form approximate Schmidt number
};

std::string to_string(SweepAxis a);
std::string to_string(Estimator e);
std::string to_string(OutputFormat f);
/// Accepts the short names above and the method names (closed_modulated, numeric_diag, ...).
Estimator parse_estimator(const std::string& name);

struct Grid {
  double min = 0.0;
  double max = 4.0;
  int count = 2001;
  GridSpacing spacing = GridSpacing::linear;

  std::vector<double> values() const;
};

/// Axis units: beta in units of beta0 = pi/(2 Omega); k is the unmodulated Schmidt number
/// (sets sigma_p); sigma_p as a multiple of sigma1; delta_tau in fs (moves tau2).
struct SweepJob {
  std::string name = "sweep";
  SpdcParams base;
  ModulationSpec modulation;
  SweepAxis axis = SweepAxis::beta;
  Grid grid;
  std::vector<Estimator> estimators;
  int quad_order = kDefaultPlaneOrder;
  double tol = 1e-10;
  int threads = 1;
  OutputFormat format = OutputFormat::csv;
  std::string output;  // empty: stdout

  /// Throws ConfigError.
  void validate() const;
};

struct SweepRow {
  double axis_value = 0.0;
  double beta = 0.0;  // s
  double sigma_p_ratio = 0.0;  // inf in the separable limit
  double k0 = 1.0;
  double delta_tau = 0.0;  // s
  std::map<Estimator, double> values;
  std::map<Estimator, std::string> methods;
  std::optional<double> p2c;
  int trunc_dim = 0;
  std::string error;
  double seconds = 0.0;
};

struct SweepResult {
  SweepJob job;
  std::vector<std::pair<std::string, std::string>> header;
  std::vector<SweepRow> rows;
};

/// Rows are computed independently (optionally on job.threads workers) and returned in grid order.
SweepResult run_sweep(const SweepJob& job);

void write_csv(const SweepResult& result, std::ostream& out, bool with_timing = false);
void write_jsonl(const SweepResult& result, std::ostream& out, bool with_timing = false);

enum class FigureId { fig2, fig4, fig5, fig6, fig7 };
FigureId parse_figure(const std::string& id);

/// Preconfigured figure datasets, one job per panel or curve.
std::vector<SweepJob> figure_job(FigureId id);

/// Reference parameters: sigma1 = sigma2 = 2 pi 10 THz, Omega = 2 pi 844.5 THz, sigma_p = 0.01 sigma1.
SpdcParams reference_params(double sigma_p_ratio = 0.01);

/// Reference parameters, cosine modulation, beta axis over [0, 4] beta0.
SweepJob default_job();
/// Plain-text key=value configuration. Unknown keys and malformed values throw ConfigError.
SweepJob parse_config(std::istream& in, SweepJob job = default_job());
SweepJob parse_config_file(const std::string& path, SweepJob job = default_job());
/// Applies one key=value pair; used by the config parser and by CLI overrides.
void apply_config_key(SweepJob& job, const std::string& key, const std::string& value);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidateOptions {
  int quad_order = kDefaultPlaneOrder;
  int draws = 100;
  double mehler_q = 0.6180339887498949;
  unsigned long long seed = 20240601ULL;
  int threads = 1;
};

/// Oracle equivalence, parity theorem, Mehler identity and resonance benchmarks.
std::vector<CheckResult> validate_suite(const ValidateOptions& options = {});

}  // namespace hom
