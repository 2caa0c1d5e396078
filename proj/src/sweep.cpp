#include "biphoton/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "biphoton/errors.hpp"
#include "biphoton/schmidt.hpp"
#include "biphoton/symmetry.hpp"
#include "biphoton/units.hpp"

namespace hom {

namespace {

const std::vector<std::pair<Estimator, std::string>>& estimator_names() {
  static const std::vector<std::pair<Estimator, std::string>> names = {
      {Estimator::ds_closed, "ds_closed"},           {Estimator::ds_quadrature, "ds_quadrature"},
      {Estimator::ds_parity, "ds_parity"},           {Estimator::ds_small_beta, "ds_small_beta"},
      {Estimator::k_exact, "k_exact"},               {Estimator::k_numeric, "k_numeric"},
      {Estimator::k_perturbative, "k_perturbative"}, {Estimator::k_heuristic, "k_heuristic"},
      {Estimator::k_approx, "k_approx"},
  };
  return names;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (trim(v.substr(used)).empty() && std::isfinite(d)) return d;
  } catch (const std::exception&) {
  }
  throw ConfigError("invalid number for " + key + ": '" + v + "'");
}

int parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long long d = std::stoll(v, &used);
    if (trim(v.substr(used)).empty() && d >= INT32_MIN && d <= INT32_MAX) return static_cast<int>(d);
  } catch (const std::exception&) {
  }
  throw ConfigError("invalid integer for " + key + ": '" + v + "'");
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

std::string sigma_p_ratio_text(const SpdcParams& p) {
  return p.sigma_p.is_infinite() ? "inf" : fmt_double(p.sigma_p.value() / p.sigma1);
}

std::string kind_name(ModulationKind k) {
  switch (k) {
    case ModulationKind::none: return "none";
    case ModulationKind::cosine: return "cosine";
    case ModulationKind::sine: return "sine";
  }
  return "none";
}

}  // namespace

std::string to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::beta: return "beta";
    case SweepAxis::k: return "k";
    case SweepAxis::sigma_p: return "sigma_p";
    case SweepAxis::delta_tau: return "delta_tau";
  }
  return "beta";
}

std::string to_string(Estimator e) {
  for (const auto& [k, name] : estimator_names())
    if (k == e) return name;
  return "unknown";
}

std::string to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "jsonl"; }

Estimator parse_estimator(const std::string& raw) {
  const std::string name = trim(raw);
  for (const auto& [k, n] : estimator_names())
    if (n == name) return k;
  static const std::map<std::string, Estimator> aliases = {
      {"closed_spdc", Estimator::ds_closed},         {"closed_modulated", Estimator::ds_closed},
      {"quadrature", Estimator::ds_quadrature},      {"parity_series", Estimator::ds_parity},
      {"small_beta", Estimator::ds_small_beta},      {"exact_geometric", Estimator::k_exact},
      {"numeric_diag", Estimator::k_numeric},        {"schmidt_numeric", Estimator::k_numeric},
      {"perturbative", Estimator::k_perturbative},   {"heuristic", Estimator::k_heuristic},
      {"approx_k_closed", Estimator::k_approx},      {"approx_closed", Estimator::k_approx},
  };
  const auto it = aliases.find(name);
  if (it == aliases.end()) throw ConfigError("unknown estimator '" + name + "'");
  return it->second;
}

std::vector<double> Grid::values() const {
  std::vector<double> v(count);
  for (int i = 0; i < count; ++i) {
    const double t = count > 1 ? double(i) / (count - 1) : 0.0;
    v[i] = spacing == GridSpacing::linear ? min + t * (max - min)
                                          : std::exp(std::log(min) + t * (std::log(max) - std::log(min)));
  }
  if (count > 1) v.back() = max;
  return v;
}

void SweepJob::validate() const {
  if (grid.count < 2 || grid.count > 1'000'000) throw ConfigError("grid count must be in [2, 1e6]");
  if (!(grid.min < grid.max)) throw ConfigError("grid min must be below max");
  if (grid.spacing == GridSpacing::log && !(grid.min > 0.0)) throw ConfigError("log spacing requires min > 0");
  if (estimators.empty()) throw ConfigError("no estimators requested");
  if (quad_order < 2 || quad_order > kMaxHermiteOrder)
    throw ConfigError("quad_order must be in [2, " + std::to_string(kMaxHermiteOrder) + "]");
  if (!(tol > 0.0) || !(tol < 1.0)) throw ConfigError("tol must be in (0, 1)");
  if (threads < 1) throw ConfigError("threads must be positive");
  try {
    base.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (axis == SweepAxis::beta && modulation.kind == ModulationKind::none)
    throw ConfigError("a beta sweep needs modulation_kind cosine or sine");
  if (axis == SweepAxis::beta && grid.min < 0.0) throw ConfigError("beta must be non-negative");
  if (axis == SweepAxis::k && !(grid.min > 1.0)) throw ConfigError("k axis requires values above 1");
  if (axis == SweepAxis::sigma_p && !(grid.min > 0.0)) throw ConfigError("sigma_p axis requires positive values");
  const ModulationKind kind = modulation.kind;
  for (Estimator e : estimators) {
    const std::string n = to_string(e);
    switch (e) {
      case Estimator::ds_small_beta:
      case Estimator::k_approx:
        if (kind != ModulationKind::cosine) throw ConfigError(n + " requires cosine modulation");
        break;
      case Estimator::ds_closed:
      case Estimator::k_numeric:
      case Estimator::k_perturbative:
      case Estimator::k_heuristic:
        if (kind == ModulationKind::sine) throw ConfigError(n + " is not available for sine modulation");
        break;
      default:
        break;
    }
  }
}

namespace {

SpdcParams row_params(const SweepJob& job, double v, ModulationSpec& mod) {
  SpdcParams p = job.base;
  mod = job.modulation;
  switch (job.axis) {
    case SweepAxis::beta:
      mod.beta = v * beta0(p.omega);
      break;
    case SweepAxis::k:
      p.sigma_p = sigma_p_from_k(v, p.sigma1, p.sigma2);
      break;
    case SweepAxis::sigma_p:
      p.sigma_p = PumpWidth(v * p.sigma1);
      break;
    case SweepAxis::delta_tau:
      p.tau2 = p.tau1 + fs(v);
      break;
  }
  return p;
}

SweepRow compute_row(const SweepJob& job, double v) {
  const auto t0 = std::chrono::steady_clock::now();
  SweepRow row;
  row.axis_value = v;
  ModulationSpec mod;
  std::vector<std::string> errors;
  try {
    const SpdcParams p = row_params(job, v, mod);
    row.beta = mod.effective_beta();
    row.sigma_p_ratio = p.sigma_p.is_infinite() ? INFINITY : p.sigma_p.value() / p.sigma1;
    row.k0 = schmidt_number_closed(p);
    row.delta_tau = p.delta_tau();
    const BiphotonState st = normalize(p, mod, job.quad_order);
    TruncationPolicy policy;
    policy.tol = job.tol;
    for (Estimator e : job.estimators) {
      try {
        double value = NAN;
        std::string method = to_string(e);
        switch (e) {
          case Estimator::ds_closed:
            if (mod.kind == ModulationKind::none) {
              value = ds_closed_spdc(p).d_s;
              method = "closed_spdc";
            } else {
              value = ds_closed_modulated(st).d_s;
              method = "closed_modulated";
            }
            break;
          case Estimator::ds_quadrature:
            value = ds_quadrature(st, job.quad_order).d_s;
            method = "quadrature";
            break;
          case Estimator::ds_parity:
            value = ds_parity_series(st).d_s;
            method = "parity_series";
            break;
          case Estimator::ds_small_beta: {
            const ApproxValue a = ds_small_beta_approx(st, mod.beta);
            value = a.value;
            method = a.regime_warning ? "small_beta(regime_warning)" : "small_beta";
            break;
          }
          case Estimator::k_exact: {
            const SchmidtSpectrum s = schmidt_standard(p, job.tol);
            value = s.k;
            method = "exact_geometric";
            break;
          }
          case Estimator::k_numeric: {
            const SchmidtSpectrum s = schmidt_numeric(st, policy);
            value = s.k;
            row.trunc_dim = std::max(row.trunc_dim, s.truncation);
            method = "numeric_diag";
            break;
          }
          case Estimator::k_perturbative: {
            const SchmidtSpectrum s = schmidt_perturbative(st, 0, policy);
            value = s.k;
            row.trunc_dim = std::max(row.trunc_dim, s.truncation);
            method = "perturbative";
            break;
          }
          case Estimator::k_heuristic: {
            const SchmidtSpectrum s = schmidt_heuristic(st, 0, policy);
            value = s.k;
            row.trunc_dim = std::max(row.trunc_dim, s.truncation);
            method = "heuristic";
            break;
          }
          case Estimator::k_approx:
            value = approx_k_closed(st);
            method = "approx_closed";
            break;
        }
        if (!std::isfinite(value)) throw Error("non-finite result");
        row.values[e] = value;
        row.methods[e] = method;
      } catch (const std::exception& ex) {
        errors.push_back(to_string(e) + ": " + ex.what());
      }
    }
    for (Estimator e : {Estimator::ds_closed, Estimator::ds_quadrature, Estimator::ds_parity, Estimator::ds_small_beta}) {
      const auto it = row.values.find(e);
      if (it != row.values.end()) {
        row.p2c = 0.5 * (1.0 - it->second);
        break;
      }
    }
  } catch (const std::exception& ex) {
    errors.push_back(std::string("state: ") + ex.what());
  }
  for (std::size_t i = 0; i < errors.size(); ++i) row.error += (i ? "; " : "") + errors[i];
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

}  // namespace

SweepResult run_sweep(const SweepJob& job) {
  job.validate();
  SweepResult res;
  res.job = job;
  const std::vector<double> values = job.grid.values();
  res.rows.resize(values.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < values.size(); i = next++) res.rows[i] = compute_row(job, values[i]);
  };
  const int nthreads = std::min<int>(job.threads, static_cast<int>(values.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  const SpdcParams& b = job.base;
  int max_dim = 0;
  for (const auto& r : res.rows) max_dim = std::max(max_dim, r.trunc_dim);
  std::string est;
  for (std::size_t i = 0; i < job.estimators.size(); ++i) est += (i ? "," : "") + to_string(job.estimators[i]);
  auto& h = res.header;
  h = {{"library_version", kLibraryVersion},
       {"job", job.name},
       {"axis", to_string(job.axis)},
       {"grid_min", fmt_double(job.grid.min)},
       {"grid_max", fmt_double(job.grid.max)},
       {"grid_count", std::to_string(job.grid.count)},
       {"grid_spacing", job.grid.spacing == GridSpacing::linear ? "linear" : "log"},
       {"sigma1_thz", fmt_double(angular_to_thz(b.sigma1))},
       {"sigma2_thz", fmt_double(angular_to_thz(b.sigma2))},
       {"sigma_p_ratio", sigma_p_ratio_text(b)},
       {"omega_thz", fmt_double(angular_to_thz(b.omega))},
       {"tau1_fs", fmt_double(b.tau1 * 1e15)},
       {"tau2_fs", fmt_double(b.tau2 * 1e15)},
       {"modulation_kind", kind_name(job.modulation.kind)},
       {"beta_as", fmt_double(job.modulation.beta * 1e18)},
       {"beta0_s", fmt_double(beta0(b.omega))},
       {"estimators", est},
       {"quad_order", std::to_string(job.quad_order)},
       {"series_coefficients", "closed-form Hermite moments"},
       {"parity_series_tol", fmt_double(1e-12)},
       {"truncation_tol", fmt_double(job.tol)},
       {"truncation_cap", "4000"},
       {"trace_tol", fmt_double(1e-8)},
       {"max_trunc_dim", std::to_string(max_dim)}};
  return res;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string methods_text(const SweepRow& r, const SweepJob& job) {
  std::string s;
  for (Estimator e : job.estimators) {
    const auto it = r.methods.find(e);
    if (it == r.methods.end()) continue;
    if (!s.empty()) s += ';';
    s += to_string(e) + "=" + it->second;
  }
  return s;
}

}  // namespace

void write_csv(const SweepResult& res, std::ostream& out, bool with_timing) {
  for (const auto& [k, v] : res.header) out << "# " << k << "=" << v << "\n";
  const SweepJob& job = res.job;
  const double b0 = beta0(job.base.omega);
  out << "axis_value,beta_s,beta_over_beta0,delta_l_nm,sigma_p_ratio,k0,delta_tau_fs";
  for (Estimator e : job.estimators) out << "," << to_string(e);
  out << ",p2c,trunc_dim,methods,error";
  if (with_timing) out << ",row_seconds";
  out << "\n";
  for (const auto& r : res.rows) {
    out << fmt_double(r.axis_value) << "," << fmt_double(r.beta) << "," << fmt_double(r.beta / b0) << ","
        << fmt_double(beta_to_delta_l(r.beta) * 1e9) << ","
        << (std::isinf(r.sigma_p_ratio) ? std::string("inf") : fmt_double(r.sigma_p_ratio)) << ","
        << fmt_double(r.k0) << "," << fmt_double(r.delta_tau * 1e15);
    for (Estimator e : job.estimators) {
      const auto it = r.values.find(e);
      out << "," << (it == r.values.end() ? std::string("ERR") : fmt_double(it->second));
    }
    out << "," << (r.p2c ? fmt_double(*r.p2c) : std::string("ERR")) << "," << r.trunc_dim << ","
        << csv_field(methods_text(r, job)) << "," << csv_field(r.error);
    if (with_timing) out << "," << fmt_double(r.seconds);
    out << "\n";
  }
}

void write_jsonl(const SweepResult& res, std::ostream& out, bool with_timing) {
  nlohmann::ordered_json head;
  head["record"] = "header";
  for (const auto& [k, v] : res.header) head[k] = v;
  out << head.dump() << "\n";
  const double b0 = beta0(res.job.base.omega);
  for (const auto& r : res.rows) {
    nlohmann::ordered_json j;
    j["record"] = "row";
    j["axis_value"] = r.axis_value;
    j["beta_s"] = r.beta;
    j["beta_over_beta0"] = r.beta / b0;
    j["delta_l_nm"] = beta_to_delta_l(r.beta) * 1e9;
    if (std::isinf(r.sigma_p_ratio))
      j["sigma_p_ratio"] = "inf";
    else
      j["sigma_p_ratio"] = r.sigma_p_ratio;
    j["k0"] = r.k0;
    j["delta_tau_fs"] = r.delta_tau * 1e15;
    for (Estimator e : res.job.estimators) {
      const auto it = r.values.find(e);
      j[to_string(e)] = it == r.values.end() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(it->second);
    }
    j["p2c"] = r.p2c ? nlohmann::ordered_json(*r.p2c) : nlohmann::ordered_json(nullptr);
    j["trunc_dim"] = r.trunc_dim;
    j["methods"] = methods_text(r, res.job);
    j["error"] = r.error;
    if (with_timing) j["row_seconds"] = r.seconds;
    out << j.dump() << "\n";
  }
}

SpdcParams reference_params(double sigma_p_ratio) {
  const double s = thz_to_angular(10.0);
  SpdcParams p;
  p.sigma1 = s;
  p.sigma2 = s;
  p.sigma_p = std::isinf(sigma_p_ratio) ? PumpWidth::infinite() : PumpWidth(sigma_p_ratio * s);
  p.omega = thz_to_angular(844.5);
  return p;
}

SweepJob default_job() {
  SweepJob job;
  job.base = reference_params(0.01);
  job.modulation = ModulationSpec{ModulationKind::cosine, 0.0};
  job.axis = SweepAxis::beta;
  job.grid = Grid{0.0, 4.0, 2001, GridSpacing::linear};
  job.estimators = {Estimator::ds_closed};
  return job;
}

FigureId parse_figure(const std::string& id) {
  static const std::map<std::string, FigureId> ids = {{"fig2", FigureId::fig2}, {"fig4", FigureId::fig4},
                                                      {"fig5", FigureId::fig5}, {"fig6", FigureId::fig6},
                                                      {"fig7", FigureId::fig7}};
  const auto it = ids.find(id);
  if (it == ids.end()) throw ConfigError("unknown figure id '" + id + "'");
  return it->second;
}

std::vector<SweepJob> figure_job(FigureId id) {
  std::vector<SweepJob> jobs;
  auto window_name = [](double lo, double hi) {
    return std::to_string(static_cast<int>(lo)) + "_" + std::to_string(static_cast<int>(hi));
  };
  auto ratio_name = [](double r) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%g", r);
    return std::string(buf);
  };
  switch (id) {
    case FigureId::fig2:
      for (double r : {1.0, 2.0, 3.0, 5.0}) {
        SweepJob j = default_job();
        j.name = "fig2_r" + ratio_name(r);
        j.base.sigma2 = r * j.base.sigma1;
        j.base.tau1 = j.base.tau2 = 0.0;
        j.modulation = ModulationSpec{};
        j.axis = SweepAxis::k;
        j.grid = Grid{1.001, 10.0, 1000, GridSpacing::linear};
        j.estimators = {Estimator::ds_closed, Estimator::k_exact};
        jobs.push_back(j);
      }
      break;
    case FigureId::fig4:
      for (auto [lo, hi] : {std::pair{0.0, 4.0}, std::pair{20.0, 24.0}, std::pair{80.0, 84.0}}) {
        SweepJob j = default_job();
        j.name = "fig4_beta" + window_name(lo, hi);
        j.grid = Grid{lo, hi, 2001, GridSpacing::linear};
        j.estimators = {Estimator::ds_closed};
        jobs.push_back(j);
      }
      break;
    case FigureId::fig5:
    case FigureId::fig7:
      for (double rp : {1.0, 0.1, 0.01}) {
        for (auto [lo, hi] : {std::pair{0.0, 4.0}, std::pair{80.0, 84.0}}) {
          SweepJob j = default_job();
          j.base = reference_params(rp);
          j.name = std::string(id == FigureId::fig5 ? "fig5" : "fig7") + "_sp" + ratio_name(rp) + "_beta" +
                   window_name(lo, hi);
          j.grid = Grid{lo, hi, 2001, GridSpacing::linear};
          j.estimators = id == FigureId::fig5 ? std::vector<Estimator>{Estimator::ds_closed, Estimator::k_numeric}
                                              : std::vector<Estimator>{Estimator::k_numeric, Estimator::k_approx};
          jobs.push_back(j);
        }
      }
      break;
    case FigureId::fig6: {
      SweepJob j = default_job();
      j.name = "fig6";
      j.modulation = ModulationSpec{ModulationKind::cosine, beta0(j.base.omega)};
      j.axis = SweepAxis::k;
      j.grid = Grid{1.001, 12.0, 1000, GridSpacing::linear};
      j.estimators = {Estimator::ds_closed, Estimator::k_exact};
      jobs.push_back(j);
      break;
    }
  }
  return jobs;
}

void apply_config_key(SweepJob& job, const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (key == "sigma1_thz") {
    job.base.sigma1 = thz_to_angular(parse_double(key, v));
  } else if (key == "sigma2_thz") {
    job.base.sigma2 = thz_to_angular(parse_double(key, v));
  } else if (key == "sigma_p_ratio") {
    if (v == "inf" || v == "infinite")
      job.base.sigma_p = PumpWidth::infinite();
    else
      job.base.sigma_p = PumpWidth(parse_double(key, v) * job.base.sigma1);
  } else if (key == "omega_thz") {
    job.base.omega = thz_to_angular(parse_double(key, v));
  } else if (key == "tau1_fs") {
    job.base.tau1 = fs(parse_double(key, v));
  } else if (key == "tau2_fs") {
    job.base.tau2 = fs(parse_double(key, v));
  } else if (key == "modulation_kind") {
    if (v == "none")
      job.modulation.kind = ModulationKind::none;
    else if (v == "cosine")
      job.modulation.kind = ModulationKind::cosine;
    else if (v == "sine")
      job.modulation.kind = ModulationKind::sine;
    else
      throw ConfigError("modulation_kind must be none, cosine or sine");
  } else if (key == "beta_as") {
    job.modulation.beta = as(parse_double(key, v));
  } else if (key == "delta_l_nm") {
    job.modulation.beta = delta_l_to_beta(nm(parse_double(key, v)));
  } else if (key == "axis") {
    if (v == "beta")
      job.axis = SweepAxis::beta;
    else if (v == "k")
      job.axis = SweepAxis::k;
    else if (v == "sigma_p")
      job.axis = SweepAxis::sigma_p;
    else if (v == "delta_tau")
      job.axis = SweepAxis::delta_tau;
    else
      throw ConfigError("axis must be beta, k, sigma_p or delta_tau");
  } else if (key == "min") {
    job.grid.min = parse_double(key, v);
  } else if (key == "max") {
    job.grid.max = parse_double(key, v);
  } else if (key == "count") {
    job.grid.count = parse_int(key, v);
  } else if (key == "spacing") {
    if (v == "linear")
      job.grid.spacing = GridSpacing::linear;
    else if (v == "log")
      job.grid.spacing = GridSpacing::log;
    else
      throw ConfigError("spacing must be linear or log");
  } else if (key == "estimators") {
    job.estimators.clear();
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!trim(item).empty()) job.estimators.push_back(parse_estimator(item));
  } else if (key == "quad_order") {
    job.quad_order = parse_int(key, v);
  } else if (key == "tol") {
    job.tol = parse_double(key, v);
  } else if (key == "threads") {
    job.threads = parse_int(key, v);
  } else if (key == "format") {
    if (v == "csv")
      job.format = OutputFormat::csv;
    else if (v == "jsonl")
      job.format = OutputFormat::jsonl;
    else
      throw ConfigError("format must be csv or jsonl");
  } else if (key == "output") {
    job.output = v;
  } else if (key == "name") {
    job.name = v;
  } else {
    throw ConfigError("unknown configuration key '" + key + "'");
  }
}

SweepJob parse_config(std::istream& in, SweepJob job) {
  std::string line;
  int lineno = 0;
  std::set<std::string> seen;
  std::vector<std::pair<std::string, std::string>> entries;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (!seen.insert(key).second) throw ConfigError("duplicate key '" + key + "'");
    entries.emplace_back(key, line.substr(eq + 1));
  }
  if (seen.count("beta_as") && seen.count("delta_l_nm")) throw ConfigError("give either beta_as or delta_l_nm, not both");
  // sigma_p_ratio is relative to sigma1, so sigma1 is applied first
  for (const auto& [k, v] : entries)
    if (k == "sigma1_thz") apply_config_key(job, k, v);
  for (const auto& [k, v] : entries)
    if (k != "sigma1_thz") apply_config_key(job, k, v);
  return job;
}

SweepJob parse_config_file(const std::string& path, SweepJob job) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration file '" + path + "'");
  return parse_config(in, std::move(job));
}

}  // namespace hom
