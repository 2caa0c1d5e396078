#include <cmath>
#include <sstream>
#include <string>

#include "biphoton/errors.hpp"
#include "biphoton/schmidt.hpp"
#include "biphoton/sweep.hpp"
#include "biphoton/symmetry.hpp"
#include "biphoton/units.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace hom;

namespace {

SweepJob small_job() {
  SweepJob job = default_job();
  job.base = reference_params(0.1);
  job.grid = Grid{0.0, 4.0, 21, GridSpacing::linear};
  job.estimators = {Estimator::ds_closed, Estimator::k_numeric, Estimator::k_approx};
  return job;
}

std::string csv_of(const SweepJob& job, bool timing = false) {
  std::ostringstream out;
  write_csv(run_sweep(job), out, timing);
  return out.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

SweepJob parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

}  // namespace

TEST_CASE("grids") {
  const auto lin = Grid{0.0, 4.0, 5, GridSpacing::linear}.values();
  CHECK(lin == std::vector<double>{0.0, 1.0, 2.0, 3.0, 4.0});
  const auto lg = Grid{1.0, 100.0, 3, GridSpacing::log}.values();
  REQUIRE(lg.size() == 3);
  CHECK(lg[0] == doctest::Approx(1.0));
  CHECK(lg[1] == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(lg[2] == doctest::Approx(100.0));
  const auto fine = Grid{80.0, 84.0, 2001, GridSpacing::linear}.values();
  CHECK(fine.front() == 80.0);
  CHECK(fine.back() == 84.0);
  CHECK(fine[1000] == doctest::Approx(82.0).epsilon(1e-15));
}

TEST_CASE("job validation") {
  SweepJob ok = small_job();
  CHECK_NOTHROW(ok.validate());
  auto rejects = [&](auto mutate) {
    SweepJob j = small_job();
    mutate(j);
    CHECK_THROWS_AS(j.validate(), ConfigError);
  };
  rejects([](SweepJob& j) { j.estimators.clear(); });
  rejects([](SweepJob& j) { j.grid.count = 1; });
  rejects([](SweepJob& j) { j.grid.min = j.grid.max; });
  rejects([](SweepJob& j) { j.grid.spacing = GridSpacing::log; });
  rejects([](SweepJob& j) { j.quad_order = 1; });
  rejects([](SweepJob& j) { j.tol = 0.0; });
  rejects([](SweepJob& j) { j.threads = 0; });
  rejects([](SweepJob& j) { j.modulation.kind = ModulationKind::none; });
  rejects([](SweepJob& j) { j.grid.min = -1.0; });
  rejects([](SweepJob& j) {
    j.modulation.kind = ModulationKind::sine;
    j.estimators = {Estimator::ds_small_beta};
  });
  rejects([](SweepJob& j) {
    j.modulation.kind = ModulationKind::sine;
    j.estimators = {Estimator::k_numeric};
  });
  rejects([](SweepJob& j) {
    j.axis = SweepAxis::k;
    j.grid.min = 1.0;
  });
  rejects([](SweepJob& j) {
    j.base.sigma1 = -1.0;
  });

  SweepJob sine = small_job();
  sine.modulation.kind = ModulationKind::sine;
  sine.estimators = {Estimator::ds_quadrature, Estimator::ds_parity};
  CHECK_NOTHROW(sine.validate());
}

TEST_CASE("estimator names") {
  CHECK(parse_estimator("ds_closed") == Estimator::ds_closed);
  CHECK(parse_estimator("closed_modulated") == Estimator::ds_closed);
  CHECK(parse_estimator("numeric_diag") == Estimator::k_numeric);
  CHECK(parse_estimator("approx_k_closed") == Estimator::k_approx);
  CHECK_THROWS_AS(parse_estimator("bogus"), ConfigError);
  for (Estimator e : {Estimator::ds_closed, Estimator::ds_quadrature, Estimator::ds_parity, Estimator::ds_small_beta,
                      Estimator::k_exact, Estimator::k_numeric, Estimator::k_perturbative, Estimator::k_heuristic,
                      Estimator::k_approx})
    CHECK(parse_estimator(to_string(e)) == e);
}

TEST_CASE("row values follow the library") {
  const SweepJob job = small_job();
  const SweepResult res = run_sweep(job);
  REQUIRE(res.rows.size() == 21);
  const double b0 = beta0(job.base.omega);
  for (const SweepRow& r : res.rows) {
    CHECK(r.beta == doctest::Approx(r.axis_value * b0).epsilon(1e-15));
    CHECK(r.error.empty());
    const BiphotonState st = normalize(job.base, ModulationSpec{ModulationKind::cosine, r.beta});
    CHECK(r.values.at(Estimator::ds_closed) == ds_closed_modulated(st).d_s);
    CHECK(r.values.at(Estimator::k_approx) == approx_k_closed(st));
    CHECK(r.values.at(Estimator::k_numeric) == doctest::Approx(schmidt_numeric(st).k).epsilon(1e-12));
    REQUIRE(r.p2c);
    CHECK(*r.p2c == doctest::Approx((1.0 - r.values.at(Estimator::ds_closed)) / 2.0).epsilon(1e-15));
    CHECK(r.k0 == doctest::Approx(schmidt_number_closed(job.base)).epsilon(1e-14));
    CHECK(r.trunc_dim > 0);
    CHECK(r.methods.at(Estimator::ds_closed) == "closed_modulated");
  }

  SUBCASE("k axis sets the pump width") {
    SweepJob k = default_job();
    k.modulation = ModulationSpec{};
    k.axis = SweepAxis::k;
    k.grid = Grid{1.5, 6.0, 4, GridSpacing::linear};
    k.estimators = {Estimator::k_exact, Estimator::ds_closed};
    for (const SweepRow& r : run_sweep(k).rows) {
      CHECK(r.values.at(Estimator::k_exact) == doctest::Approx(r.axis_value).epsilon(1e-12));
      CHECK(r.k0 == doctest::Approx(r.axis_value).epsilon(1e-12));
      CHECK(r.methods.at(Estimator::ds_closed) == "closed_spdc");
    }
  }
  SUBCASE("delay axis moves the second arrival time") {
    SweepJob d = default_job();
    d.modulation = ModulationSpec{};
    d.axis = SweepAxis::delta_tau;
    d.grid = Grid{-30.0, 30.0, 5, GridSpacing::linear};
    d.estimators = {Estimator::ds_closed};
    for (const SweepRow& r : run_sweep(d).rows) {
      CHECK(r.delta_tau == doctest::Approx(fs(r.axis_value)).epsilon(1e-12).scale(1e-30));
      SpdcParams p = d.base;
      p.tau2 = p.tau1 + fs(r.axis_value);
      CHECK(r.values.at(Estimator::ds_closed) == doctest::Approx(ds_closed_spdc(p).d_s).epsilon(1e-14));
    }
  }
}

TEST_CASE("failed cells are reported") {
  SweepJob job = small_job();
  job.modulation.kind = ModulationKind::sine;
  job.grid = Grid{0.0, 1.0, 2, GridSpacing::linear};
  job.estimators = {Estimator::ds_quadrature};
  const SweepResult res = run_sweep(job);
  REQUIRE(res.rows.size() == 2);
  CHECK(res.rows[0].values.empty());
  CHECK_FALSE(res.rows[0].error.empty());
  CHECK(res.rows[1].error.empty());
  CHECK(res.rows[1].values.at(Estimator::ds_quadrature) == doctest::Approx(1.0).epsilon(0.05));

  std::ostringstream csv;
  write_csv(res, csv);
  const auto lines = lines_of(csv.str());
  const std::string& bad = lines[lines.size() - 2];
  CHECK(bad.find(",ERR,ERR,") != std::string::npos);

  std::ostringstream jl;
  write_jsonl(res, jl);
  const auto records = lines_of(jl.str());
  REQUIRE(records.size() == 3);
  const auto row = nlohmann::json::parse(records[1]);
  CHECK(row["ds_quadrature"].is_null());
  CHECK(row["p2c"].is_null());
  CHECK_FALSE(row["error"].get<std::string>().empty());
}

TEST_CASE("output formats") {
  SweepJob job = small_job();
  job.grid.count = 4;
  const std::string csv = csv_of(job);
  const auto lines = lines_of(csv);
  std::vector<std::string> keys;
  std::size_t i = 0;
  for (; i < lines.size() && lines[i].rfind("# ", 0) == 0; ++i) keys.push_back(lines[i].substr(2, lines[i].find('=') - 2));
  for (const char* k : {"library_version", "axis", "grid_min", "grid_max", "grid_count", "sigma1_thz", "sigma_p_ratio",
                        "omega_thz", "modulation_kind", "beta0_s", "estimators", "quad_order", "truncation_tol"})
    CHECK(std::find(keys.begin(), keys.end(), k) != keys.end());
  REQUIRE(i < lines.size());
  CHECK(lines[i] ==
        "axis_value,beta_s,beta_over_beta0,delta_l_nm,sigma_p_ratio,k0,delta_tau_fs,ds_closed,k_numeric,k_approx,p2c,"
        "trunc_dim,methods,error");
  CHECK(lines.size() == i + 1 + 4);
  CHECK(csv_of(job, true).find(",row_seconds") != std::string::npos);

  std::ostringstream jl;
  const SweepResult res = run_sweep(job);
  write_jsonl(res, jl);
  const auto records = lines_of(jl.str());
  REQUIRE(records.size() == 5);
  const auto head = nlohmann::json::parse(records[0]);
  CHECK(head["record"] == "header");
  CHECK(head["library_version"] == kLibraryVersion);
  for (std::size_t r = 0; r < 4; ++r) {
    const auto row = nlohmann::json::parse(records[r + 1]);
    CHECK(row["record"] == "row");
    CHECK(row["ds_closed"].get<double>() == res.rows[r].values.at(Estimator::ds_closed));
    CHECK(row["beta_s"].get<double>() == res.rows[r].beta);
  }
}

TEST_CASE("threaded sweeps are deterministic") {
  SweepJob job = small_job();
  job.threads = 1;
  const std::string one = csv_of(job);
  job.threads = 3;
  CHECK(csv_of(job) == one);
}

TEST_CASE("configuration parser") {
  SUBCASE("values and comments") {
    const SweepJob j = parse(
        "# reference run\n"
        "sigma_p_ratio = 0.5\n"
        "sigma1_thz = 20   # applied before the ratio\n"
        "modulation_kind = sine\n"
        "axis = beta\n"
        "min = 0.5\nmax = 2\ncount = 7\n"
        "estimators = ds_quadrature, parity_series\n"
        "threads = 2\nformat = jsonl\n");
    CHECK(j.base.sigma1 == doctest::Approx(thz_to_angular(20.0)));
    CHECK(j.base.sigma_p.value() == doctest::Approx(thz_to_angular(10.0)));
    CHECK(j.modulation.kind == ModulationKind::sine);
    CHECK(j.grid.count == 7);
    CHECK(j.estimators == std::vector<Estimator>{Estimator::ds_quadrature, Estimator::ds_parity});
    CHECK(j.threads == 2);
    CHECK(j.format == OutputFormat::jsonl);
    CHECK_NOTHROW(j.validate());
  }
  SUBCASE("separable pump") { CHECK(parse("sigma_p_ratio = inf\n").base.sigma_p.is_infinite()); }
  SUBCASE("fixed modulation delay") {
    const SweepJob j = parse("axis = k\nmin = 2\nmax = 3\ndelta_l_nm = 177.5\n");
    CHECK(j.modulation.beta == doctest::Approx(beta0(j.base.omega)).epsilon(1e-3));
    CHECK(parse("beta_as = 296\n").modulation.beta == doctest::Approx(as(296.0)));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(parse("colour = red\n"), ConfigError);
    CHECK_THROWS_AS(parse("count = 5\ncount = 6\n"), ConfigError);
    CHECK_THROWS_AS(parse("beta_as = 1\ndelta_l_nm = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse("count = five\n"), ConfigError);
    CHECK_THROWS_AS(parse("count = 2.5\n"), ConfigError);
    CHECK_THROWS_AS(parse("just some words\n"), ConfigError);
    CHECK_THROWS_AS(parse("axis = time\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_file("/nonexistent/job.cfg"), ConfigError);
  }
}

TEST_CASE("figure presets") {
  const auto fig4 = figure_job(parse_figure("fig4"));
  REQUIRE(fig4.size() == 3);
  CHECK(fig4[1].grid.min == 20.0);
  CHECK(fig4[2].grid.max == 84.0);
  for (const auto& j : fig4) CHECK(j.grid.count == 2001);

  const auto fig2 = figure_job(FigureId::fig2);
  REQUIRE(fig2.size() == 4);
  for (const auto& j : fig2) {
    CHECK(j.base.delta_tau() == 0.0);
    CHECK(j.modulation.kind == ModulationKind::none);
  }
  CHECK(fig2[3].base.sigma2 == doctest::Approx(5.0 * fig2[3].base.sigma1));

  const auto fig7 = figure_job(FigureId::fig7);
  REQUIRE(fig7.size() == 6);
  for (const auto& j : fig7) {
    CHECK(j.estimators == std::vector<Estimator>{Estimator::k_numeric, Estimator::k_approx});
    CHECK_NOTHROW(j.validate());
  }
  const auto fig6 = figure_job(FigureId::fig6);
  REQUIRE(fig6.size() == 1);
  CHECK(fig6[0].modulation.beta == beta0(fig6[0].base.omega));
  CHECK_THROWS_AS(parse_figure("fig9"), ConfigError);
}

TEST_CASE("validation suite") {
  ValidateOptions opt;
  opt.draws = 20;
  for (const CheckResult& c : validate_suite(opt)) {
    INFO(c.name, ": ", c.detail);
    CHECK(c.passed);
  }

  auto failed = [](const std::vector<CheckResult>& all, const std::string& prefix) {
    int n = 0;
    for (const auto& c : all)
      if (c.name.rfind(prefix, 0) == 0 && !c.passed) ++n;
    return n;
  };
  ValidateOptions bad_q = opt;
  bad_q.mehler_q = -opt.mehler_q;
  CHECK(failed(validate_suite(bad_q), "mehler") == 2);
  ValidateOptions coarse = opt;
  coarse.quad_order = 10;
  CHECK(failed(validate_suite(coarse), "oracle") >= 1);
}
