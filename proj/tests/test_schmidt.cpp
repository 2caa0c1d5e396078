#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

#include "biphoton/errors.hpp"
#include "biphoton/schmidt.hpp"
#include "biphoton/specfun.hpp"
#include "biphoton/sweep.hpp"
#include "biphoton/units.hpp"
#include "doctest.h"

using namespace hom;

namespace {

SpdcParams params(double rp, double r2 = 1.0) {
  SpdcParams p = reference_params(rp);
  p.sigma2 = r2 * p.sigma1;
  return p;
}

BiphotonState cosine_state(const SpdcParams& p, double beta) {
  return normalize(p, ModulationSpec{ModulationKind::cosine, beta});
}

// Schmidt number of a sampled amplitude from the eigenvalues of M M^T.
double grid_schmidt_number(const BiphotonState& st, double half_range, int n) {
  const double h = 2.0 * half_range / (n - 1);
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m(i, j) = st.amplitude_scaled(-half_range + i * h, -half_range + j * h).real() * h;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m * m.transpose(), Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = es.eigenvalues();
  return ev.sum() * ev.sum() / ev.squaredNorm();
}

// Trapezoid rule on a wide grid for int psi_p psi_n cos(beta Omega + beta s1 x) dx.
double overlap_oracle(int p, int n, double beta, double s1, double omega) {
  const int steps = 8000;
  const double lim = 20.0, h = 2.0 * lim / steps;
  double sum = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double x = -lim + i * h;
    sum += oscillator_eigenfunction(p, x) * oscillator_eigenfunction(n, x) * std::cos(beta * omega + beta * s1 * x);
  }
  return sum * h;
}

double laguerre(int n, double x) { return std::assoc_laguerre(n, 0, x); }

}  // namespace

TEST_CASE("mehler parameters") {
  SUBCASE("separable limit") {
    SpdcParams p = params(1.0);
    p.sigma_p = PumpWidth::infinite();
    const MehlerParams m = mehler_params(p);
    CHECK(m.z == 0.0);
    CHECK(m.k0() == 1.0);
    CHECK(m.lambda(0) == 1.0);
    CHECK(m.lambda(3) == 0.0);
  }
  SUBCASE("z decreases as the pump widens") {
    double prev = 1.0;
    for (double rp : {0.001, 0.01, 0.1, 1.0, 10.0, 100.0}) {
      const MehlerParams m = mehler_params(params(rp));
      CHECK(m.z > 0.0);
      CHECK(m.z < prev);
      prev = m.z;
    }
  }
  SUBCASE("identities for unequal bandwidths") {
    for (double rp : {0.003, 0.2, 4.0}) {
      const SpdcParams p = params(rp, 1.7);
      const MehlerParams m = mehler_params(p);
      const double a = p.sigma1 * p.sigma1, b = p.sigma2 * p.sigma2, c = std::pow(p.sigma_p.value(), 2);
      CHECK(m.alpha_sq == doctest::Approx(a * (b + c) / (a + b + c)).epsilon(1e-12));
      CHECK(m.xi_sq == doctest::Approx(a * b / (a + b)).epsilon(1e-12));
      CHECK(m.one_minus_z_sq == doctest::Approx(1.0 - m.z * m.z).epsilon(1e-12));
      CHECK(m.k0() == doctest::Approx(schmidt_number_closed(p)).epsilon(1e-12));
      CHECK(m.alpha_sq == doctest::Approx(m.s1 * m.s1 * (1 + m.z * m.z) / (1 - m.z * m.z)).epsilon(1e-12));
    }
  }
  SUBCASE("modulated normalization constant") {
    const SpdcParams p = params(0.1);
    const double beta = 0.7 * beta0(p.omega);
    const MehlerParams m = mehler_params(p, beta);
    const double expected = 2.0 / (1.0 + std::exp(-beta * beta * m.alpha_sq) * std::cos(2 * beta * p.omega));
    CHECK(m.n_tilde_sq == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("mehler decomposition reconstructs the gaussian amplitude") {
  for (double rp : {0.3, 1.0, 3.0}) {
    const SpdcParams p = params(rp, 1.4);
    const MehlerParams m = mehler_params(p);
    const BiphotonState st = normalize(p, ModulationSpec{});
    const double a = m.s1 / p.sigma1, b = m.s2 / p.sigma1;
    double worst = 0.0;
    for (double x1 : {-2.0, -0.7, 0.0, 0.4, 1.9})
      for (double x2 : {-1.5, -0.2, 0.0, 0.8, 2.2}) {
        double sum = 0.0;
        for (int n = 0; n < 400; ++n) {
          const double sign = n % 2 == 0 ? 1.0 : -1.0;
          sum += sign * std::sqrt(m.lambda(n)) * oscillator_eigenfunction(n, x1 / a) * oscillator_eigenfunction(n, x2 / b);
        }
        sum /= std::sqrt(a * b);
        worst = std::max(worst, std::fabs(sum - st.amplitude_scaled(x1, x2).real()));
      }
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("standard schmidt spectrum") {
  SUBCASE("sigma_p = sigma gives sqrt(4/3)") {
    const SchmidtSpectrum sp = schmidt_standard(params(1.0));
    CHECK(sp.k == doctest::Approx(std::sqrt(4.0 / 3.0)).epsilon(1e-13));
    double sum = 0.0, sum_sq = 0.0;
    for (double l : sp.eigenvalues) sum += l, sum_sq += l * l;
    CHECK(sum + sp.trace_deficit == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(1.0 / sum_sq == doctest::Approx(sp.k).epsilon(1e-9));
    for (std::size_t i = 1; i < sp.eigenvalues.size(); ++i) CHECK(sp.eigenvalues[i] < sp.eigenvalues[i - 1]);
  }
  SUBCASE("strong entanglement") {
    const SchmidtSpectrum sp = schmidt_standard(params(0.01));
    CHECK(sp.k == doctest::Approx(std::sqrt(1.0 + 1.0 / (1e-4 * 2.0001))).epsilon(1e-12));
    CHECK(sp.k == doctest::Approx(70.7).epsilon(1e-3));
    CHECK(sp.trace_deficit < 1e-10);
  }
  SUBCASE("separable") {
    SpdcParams p = params(1.0);
    p.sigma_p = PumpWidth::infinite();
    const SchmidtSpectrum sp = schmidt_standard(p);
    CHECK(sp.k == 1.0);
    REQUIRE(sp.eigenvalues.size() == 1);
    CHECK(sp.eigenvalues[0] == 1.0);
  }
  SUBCASE("mode count follows the tolerance") {
    const MehlerParams m = mehler_params(params(0.1));
    const int n = mode_count(m, TruncationPolicy{1e-6, 4000, 1e-8});
    CHECK(std::pow(m.z, 2 * n) <= 1e-6);
    CHECK(std::pow(m.z, 2 * (n - 1)) > 1e-6);
    CHECK(mode_count(m, TruncationPolicy{1e-300, 7, 1e-8}) == 7);
  }
}

TEST_CASE("pump width from schmidt number") {
  const double s = thz_to_angular(10.0);
  CHECK(sigma_p_from_k(2.0, s, s).value() / s == doctest::Approx(std::sqrt(std::sqrt(4.0 / 3.0) - 1.0)).epsilon(1e-13));
  CHECK(sigma_p_from_k(2.0, s, s).value() / s == doctest::Approx(0.3933).epsilon(1e-3));
  for (double k : {1.0001, 1.5, 2.0, 10.0, 300.0}) {
    for (double r2 : {0.5, 1.0, 2.5}) {
      SpdcParams p = params(1.0, r2);
      p.sigma_p = sigma_p_from_k(k, p.sigma1, p.sigma2);
      CHECK(schmidt_number_closed(p) == doctest::Approx(k).epsilon(1e-12));
    }
  }
  const PumpWidth near_one = sigma_p_from_k(1.0 + 1e-15, s, s);
  CHECK((near_one.is_infinite() || near_one.value() > 1e3 * s));
  CHECK_THROWS_AS(sigma_p_from_k(1.0, s, s), DomainError);
  CHECK_THROWS_AS(sigma_p_from_k(0.5, s, s), DomainError);
  CHECK_THROWS_AS(sigma_p_from_k(2.0, 0.0, s), DomainError);
  CHECK(sigma_p_from_k(5.0, s, s).value() < sigma_p_from_k(2.0, s, s).value());
}

TEST_CASE("scalar products of displaced modes") {
  const SpdcParams p = params(0.1);
  const MehlerParams m = mehler_params(p);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) CHECK(scalar_product_basis(a, b, 0.0, m, p.omega) == (a == b ? 1.0 : 0.0));

  const double b0 = beta0(p.omega);
  for (double beta : {0.5 * b0, b0, 7.3 * b0, 60.0 * b0}) {
    for (auto [a, b] : {std::pair{0, 0}, {0, 1}, {1, 0}, {2, 5}, {6, 3}, {10, 10}}) {
      const double expected = overlap_oracle(a, b, beta, m.s1, p.omega);
      CHECK(scalar_product_basis(a, b, beta, m, p.omega) == doctest::Approx(expected).epsilon(1e-10).scale(1.0));
    }
  }
}

TEST_CASE("reduced density matrix") {
  const SpdcParams p = params(0.1);
  SUBCASE("diagonal at beta = 0") {
    const SpdcParams wide = params(1.0);
    const DensityMatrix dm = reduced_density_matrix(cosine_state(wide, 0.0), 40);
    const MehlerParams m = mehler_params(wide);
    for (int i = 0; i < 40; ++i) {
      CHECK(std::fabs(dm.rho(i, i) - m.lambda(i)) < 1e-10 * m.lambda(0));
      for (int j = 0; j < i; ++j) CHECK(std::fabs(dm.rho(i, j)) < 1e-15);
    }
  }
  SUBCASE("trace, symmetry and positivity at beta0") {
    const DensityMatrix dm = reduced_density_matrix_auto(cosine_state(p, beta0(p.omega)));
    CHECK(dm.trace_deficit < 1e-8);
    CHECK(dm.rho.trace() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK((dm.rho - dm.rho.transpose()).cwiseAbs().maxCoeff() < 1e-15);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dm.rho, Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() > -1e-13);
  }
  SUBCASE("too small a basis is reported") {
    CHECK_THROWS_AS(reduced_density_matrix(cosine_state(p, beta0(p.omega)), 5), TruncationError);
  }
}

TEST_CASE("numeric schmidt spectrum") {
  SUBCASE("beta = 0 matches the geometric spectrum") {
    const SpdcParams p = params(0.1);
    const SchmidtSpectrum num = schmidt_numeric(cosine_state(p, 0.0));
    const SchmidtSpectrum ref = schmidt_standard(p);
    CHECK(num.k == doctest::Approx(ref.k).epsilon(1e-9));
    for (int i = 0; i < 20; ++i) CHECK(num.eigenvalues[i] == doctest::Approx(ref.eigenvalues[i]).epsilon(1e-9).scale(1e-14));
  }
  SUBCASE("first resonance against a sampled amplitude") {
    for (double rp : {1.0, 0.1}) {
      const SpdcParams p = params(rp);
      const BiphotonState st = cosine_state(p, beta0(p.omega));
      const double oracle = grid_schmidt_number(st, 6.5, 521);
      const SchmidtSpectrum num = schmidt_numeric(st);
      CHECK(num.k == doctest::Approx(oracle).epsilon(1e-7));
      CHECK(num.trace_deficit < 1e-8);
      CHECK(schmidt_number_purity(st) == doctest::Approx(num.k).epsilon(1e-10));
    }
  }
  SUBCASE("frozen enhancement ratios at the first resonance") {
    const std::pair<double, double> frozen[] = {{1.0, 1.254876}, {0.1, 1.350512}, {0.01, 1.333473}};
    for (auto [rp, ratio] : frozen) {
      const SpdcParams p = params(rp);
      const double k = schmidt_numeric(cosine_state(p, beta0(p.omega))).k;
      CHECK(k / schmidt_number_closed(p) == doctest::Approx(ratio).epsilon(2e-6));
    }
  }
  SUBCASE("arrival-time offset does not change entanglement") {
    SpdcParams p = params(0.3);
    const double b = 1.4 * beta0(p.omega);
    const double k0 = schmidt_numeric(cosine_state(p, b)).k;
    p.tau2 = fs(50.0);
    CHECK(schmidt_numeric(cosine_state(p, b)).k == doctest::Approx(k0).epsilon(1e-10));
  }
}

TEST_CASE("heuristic and closed approximate schmidt numbers") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> lrp(std::log(0.01), std::log(3.0)), ub(0.0, 12.0);
  for (int i = 0; i < 15; ++i) {
    const SpdcParams p = params(std::exp(lrp(rng)));
    const BiphotonState st = cosine_state(p, ub(rng) * beta0(p.omega));
    const SchmidtSpectrum h = schmidt_heuristic(st);
    double sum = 0.0;
    for (double l : h.eigenvalues) sum += l;
    CHECK(sum + h.trace_deficit == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(h.k == doctest::Approx(approx_k_closed(st)).epsilon(1e-8));
  }

  SUBCASE("beta = 0 gives K0") {
    const SpdcParams p = params(0.2);
    CHECK(approx_k_closed(cosine_state(p, 0.0)) == doctest::Approx(schmidt_number_closed(p)).epsilon(1e-12));
  }
  SUBCASE("perturbative agrees with heuristic for strong entanglement") {
    const SpdcParams p = params(0.01);
    for (double f : {0.999, 1.0, 1.001}) {
      const BiphotonState st = cosine_state(p, f * beta0(p.omega));
      const double kp = schmidt_perturbative(st).k, kh = schmidt_heuristic(st).k;
      CHECK(std::fabs(kp / kh - 1.0) < 0.05);
    }
  }
  SUBCASE("small sigma_p limit doubles K0 on resonance") {
    const SpdcParams p = params(0.001);
    const double b0 = beta0(p.omega);
    const double k0 = schmidt_number_closed(p);
    for (int n : {0, 1, 2}) {
      const ApproxValue v = approx_k_small_sigma_p(cosine_state(p, (2 * n + 1) * b0));
      CHECK(v.value / k0 == doctest::Approx(2.0).epsilon(1e-3));
    }
    const BiphotonState mid = cosine_state(p, 0.5 * b0);
    CHECK(approx_k_small_sigma_p(mid).value == doctest::Approx(approx_k_closed(mid)).epsilon(0.01));
  }
}

TEST_CASE("laguerre generating-function sums") {
  for (double rp : {0.05, 0.4, 1.0}) {
    const MehlerParams m = mehler_params(params(rp));
    const double z2 = m.z * m.z, z4 = z2 * z2;
    const double k0 = m.k0();
    for (double x : {0.01, 0.3, 2.0}) {
      double s1 = 0.0, s2 = 0.0;
      for (int n = 0; n < 20000; ++n) {
        const double l2 = m.lambda(n) * m.lambda(n);
        if (l2 < 1e-300) break;
        const double ln = laguerre(n, x);
        s1 += l2 * ln;
        s2 += l2 * ln * ln;
      }
      CHECK(s1 == doctest::Approx(std::exp(-x * z4 / (1 - z4)) / k0).epsilon(1e-10));
      const double closed = std::exp(-2.0 * x * z4 / (1 - z4)) * std::cyl_bessel_i(0.0, 2.0 * x * z2 / (1 - z4)) / k0;
      CHECK(s2 == doctest::Approx(closed).epsilon(1e-10));
    }
  }
  SUBCASE("single-polynomial generating function") {
    for (int order : {0, 2}) {
      for (double t : {0.2, 0.7}) {
        const double x = 1.3;
        double sum = 0.0;
        for (int n = 0; n < 400; ++n) sum += std::assoc_laguerre(n, order, x) * std::pow(t, n);
        CHECK(sum == doctest::Approx(std::pow(1 - t, -order - 1) * std::exp(x * t / (t - 1))).epsilon(1e-11));
      }
    }
  }
}
