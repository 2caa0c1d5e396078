#pragma once

#include <Eigen/Dense>

#include <string_view>
#include <vector>

#include "biphoton/jsa.hpp"
#include "biphoton/symmetry.hpp"

namespace hom {

/// Mehler decomposition of the Gaussian JSA plus the constants of the cosine-modulated state.
struct MehlerParams {
  double s1 = 0.0;        // rad/s
  double s2 = 0.0;        // rad/s
  double z = 0.0;
  double one_minus_z_sq = 1.0;
  double alpha_sq = 0.0;  // (rad/s)^2
  double gamma_sq = 0.0;  // dimensionless
  double xi_sq = 0.0;     // (rad/s)^2
  double n_tilde_sq = 1.0;

  double k0() const { return (1.0 + z * z) / one_minus_z_sq; }
  double lambda(int n) const;
};

/// Mehler parameters; beta (s) and omega only enter n_tilde_sq. Separable limit gives z = 0.
MehlerParams mehler_params(const SpdcParams& spdc, double beta = 0.0);

/// Closed-form Schmidt number of the unmodulated state.
double schmidt_number_closed(const SpdcParams& spdc);

/// Inverse of schmidt_number_closed in sigma_p. Returns PumpWidth::infinite() as K -> 1+.
PumpWidth sigma_p_from_k(double k, double sigma1, double sigma2);

enum class SchmidtMethod { exact_geometric, numeric_diag, perturbative, heuristic, approx_closed };

std::string_view to_string(SchmidtMethod m);

struct SchmidtSpectrum {
  std::vector<double> eigenvalues;  // descending
  int truncation = 0;               // Fock dimension used
  double trace_deficit = 0.0;
  double k = 1.0;
  SchmidtMethod method = SchmidtMethod::exact_geometric;
};

struct TruncationPolicy {
  double tol = 1e-10;        // tail of the geometric eigenvalues
  int cap = 4000;            // hard cap on the mode count
  double trace_tol = 1e-8;   // admissible trace deficit of the density matrix
};

/// Number of Mehler modes kept: min(ceil(ln tol / ln z^2), cap).
int mode_count(const MehlerParams& m, const TruncationPolicy& policy = {});

SchmidtSpectrum schmidt_standard(const SpdcParams& spdc, double tol = 1e-10);

/// <phi_p | phi~_n>, real; see the Laguerre form of the displaced oscillator overlaps.
double scalar_product_basis(int p, int n, double beta, const MehlerParams& mehler, double omega);

/// Rows p < dim, columns n < modes of <phi_p | phi~_n>, filled only inside the nonzero band.
struct OverlapBand {
  Eigen::MatrixXd s;
  int band = 0;  // |p - n| beyond which entries are below 1e-18
};

OverlapBand overlap_band(int dim, int modes, double beta, const MehlerParams& mehler, double omega);

struct DensityMatrix {
  Eigen::MatrixXd rho;
  int modes = 0;
  double trace_deficit = 0.0;
};

/// Reduced density matrix of a cosine-modulated state in a Fock basis of size dim.
/// Throws TruncationError when the trace deficit exceeds policy.trace_tol.
DensityMatrix reduced_density_matrix(const BiphotonState& state, int dim, const TruncationPolicy& policy = {});

/// Density matrix with the Fock dimension grown until the trace deficit is acceptable.
DensityMatrix reduced_density_matrix_auto(const BiphotonState& state, const TruncationPolicy& policy = {});

/// Full eigen-decomposition of the reduced density matrix.
SchmidtSpectrum schmidt_numeric(const BiphotonState& state, const TruncationPolicy& policy = {});

/// Schmidt number from the purity Tr rho^2 alone (no diagonalization).
double schmidt_number_purity(const BiphotonState& state, const TruncationPolicy& policy = {});

/// First-order perturbative spectrum (diagonal of rho). dim <= 0 selects the automatic size.
SchmidtSpectrum schmidt_perturbative(const BiphotonState& state, int dim = 0, const TruncationPolicy& policy = {});

/// Heuristic spectrum with Laguerre-weighted geometric eigenvalues. dim <= 0: mode_count.
SchmidtSpectrum schmidt_heuristic(const BiphotonState& state, int dim = 0, const TruncationPolicy& policy = {});

/// Closed-form approximate Schmidt number built from generating-function sums.
double approx_k_closed(const BiphotonState& state);

/// Small sigma_p, small beta limit of approx_k_closed.
ApproxValue approx_k_small_sigma_p(const BiphotonState& state);

}  // namespace hom
