// verify.hpp: quantitative checks of the pseudo-Hermitian / eta~ identities.
//
// Every residual is a relative Frobenius norm ||Q (lhs - rhs) Q|| / ||ref||
// with Q a BulkProjector and ref the full-space reference operator. Exact
// identities use BulkProjector::full.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "etapt/fock.hpp"
#include "etapt/model.hpp"
#include "etapt/symm.hpp"

namespace etapt {

struct Tolerances {
  double reality = 1e-8;      // |Im lambda| below this counts as real
  double convergence = 1e-6;  // truncated vs analytic eigenvalues, Gram entries
  double machine = 1e-13;     // identities exact under truncation
  double identity = 1e-8;     // bulk-projected operator identities
  double sweep = 1e-4;        // max |Im lambda| marking the broken phase in sweeps
};

struct ResidualReport {
  std::string name;
  double residual;
  double bulk_fraction;  // 1 for full-space checks
  TwoModeDims dims;
  double tolerance;
  bool pass;
};

enum class Phase { Unbroken, Broken };

struct MatchedLevel {
  LevelLabel label;
  double analytic;
  Complex numeric;
  double abs_error;
};

struct SpectrumReport {
  TwoModeDims dims;
  std::size_t k;
  std::vector<Complex> numeric;       // lowest k, spectral order
  std::vector<MatchedLevel> matched;  // unbroken phase only
  std::vector<Complex> unmatched;     // numeric levels with no analytic partner
  double max_imag;                    // over the lowest k
  Phase phase;
  // Broken phase: max over non-real lambda of the distance from conj(lambda)
  // to the nearest eigenvalue, taken over the whole truncated spectrum.
  double pair_audit;
  Tolerances tolerances;
  bool pass;
};

enum class GramForm { EtaTilde, CEtaTilde };

struct GramReport {
  GramForm form;
  Matrix matrix;           // k x k table of the chosen form
  std::vector<int> signs;  // measured sign of (psi_n, psi_n)_eta~
  Matrix target;           // diag(signs) for EtaTilde, identity for CEtaTilde
  double max_deviation;    // max |matrix - target|
  double max_offdiag;
};

struct SweepRow {
  double c3;
  double max_imag;
  bool unbroken_analytic;
  bool unbroken_numeric;
};

struct SweepReport {
  double c1_sq;
  double c2_sq;
  TwoModeDims dims;
  std::size_t k;
  double threshold;
  double step;                // largest spacing in the grid
  double analytic_boundary;   // |c2^2 - c1^2|
  std::optional<double> detected_boundary;
  std::vector<SweepRow> rows;
  std::vector<std::string> warnings;
  bool pass;
};

namespace verify {

ResidualReport make_report(std::string name, double residual, const BulkProjector& bulk,
                           double tolerance);

// H^dagger = eta H eta^{-1}
ResidualReport pseudo_hermiticity_residual(const TruncatedOperator& h,
                                           const MetricPair& metric,
                                           const BulkProjector& bulk, double tolerance);

// H^dagger = PT H PT
ResidualReport pseudo_pt_residual(const TruncatedOperator& h, const BulkProjector& bulk,
                                  double tolerance);

// [H, eta~] = 0 for an antilinear eta~ = (L, conj): H L - L conj(H).
ResidualReport eta_tilde_commutator(const TruncatedOperator& h, const AntilinearMap& et,
                                    const BulkProjector& bulk, double tolerance);

// eta~ o eta~ = identity
ResidualReport eta_tilde_involution(const AntilinearMap& et, const BulkProjector& bulk,
                                    double tolerance);

// PT eta PT = eta^{-1}
ResidualReport pt_metric_inverse(const MetricPair& metric, const BulkProjector& bulk,
                                 double tolerance);

// eta P1 eta^-1 = P1 cosh + i P2 sinh, eta P2 eta^-1 = P2 cosh - i P1 sinh,
// and the same pair for X. sinh_sign = -1 flips the sinh terms (negative
// control).
std::vector<ResidualReport> transform_rules_check(const MetricPair& metric,
                                                  const BulkProjector& bulk,
                                                  double tolerance,
                                                  double sinh_sign = 1.0);

// rho H rho^{-1} = h_reference
ResidualReport dyson_decoupling_residual(const TruncatedOperator& h,
                                         const MetricPair& metric,
                                         const TruncatedOperator& h_reference,
                                         const BulkProjector& bulk, double tolerance);

// Uses theta_of, decoupled_frequencies and decoupled_hamiltonian for params.
ResidualReport dyson_decoupling_residual(const OscillatorParams& params, TwoModeDims dims,
                                         const BulkProjector& bulk, double tolerance);

// (eta~ u)^T v: no conjugation beyond the one inside eta~.
Complex bilinear_eta_tilde(const Vector& u, const Vector& v, const AntilinearMap& et);

// Rescales each vector so |(psi, psi)_eta~| = 1. Throws
// IllConditionedNormalization if a self-pairing is below threshold.
std::vector<Vector> normalize_eta_tilde(std::span<const Vector> eigvecs,
                                        const AntilinearMap& et,
                                        double threshold = 1e-10);

GramReport gram(std::span<const Vector> eigvecs, GramForm form, const AntilinearMap& et,
                double threshold = 1e-10);

SpectrumReport spectrum_report(const OscillatorParams& params, TwoModeDims dims,
                               std::size_t k, const Tolerances& tol = {});

// Max over lambda with |Im lambda| > tol of min_mu |conj(lambda) - mu|.
double conjugate_pair_audit(std::span<const Complex> eigenvalues, double tol);

// c3 grid must be nonempty and nondecreasing. Grid points run on up to `jobs`
// threads; rows come back in grid order.
SweepReport phase_sweep(double c1_sq, double c2_sq, std::span<const double> c3_grid,
                        TwoModeDims dims, std::size_t k, double threshold,
                        unsigned jobs = 1);

struct SuiteOptions {
  double bulk_fraction = 0.5;
  Tolerances tolerances{};
  std::optional<double> theta_override;
};

// Pseudo-Hermiticity, pseudo-PT, eta~ commutator, eta~ involution, PT eta PT =
// eta^{-1}, the four transform rules and the Dyson decoupling, in that order.
std::vector<ResidualReport> identity_suite(const OscillatorParams& params,
                                           TwoModeDims dims, const SuiteOptions& options);

}  // namespace verify
}  // namespace etapt
