// model.hpp: the non-Hermitian coupled oscillator
//
//   H = 1/2 sum_i (P_i^2 + c_i^2 X_i^2) + (i c3 / 2) X1 X2
//
// its closure angle theta, analytic decoupled frequencies and energies, and
// eigenstates psi_n = PT rho phi_n built from the decoupled oscillator.

#pragma once

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "etapt/fock.hpp"

namespace etapt {

struct OscillatorParams {
  double c1_sq;
  double c2_sq;
  double c3;

  // Throws InvalidArgument unless c1_sq, c2_sq > 0 and all are finite.
  OscillatorParams(double c1_sq, double c2_sq, double c3);

  // (c2^2 - c1^2)^2 > c3^2
  bool unbroken() const noexcept;
  // (c1^2 - c2^2)^2 - c3^2; its sign separates the two phases.
  double discriminant() const noexcept;
};

struct DecoupledSpec {
  double theta;
  double omega1;  // frequency attached to X1 in the decoupled Hamiltonian
  double omega2;
};

struct LevelLabel {
  int n1;
  int n2;
  friend bool operator==(const LevelLabel&, const LevelLabel&) = default;
};

struct AnalyticLevel {
  LevelLabel label;
  double energy;
};

namespace model {

// theta = atanh(c3 / (c2^2 - c1^2)), the root of
// (c1^2 - c2^2) sinh(theta) + c3 cosh(theta) = 0.
// Throws DegenerateFrequencies when c1^2 == c2^2 with c3 == 0, and
// BrokenPhaseError when |c3| >= |c2^2 - c1^2| otherwise.
double theta_of(const OscillatorParams& params);

// Residual of the closure condition at the given angle.
double closure_residual(const OscillatorParams& params, double theta) noexcept;

// omega^2 are the eigenvalues of the potential matrix
// [[c1^2, i c3/2], [i c3/2, c2^2]]:
//   (c1^2 + c2^2)/2 +- sqrt((c1^2 - c2^2)^2 - c3^2) / 2.
// omega1 continues c1 as c3 -> 0, so it is the larger root iff c1^2 > c2^2.
// At the exceptional point the frequencies coincide and theta is infinite.
// Throws BrokenPhaseError (carrying both complex omega^2) past it.
DecoupledSpec decoupled_frequencies(const OscillatorParams& params);

// Complex omega^2 pair, valid in either phase.
std::array<std::complex<double>, 2> squared_frequencies(const OscillatorParams& params);

double analytic_energy(const DecoupledSpec& spec, int n1, int n2);

// The `count` lowest analytic levels, ascending in energy.
std::vector<AnalyticLevel> analytic_levels(const DecoupledSpec& spec, std::size_t count);

TruncatedOperator hamiltonian(const OscillatorParams& params, TwoModeDims dims);

// h = 1/2 (P1^2 + P2^2) + 1/2 (omega1^2 X1^2 + omega2^2 X2^2); real symmetric.
TruncatedOperator decoupled_hamiltonian(const DecoupledSpec& spec, TwoModeDims dims);

// Largest k accepted by model_eigensystem / spectrum checks: the number of
// states inside the bulk n1 + n2 <= min(N1, N2) / 2.
std::size_t max_reliable_levels(TwoModeDims dims);

struct ModelState {
  LevelLabel label;
  double energy;          // analytic E_n
  double decoupled_energy;  // eigenvalue of the truncated h
  Vector phi;             // eigenvector of h, real, first nonzero entry > 0
  Vector psi;             // PT rho phi; eigenvector of H
};

// Lowest k eigenstates of H built from the decoupled oscillator, ordered by
// analytic energy. Throws BrokenPhaseError past the exceptional point,
// TruncationLimit if k exceeds max_reliable_levels, and Degeneracy if two
// analytic levels fall within the labeling window.
std::vector<ModelState> model_eigensystem(const OscillatorParams& params,
                                          TwoModeDims dims, std::size_t k);

}  // namespace model
}  // namespace etapt
