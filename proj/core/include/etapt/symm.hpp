// symm.hpp: parity, antilinear time reversal, PT, the exponential metric and
// the composite antilinear symmetry eta~ = PT eta.

#pragma once

#include <span>
#include <vector>

#include "etapt/fock.hpp"

namespace etapt {

// v -> L v            (conjugates == false)
// v -> L conj(v)      (conjugates == true)
//
// Composition (L1, k1) o (L2, k2) = (L1 conj^{k1}(L2), k1 xor k2).
class AntilinearMap {
 public:
  AntilinearMap(TruncatedOperator linear_part, bool conjugates)
      : linear_(std::move(linear_part)), conjugates_(conjugates) {}

  static AntilinearMap identity(ModeShape shape) {
    return {TruncatedOperator::identity(shape), false};
  }
  static AntilinearMap linear(TruncatedOperator op) { return {std::move(op), false}; }

  const TruncatedOperator& linear_part() const noexcept { return linear_; }
  bool conjugates() const noexcept { return conjugates_; }
  const ModeShape& shape() const noexcept { return linear_.shape(); }

  Vector apply(const Vector& v) const;

  // (*this) o rhs: apply rhs first.
  AntilinearMap then_after(const AntilinearMap& rhs) const;
  friend AntilinearMap operator*(const AntilinearMap& lhs, const AntilinearMap& rhs) {
    return lhs.then_after(rhs);
  }

 private:
  TruncatedOperator linear_;
  bool conjugates_;
};

// A Hermitian positive-definite metric eta = exp(theta A) together with its
// inverse and square-root Dyson map rho = exp(theta A / 2).
struct MetricPair {
  double theta;
  TruncatedOperator eta;
  TruncatedOperator eta_inv;
  TruncatedOperator rho;
  TruncatedOperator rho_inv;
};

namespace symm {

// Pi |n1, n2> = (-1)^{n1+n2} |n1, n2>.
TruncatedOperator parity(TwoModeDims dims);

// Entrywise conjugation; exact in the real Hermite-function Fock basis.
AntilinearMap time_reversal(TwoModeDims dims);

// (Pi, conjugate).
AntilinearMap pt_map(TwoModeDims dims);

// PT H PT = Pi conj(H) Pi.
TruncatedOperator pt_conjugate(const TruncatedOperator& h);

// A = P2 X1 - P1 X2. Hermitian, purely imaginary and parity even.
TruncatedOperator boost_generator(TwoModeDims dims);

// eta = exp(theta A) by Hermitian eigendecomposition of A. A conserves
// n1 + n2, so the decomposition runs per excitation sector.
MetricPair metric(double theta, TwoModeDims dims);

// eta~ = PT eta = (Pi conj(eta), conjugate): v -> Pi conj(eta v).
AntilinearMap eta_tilde(const MetricPair& metric);

// Linear charge operator C = sum_n s_n |psi_n><psi_n^d|, where the dual rows
// are taken with respect to the eta~ bilinear form (eta~ u)^T v. Satisfies
// C psi_n = s_n psi_n on the supplied span.
//
// Throws Degeneracy if the bilinear Gram of the supplied vectors has a
// condition number above max_condition.
TruncatedOperator charge_from_eigenbasis(std::span<const Vector> eigvecs,
                                         std::span<const int> signs,
                                         const AntilinearMap& eta_tilde,
                                         double max_condition = 1e8);

}  // namespace symm
}  // namespace etapt
