#include "etapt/symm.hpp"

#include <cmath>
#include <string>

#include "etapt/error.hpp"
#include "etapt/linalg.hpp"

namespace etapt {

Vector AntilinearMap::apply(const Vector& v) const {
  if (v.size() != linear_.side()) {
    throw Error(ErrorKind::DimensionMismatch, "vector does not match map dimension");
  }
  if (conjugates_) return linear_.matrix() * v.conjugate();
  return linear_.matrix() * v;
}

AntilinearMap AntilinearMap::then_after(const AntilinearMap& rhs) const {
  const TruncatedOperator inner = conjugates_ ? rhs.linear_.conjugate() : rhs.linear_;
  return {linear_ * inner, conjugates_ != rhs.conjugates_};
}

namespace symm {

TruncatedOperator parity(TwoModeDims dims) {
  Eigen::VectorXcd diag(dims.size());
  for (Index i = 0; i < dims.size(); ++i) {
    diag(i) = ((dims.n1_of(i) + dims.n2_of(i)) % 2 == 0) ? 1.0 : -1.0;
  }
  return {diag.asDiagonal(), ModeShape::pair(dims)};
}

AntilinearMap time_reversal(TwoModeDims dims) {
  return {TruncatedOperator::identity(ModeShape::pair(dims)), true};
}

AntilinearMap pt_map(TwoModeDims dims) { return {parity(dims), true}; }

TruncatedOperator pt_conjugate(const TruncatedOperator& h) {
  const TruncatedOperator pi = parity(h.shape().pair_dims());
  return pi * h.conjugate() * pi;
}

TruncatedOperator boost_generator(TwoModeDims dims) {
  const auto x1 = fock::position_op(dims.mode1), p1 = fock::momentum_op(dims.mode1);
  const auto x2 = fock::position_op(dims.mode2), p2 = fock::momentum_op(dims.mode2);
  return fock::tensor(x1, p2) - fock::tensor(p1, x2);
}

MetricPair metric(double theta, TwoModeDims dims) {
  if (!std::isfinite(theta)) {
    throw Error(ErrorKind::InvalidArgument, "metric angle must be finite");
  }
  const ModeShape shape = ModeShape::pair(dims);
  const linalg::HermitianEigensystem eig(boost_generator(dims).matrix());
  const auto exp_scaled = [&eig](double s) {
    return eig.apply([s](double d) { return std::exp(s * d); });
  };
  return MetricPair{
      theta,
      {exp_scaled(theta), shape},
      {exp_scaled(-theta), shape},
      {exp_scaled(0.5 * theta), shape},
      {exp_scaled(-0.5 * theta), shape},
  };
}

AntilinearMap eta_tilde(const MetricPair& metric) {
  const TwoModeDims dims = metric.eta.shape().pair_dims();
  return pt_map(dims) * AntilinearMap::linear(metric.eta);
}

TruncatedOperator charge_from_eigenbasis(std::span<const Vector> eigvecs,
                                         std::span<const int> signs,
                                         const AntilinearMap& eta_tilde,
                                         double max_condition) {
  if (eigvecs.empty() || eigvecs.size() != signs.size()) {
    throw Error(ErrorKind::InvalidArgument,
                "charge operator needs one sign per eigenvector");
  }
  const Index dim = eta_tilde.linear_part().side();
  const Index k = static_cast<Index>(eigvecs.size());
  Matrix psi(dim, k);
  Matrix dual(k, dim);
  Eigen::VectorXcd s(k);
  for (Index n = 0; n < k; ++n) {
    if (signs[n] != 1 && signs[n] != -1) {
      throw Error(ErrorKind::InvalidArgument, "charge signs must be +1 or -1");
    }
    if (eigvecs[n].size() != dim) {
      throw Error(ErrorKind::DimensionMismatch, "eigenvector has the wrong length");
    }
    psi.col(n) = eigvecs[n];
    dual.row(n) = eta_tilde.apply(eigvecs[n]).transpose();
    s(n) = signs[n];
  }
  const Matrix gram = dual * psi;
  Eigen::JacobiSVD<Matrix> svd(gram);
  const auto& sv = svd.singularValues();
  const double cond = sv(0) / sv(k - 1);
  if (!(cond <= max_condition)) {
    throw Error(ErrorKind::Degeneracy,
                "eta~ bilinear Gram is near-singular (condition " +
                    std::to_string(cond) +
                    "); choose parameters with a nondegenerate spectrum");
  }
  const Matrix weights = gram.partialPivLu().solve(dual);
  return {psi * s.asDiagonal() * weights, eta_tilde.shape()};
}

}  // namespace symm
}  // namespace etapt
