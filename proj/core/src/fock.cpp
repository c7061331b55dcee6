#include "etapt/fock.hpp"

#include <cmath>
#include <string>

#include "etapt/error.hpp"

namespace etapt {

ModeDim::ModeDim(int n_levels) : n_levels_(n_levels) {
  if (n_levels < 2) {
    throw Error(ErrorKind::InvalidDimension,
                "a mode needs at least 2 Fock levels, got " +
                    std::to_string(n_levels));
  }
}

Index ModeShape::size() const noexcept {
  Index n = first_.levels();
  if (second_) n *= second_->levels();
  return n;
}

TwoModeDims ModeShape::pair_dims() const {
  if (!second_) {
    throw Error(ErrorKind::DimensionMismatch,
                "expected a two-mode operator, got a single-mode one");
  }
  return TwoModeDims{first_, *second_};
}

void require_same_shape(const ModeShape& a, const ModeShape& b) {
  if (!(a == b)) {
    throw Error(ErrorKind::DimensionMismatch,
                "operators act on different truncated Fock spaces");
  }
}

TruncatedOperator::TruncatedOperator(Matrix matrix, ModeShape shape)
    : matrix_(std::move(matrix)), shape_(shape) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() != shape_.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "matrix of size " + std::to_string(matrix_.rows()) + "x" +
                    std::to_string(matrix_.cols()) +
                    " does not match Fock dimension " +
                    std::to_string(shape_.size()));
  }
}

TruncatedOperator TruncatedOperator::identity(ModeShape shape) {
  return {Matrix::Identity(shape.size(), shape.size()), shape};
}

TruncatedOperator TruncatedOperator::zero(ModeShape shape) {
  return {Matrix::Zero(shape.size(), shape.size()), shape};
}

TruncatedOperator TruncatedOperator::adjoint() const {
  return {matrix_.adjoint(), shape_};
}

TruncatedOperator TruncatedOperator::conjugate() const {
  return {matrix_.conjugate(), shape_};
}

TruncatedOperator TruncatedOperator::transpose() const {
  return {matrix_.transpose(), shape_};
}

TruncatedOperator operator+(const TruncatedOperator& a,
                            const TruncatedOperator& b) {
  require_same_shape(a.shape_, b.shape_);
  return {a.matrix_ + b.matrix_, a.shape_};
}

TruncatedOperator operator-(const TruncatedOperator& a,
                            const TruncatedOperator& b) {
  require_same_shape(a.shape_, b.shape_);
  return {a.matrix_ - b.matrix_, a.shape_};
}

TruncatedOperator operator*(const TruncatedOperator& a,
                            const TruncatedOperator& b) {
  require_same_shape(a.shape_, b.shape_);
  return {a.matrix_ * b.matrix_, a.shape_};
}

TruncatedOperator operator*(Complex s, const TruncatedOperator& a) {
  return {s * a.matrix_, a.shape_};
}

TruncatedOperator commutator(const TruncatedOperator& a,
                             const TruncatedOperator& b) {
  return a * b - b * a;
}

namespace {

double checked_fraction(double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument,
                "bulk fraction must lie in (0, 1], got " +
                    std::to_string(fraction));
  }
  return fraction;
}

}  // namespace

BulkProjector::BulkProjector(TwoModeDims dims, double fraction)
    : BulkProjector(dims, checked_fraction(fraction),
                    static_cast<int>(std::floor(fraction * dims.min_levels()))) {}

BulkProjector BulkProjector::full(TwoModeDims dims) {
  return BulkProjector(dims, 1.0, dims.mode1.levels() + dims.mode2.levels());
}

BulkProjector::BulkProjector(TwoModeDims dims, double fraction, int max_total)
    : dims_(dims), fraction_(fraction), max_total_(max_total) {
  for (Index i = 0; i < dims.size(); ++i) {
    if (dims.n1_of(i) + dims.n2_of(i) <= max_total_) indices_.push_back(i);
  }
}

Matrix BulkProjector::restrict(const Matrix& m) const {
  if (m.rows() != dims_.size() || m.cols() != dims_.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "bulk projector applied to a matrix of the wrong size");
  }
  return m(indices_, indices_);
}

Vector BulkProjector::restrict_vector(const Vector& v) const {
  if (v.size() != dims_.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "bulk projector applied to a vector of the wrong size");
  }
  return v(indices_);
}

namespace fock {

TruncatedOperator ladder(ModeDim dim) {
  const int n = dim.levels();
  Matrix a = Matrix::Zero(n, n);
  for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return {std::move(a), ModeShape::single(dim)};
}

TruncatedOperator position_op(ModeDim dim) {
  const Matrix a = ladder(dim).matrix();
  return {(a + a.adjoint()) / std::sqrt(2.0), ModeShape::single(dim)};
}

TruncatedOperator momentum_op(ModeDim dim) {
  const Matrix a = ladder(dim).matrix();
  const Complex i_over_root2(0.0, 1.0 / std::sqrt(2.0));
  return {i_over_root2 * (a.adjoint() - a), ModeShape::single(dim)};
}

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ModeDim single_mode_dim(const TruncatedOperator& op) {
  if (op.shape().two_mode()) {
    throw Error(ErrorKind::DimensionMismatch,
                "only single-mode operators can be embedded");
  }
  return op.shape().first();
}

}  // namespace

TruncatedOperator embed_mode1(const TruncatedOperator& op, ModeDim dim2) {
  const ModeDim dim1 = single_mode_dim(op);
  return {kron(op.matrix(), Matrix::Identity(dim2.levels(), dim2.levels())),
          ModeShape::pair({dim1, dim2})};
}

TruncatedOperator embed_mode2(const TruncatedOperator& op, ModeDim dim1) {
  const ModeDim dim2 = single_mode_dim(op);
  return {kron(Matrix::Identity(dim1.levels(), dim1.levels()), op.matrix()),
          ModeShape::pair({dim1, dim2})};
}

TruncatedOperator tensor(const TruncatedOperator& a, const TruncatedOperator& b) {
  const ModeDim dim1 = single_mode_dim(a);
  const ModeDim dim2 = single_mode_dim(b);
  return {kron(a.matrix(), b.matrix()), ModeShape::pair({dim1, dim2})};
}

TwoModeCanonical canonical_operators(TwoModeDims dims) {
  return {
      embed_mode1(position_op(dims.mode1), dims.mode2),
      embed_mode2(position_op(dims.mode2), dims.mode1),
      embed_mode1(momentum_op(dims.mode1), dims.mode2),
      embed_mode2(momentum_op(dims.mode2), dims.mode1),
  };
}

}  // namespace fock
}  // namespace etapt
