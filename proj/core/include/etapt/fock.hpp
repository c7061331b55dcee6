// fock.hpp: truncated single- and two-mode Fock-space operator algebra.
//
// Conventions: hbar = m = 1 and unit base frequency, so
//   X = (a + a^dagger) / sqrt(2),   P = i (a^dagger - a) / sqrt(2).
// Two-mode operators act on C^{N1} (x) C^{N2}; mode 1 is the slow (left
// Kronecker) factor, so |n1, n2> sits at flat index n1 * N2 + n2.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

namespace etapt {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

// Number of Fock levels kept for one mode (at least 2).
class ModeDim {
 public:
  explicit ModeDim(int n_levels);

  int levels() const noexcept { return n_levels_; }

  friend bool operator==(ModeDim, ModeDim) = default;

 private:
  int n_levels_;
};

struct TwoModeDims {
  ModeDim mode1;
  ModeDim mode2;

  Index size() const noexcept {
    return static_cast<Index>(mode1.levels()) * mode2.levels();
  }
  Index index(int n1, int n2) const noexcept {
    return static_cast<Index>(n1) * mode2.levels() + n2;
  }
  int n1_of(Index flat) const noexcept {
    return static_cast<int>(flat / mode2.levels());
  }
  int n2_of(Index flat) const noexcept {
    return static_cast<int>(flat % mode2.levels());
  }
  int min_levels() const noexcept {
    return mode1.levels() < mode2.levels() ? mode1.levels() : mode2.levels();
  }

  friend bool operator==(const TwoModeDims&, const TwoModeDims&) = default;
};

// Either a single mode or an ordered pair of modes.
class ModeShape {
 public:
  static ModeShape single(ModeDim dim) { return ModeShape(dim, std::nullopt); }
  static ModeShape pair(TwoModeDims dims) {
    return ModeShape(dims.mode1, dims.mode2);
  }

  bool two_mode() const noexcept { return second_.has_value(); }
  Index size() const noexcept;
  ModeDim first() const noexcept { return first_; }
  // Throws DimensionMismatch for a single-mode shape.
  TwoModeDims pair_dims() const;

  friend bool operator==(const ModeShape&, const ModeShape&) = default;

 private:
  ModeShape(ModeDim first, std::optional<ModeDim> second)
      : first_(first), second_(second) {}

  ModeDim first_;
  std::optional<ModeDim> second_;
};

// Dense complex matrix tagged with the Fock shape it acts on. Immutable value;
// every binary operation requires identical shapes.
class TruncatedOperator {
 public:
  TruncatedOperator(Matrix matrix, ModeShape shape);

  static TruncatedOperator identity(ModeShape shape);
  static TruncatedOperator zero(ModeShape shape);

  const Matrix& matrix() const noexcept { return matrix_; }
  const ModeShape& shape() const noexcept { return shape_; }
  Index side() const noexcept { return matrix_.rows(); }
  Complex operator()(Index row, Index col) const { return matrix_(row, col); }

  TruncatedOperator adjoint() const;
  TruncatedOperator conjugate() const;
  TruncatedOperator transpose() const;

  friend TruncatedOperator operator+(const TruncatedOperator& a,
                                     const TruncatedOperator& b);
  friend TruncatedOperator operator-(const TruncatedOperator& a,
                                     const TruncatedOperator& b);
  friend TruncatedOperator operator*(const TruncatedOperator& a,
                                     const TruncatedOperator& b);
  friend TruncatedOperator operator*(Complex s, const TruncatedOperator& a);
  friend TruncatedOperator operator*(const TruncatedOperator& a, Complex s) {
    return s * a;
  }
  friend TruncatedOperator operator-(const TruncatedOperator& a) {
    return Complex(-1.0) * a;
  }

 private:
  Matrix matrix_;
  ModeShape shape_;
};

TruncatedOperator commutator(const TruncatedOperator& a,
                             const TruncatedOperator& b);

// Throws DimensionMismatch unless the two shapes agree.
void require_same_shape(const ModeShape& a, const ModeShape& b);

// Projector Q onto low-lying two-mode states n1 + n2 <= max_total, where
// max_total = floor(fraction * min(N1, N2)). Truncation breaks the canonical
// commutator only at the basis edge, so identities are compared inside Q.
class BulkProjector {
 public:
  BulkProjector(TwoModeDims dims, double fraction);

  // Every basis state; used for identities that survive truncation exactly.
  static BulkProjector full(TwoModeDims dims);

  bool is_full() const noexcept {
    return static_cast<Index>(indices_.size()) == dims_.size();
  }

  double fraction() const noexcept { return fraction_; }
  int max_total() const noexcept { return max_total_; }
  const TwoModeDims& dims() const noexcept { return dims_; }
  const std::vector<Index>& indices() const noexcept { return indices_; }

  // Q M Q restricted to the bulk block.
  Matrix restrict(const Matrix& m) const;
  Vector restrict_vector(const Vector& v) const;

 private:
  BulkProjector(TwoModeDims dims, double fraction, int max_total);

  TwoModeDims dims_;
  double fraction_;
  int max_total_;
  std::vector<Index> indices_;
};

namespace fock {

// Annihilation operator: a[n-1, n] = sqrt(n).
TruncatedOperator ladder(ModeDim dim);
TruncatedOperator position_op(ModeDim dim);
TruncatedOperator momentum_op(ModeDim dim);

// op (x) I_{dim2}
TruncatedOperator embed_mode1(const TruncatedOperator& op, ModeDim dim2);
// I_{dim1} (x) op
TruncatedOperator embed_mode2(const TruncatedOperator& op, ModeDim dim1);
// a (x) b for single-mode a (mode 1) and b (mode 2)
TruncatedOperator tensor(const TruncatedOperator& a, const TruncatedOperator& b);

struct TwoModeCanonical {
  TruncatedOperator x1, x2, p1, p2;
};

TwoModeCanonical canonical_operators(TwoModeDims dims);

}  // namespace fock
}  // namespace etapt
