// linalg.hpp: dense eigen-solvers that exploit exact block structure.
//
// Operators built from the oscillator algebra conserve simple quantum numbers
// (total excitation for the boost generator, total parity for the coupled
// Hamiltonian). Splitting on the connected components of the sparsity pattern
// keeps each block dense while stopping roundoff from large-eigenvalue blocks
// leaking into small ones.

#pragma once

#include <functional>
#include <vector>

#include "etapt/fock.hpp"

namespace etapt::linalg {

// Index sets of the connected components of the graph with an edge i -- j
// whenever m(i, j) or m(j, i) is nonzero. Each set is sorted ascending; sets
// are ordered by their smallest index.
std::vector<std::vector<Index>> invariant_blocks(const Matrix& m);

// Eigendecomposition of a Hermitian matrix, computed block by block.
class HermitianEigensystem {
 public:
  explicit HermitianEigensystem(const Matrix& hermitian);

  // U f(D) U^dagger.
  Matrix apply(const std::function<double(double)>& f) const;

  Eigen::VectorXd eigenvalues() const;
  Index size() const noexcept { return size_; }

 private:
  struct Block {
    std::vector<Index> indices;
    Eigen::VectorXd values;
    Matrix vectors;
  };
  Index size_;
  std::vector<Block> blocks_;
};

struct Eigenpair {
  Complex value;
  Vector vector;  // unit 2-norm
};

// Orders by real part, ties broken by imaginary part.
bool spectral_less(Complex a, Complex b) noexcept;

// All eigenpairs of a general complex matrix, sorted with spectral_less.
// Throws Numerical if the QR iteration fails to converge.
std::vector<Eigenpair> general_eigensystem(const Matrix& m);

// Eigenvalues only; cheaper than general_eigensystem.
std::vector<Complex> general_eigenvalues(const Matrix& m);

}  // namespace etapt::linalg
