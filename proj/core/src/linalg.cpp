#include "etapt/linalg.hpp"

#include <algorithm>
#include <cstddef>
#include <numeric>

#include "etapt/error.hpp"

extern "C" void zgeev_(const char* jobvl, const char* jobvr, const int* n,
                       std::complex<double>* a, const int* lda, std::complex<double>* w,
                       std::complex<double>* vl, const int* ldvl, std::complex<double>* vr,
                       const int* ldvr, std::complex<double>* work, const int* lwork,
                       double* rwork, int* info, std::size_t jobvl_len,
                       std::size_t jobvr_len);

namespace etapt::linalg {

namespace {

Index find_root(std::vector<Index>& parent, Index i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

}  // namespace

std::vector<std::vector<Index>> invariant_blocks(const Matrix& m) {
  const Index n = m.rows();
  std::vector<Index> parent(n);
  std::iota(parent.begin(), parent.end(), Index{0});
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < n; ++i) {
      if (i == j || m(i, j) == Complex(0.0)) continue;
      const Index ri = find_root(parent, i);
      const Index rj = find_root(parent, j);
      if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
    }
  }
  std::vector<std::vector<Index>> blocks;
  std::vector<Index> slot(n, -1);
  for (Index i = 0; i < n; ++i) {
    const Index r = find_root(parent, i);
    if (slot[r] < 0) {
      slot[r] = static_cast<Index>(blocks.size());
      blocks.emplace_back();
    }
    blocks[slot[r]].push_back(i);
  }
  return blocks;
}

HermitianEigensystem::HermitianEigensystem(const Matrix& hermitian)
    : size_(hermitian.rows()) {
  if (hermitian.rows() != hermitian.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "eigensystem of a non-square matrix");
  }
  for (auto& idx : invariant_blocks(hermitian)) {
    const Matrix sub = hermitian(idx, idx);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sub);
    if (solver.info() != Eigen::Success) {
      throw Error(ErrorKind::Numerical,
                  "Hermitian eigendecomposition failed on a block of size " +
                      std::to_string(idx.size()));
    }
    blocks_.push_back({std::move(idx), solver.eigenvalues(), solver.eigenvectors()});
  }
}

Matrix HermitianEigensystem::apply(const std::function<double(double)>& f) const {
  Matrix out = Matrix::Zero(size_, size_);
  for (const auto& b : blocks_) {
    const Eigen::VectorXd fd = b.values.unaryExpr(f);
    out(b.indices, b.indices) = b.vectors * fd.asDiagonal() * b.vectors.adjoint();
  }
  return out;
}

Eigen::VectorXd HermitianEigensystem::eigenvalues() const {
  Eigen::VectorXd all(size_);
  Index k = 0;
  for (const auto& b : blocks_) {
    all.segment(k, b.values.size()) = b.values;
    k += b.values.size();
  }
  std::sort(all.begin(), all.end());
  return all;
}

bool spectral_less(Complex a, Complex b) noexcept {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

namespace {

struct GeevResult {
  Vector values;
  Matrix vectors;  // right eigenvectors, unit 2-norm; empty unless requested
};

// LAPACK zgeev on a copy of a.
GeevResult geev(Matrix a, bool with_vectors) {
  const int n = static_cast<int>(a.rows());
  const char jobvl = 'N', jobvr = with_vectors ? 'V' : 'N';
  GeevResult r{Vector(n), with_vectors ? Matrix(n, n) : Matrix(1, 1)};
  const int ldvr = with_vectors ? n : 1;
  const int one = 1;
  std::complex<double> vl_dummy;
  Eigen::VectorXd rwork(2 * n);
  int info = 0;
  int lwork = -1;
  std::complex<double> query;
  zgeev_(&jobvl, &jobvr, &n, a.data(), &n, r.values.data(), &vl_dummy, &one, r.vectors.data(),
         &ldvr, &query, &lwork, rwork.data(), &info, 1, 1);
  lwork = std::max(1, static_cast<int>(query.real()));
  Vector work(lwork);
  zgeev_(&jobvl, &jobvr, &n, a.data(), &n, r.values.data(), &vl_dummy, &one, r.vectors.data(),
         &ldvr, work.data(), &lwork, rwork.data(), &info, 1, 1);
  if (info != 0) {
    throw Error(ErrorKind::Numerical, "nonsymmetric eigensolve failed (zgeev info " +
                                          std::to_string(info) + ") on a block of size " +
                                          std::to_string(n));
  }
  return r;
}

template <bool WithVectors>
void solve_blocks(const Matrix& m, std::vector<Eigenpair>& out) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "eigensystem of a non-square matrix");
  }
  for (const auto& idx : invariant_blocks(m)) {
    const auto solved = geev(m(idx, idx), WithVectors);
    for (Index k = 0; k < solved.values.size(); ++k) {
      Eigenpair p{solved.values(k), Vector()};
      if constexpr (WithVectors) {
        p.vector = Vector::Zero(m.rows());
        p.vector(idx) = solved.vectors.col(k).normalized();
      }
      out.push_back(std::move(p));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Eigenpair& a, const Eigenpair& b) {
    return spectral_less(a.value, b.value);
  });
}

}  // namespace

std::vector<Eigenpair> general_eigensystem(const Matrix& m) {
  std::vector<Eigenpair> out;
  solve_blocks<true>(m, out);
  return out;
}

std::vector<Complex> general_eigenvalues(const Matrix& m) {
  std::vector<Eigenpair> pairs;
  solve_blocks<false>(m, pairs);
  std::vector<Complex> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(p.value);
  return out;
}

}  // namespace etapt::linalg
