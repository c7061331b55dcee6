#include <cmath>
#include <random>

#include "doctest.h"
#include "etapt/error.hpp"
#include "etapt/model.hpp"
#include "etapt/symm.hpp"
#include "test_support.hpp"

using namespace etapt;
using etapt::test::dims;
using etapt::test::max_abs;

namespace {

Vector random_vector(Index n, std::mt19937& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = Complex(g(rng), g(rng));
  return v;
}

AntilinearMap random_map(ModeShape shape, bool conj, std::mt19937& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  const Index n = shape.size();
  Matrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = Complex(g(rng), g(rng));
  return {TruncatedOperator(m, shape), conj};
}

}  // namespace

TEST_CASE("parity operator") {
  const auto pi = symm::parity(dims(2, 2));
  Matrix expected = Matrix::Zero(4, 4);
  expected.diagonal() << 1, -1, -1, 1;
  CHECK(max_abs(pi.matrix() - expected) == 0.0);

  const TwoModeDims d = dims(6, 5);
  const auto c = fock::canonical_operators(d);
  const auto p = symm::parity(d);
  CHECK(max_abs((p * p).matrix() - Matrix::Identity(30, 30)) == 0.0);
  for (const auto* op : {&c.x1, &c.x2, &c.p1, &c.p2}) {
    CHECK(max_abs((p * *op * p + *op).matrix()) == 0.0);
  }
  CHECK(max_abs((p * (c.x1 * c.x2) * p - c.x1 * c.x2).matrix()) == 0.0);
}

TEST_CASE("time reversal and PT are involutive antilinear maps") {
  const TwoModeDims d = dims(4, 3);
  const auto t = symm::time_reversal(d);
  const auto tt = t * t;
  CHECK_FALSE(tt.conjugates());
  CHECK(max_abs(tt.linear_part().matrix() - Matrix::Identity(12, 12)) == 0.0);

  std::mt19937 rng(3);
  const Vector v = random_vector(12, rng);
  const Complex i(0, 1);
  CHECK((t.apply(i * v) + i * t.apply(v)).norm() < 1e-15);

  const auto pt = symm::pt_map(d);
  const auto ptpt = pt * pt;
  CHECK_FALSE(ptpt.conjugates());
  CHECK(max_abs(ptpt.linear_part().matrix() - Matrix::Identity(12, 12)) == 0.0);

  // Pi real: Pi conj(v) == conj(Pi v)
  const auto pi = symm::parity(d);
  CHECK((pi.matrix() * v.conjugate() - (pi.matrix() * v).conjugate()).norm() == 0.0);

  const auto c = fock::canonical_operators(d);
  CHECK(max_abs(c.p1.conjugate().matrix() + c.p1.matrix()) == 0.0);
  CHECK(max_abs(c.x1.conjugate().matrix() - c.x1.matrix()) == 0.0);
}

TEST_CASE("antilinear composition law") {
  std::mt19937 rng(17);
  const ModeShape shape = ModeShape::pair(dims(3, 2));
  for (int trial = 0; trial < 16; ++trial) {
    const auto a = random_map(shape, trial & 1, rng);
    const auto b = random_map(shape, trial & 2, rng);
    const auto c = random_map(shape, trial & 4, rng);
    const Vector v = random_vector(6, rng);
    // composition agrees with sequential application
    CHECK(((a * b).apply(v) - a.apply(b.apply(v))).norm() < 1e-11 * (1 + v.norm()) * 100);
    // associativity
    const auto left = (a * b) * c;
    const auto right = a * (b * c);
    CHECK(left.conjugates() == right.conjugates());
    CHECK(max_abs(left.linear_part().matrix() - right.linear_part().matrix()) < 1e-11);
    // identity is neutral
    const auto id = AntilinearMap::identity(shape);
    CHECK(max_abs((a * id).linear_part().matrix() - a.linear_part().matrix()) == 0.0);
    CHECK(max_abs((id * a).linear_part().matrix() - a.linear_part().matrix()) == 0.0);
    CHECK((a * id).conjugates() == a.conjugates());
  }
}

TEST_CASE("pt_conjugate") {
  const TwoModeDims d = dims(5, 5);
  const auto c = fock::canonical_operators(d);
  const auto x1x2 = c.x1 * c.x2;
  CHECK(max_abs(symm::pt_conjugate(x1x2).matrix() - x1x2.matrix()) == 0.0);
  const Complex i(0, 1);
  CHECK(max_abs(symm::pt_conjugate(i * x1x2).matrix() + (i * x1x2).matrix()) == 0.0);

  const auto h = model::hamiltonian(OscillatorParams(2, 1, 0.5), d);
  CHECK(max_abs(symm::pt_conjugate(symm::pt_conjugate(h)).matrix() - h.matrix()) == 0.0);

  const auto hr = model::hamiltonian(OscillatorParams(2, 1, 0.0), d);
  CHECK(max_abs(symm::pt_conjugate(hr).matrix() - hr.matrix()) == 0.0);

  CHECK_THROWS_AS(symm::pt_conjugate(fock::position_op(ModeDim(3))), Error);
}

TEST_CASE("boost generator structure") {
  const TwoModeDims d = dims(7, 6);
  const auto a = symm::boost_generator(d);
  const auto pi = symm::parity(d);
  CHECK(max_abs(a.matrix() - a.matrix().adjoint()) < 1e-15);
  CHECK(max_abs(a.matrix().conjugate() + a.matrix()) < 1e-15);
  CHECK(max_abs((pi * a * pi - a).matrix()) == 0.0);

  const auto c = fock::canonical_operators(d);
  CHECK(max_abs(a.matrix() - (c.p2 * c.x1 - c.p1 * c.x2).matrix()) < 1e-14);
}

TEST_CASE("metric at theta = 0 is the identity") {
  const TwoModeDims d = dims(6, 6);
  const auto m = symm::metric(0.0, d);
  const Matrix id = Matrix::Identity(36, 36);
  CHECK(max_abs(m.eta.matrix() - id) < 1e-14);
  CHECK(max_abs(m.rho.matrix() - id) < 1e-14);
  CHECK(max_abs(m.eta_inv.matrix() - id) < 1e-14);
}

TEST_CASE("metric members are consistent Hermitian positive-definite matrices") {
  const TwoModeDims d = dims(10, 10);
  for (double theta : {-0.5493061443340549, 0.3, 1.1}) {
    const auto m = symm::metric(theta, d);
    const Matrix id = Matrix::Identity(100, 100);
    const double scale = m.eta.matrix().norm();
    CHECK(max_abs(m.eta.matrix() * m.eta_inv.matrix() - id) < 1e-10 * scale);
    CHECK(max_abs(m.eta.matrix() - m.eta.matrix().adjoint()) < 1e-12 * scale);
    CHECK((m.rho.matrix() * m.rho.matrix() - m.eta.matrix()).norm() / scale < 1e-10);
    const Eigen::SelfAdjointEigenSolver<Matrix> es(m.eta.matrix());
    CHECK(es.eigenvalues().minCoeff() > 0.0);

    const auto back = symm::metric(-theta, d);
    CHECK(max_abs(m.eta.matrix() * back.eta.matrix() - id) < 1e-10 * scale);
  }
}

TEST_CASE("PT-conjugate of eta is its inverse in the bulk, converging with truncation") {
  const double theta = std::atanh(-0.5);
  double previous = 0.0;
  for (int n : {10, 16, 24}) {
    const TwoModeDims d = dims(n, n);
    const auto m = symm::metric(theta, d);
    const BulkProjector q(d, 0.5);
    const double res =
        q.restrict(symm::pt_conjugate(m.eta).matrix() - m.eta_inv.matrix()).norm() /
        m.eta_inv.matrix().norm();
    CHECK(res < 1e-12);
    if (previous > 0.0) CHECK(res < previous);
    previous = res;
  }
}

TEST_CASE("eta_tilde") {
  const TwoModeDims d = dims(12, 12);
  const Index n = d.size();

  const auto et0 = symm::eta_tilde(symm::metric(0.0, d));
  const auto pt = symm::pt_map(d);
  CHECK(et0.conjugates());
  CHECK(max_abs(et0.linear_part().matrix() - pt.linear_part().matrix()) < 1e-14);

  const auto met = symm::metric(std::atanh(-0.5), d);
  const auto et = symm::eta_tilde(met);
  // Ordering: v -> Pi conj(eta v)
  std::mt19937 rng(5);
  const Vector v = random_vector(n, rng);
  const Vector direct =
      symm::parity(d).matrix() * (met.eta.matrix() * v).conjugate();
  CHECK((et.apply(v) - direct).norm() < 1e-12 * direct.norm());

  const auto sq = et * et;
  CHECK_FALSE(sq.conjugates());
  const BulkProjector q(d, 0.5);
  CHECK(max_abs(q.restrict(sq.linear_part().matrix() - Matrix::Identity(n, n))) < 1e-10);

  // Standard adjoint differs: Pi conj(eta) != eta Pi for theta != 0.
  const Matrix pi = symm::parity(d).matrix();
  const Matrix lin = et.linear_part().matrix();
  CHECK(max_abs(q.restrict(lin - met.eta.matrix() * pi)) > 1e-2);
}

TEST_CASE("charge operator from an eigenbasis") {
  const TwoModeDims d = dims(4, 4);
  const auto et = symm::pt_map(d);
  std::vector<Vector> basis;
  for (auto [n1, n2] : {std::pair{0, 0}, std::pair{0, 1}, std::pair{1, 1}}) {
    Vector e = Vector::Zero(d.size());
    e(d.index(n1, n2)) = 1.0;
    basis.push_back(e);
  }
  const std::vector<int> plus{1, 1, 1};
  const auto c_plus = symm::charge_from_eigenbasis(basis, plus, et);
  for (const auto& v : basis) CHECK((c_plus.matrix() * v - v).norm() < 1e-14);

  const std::vector<Vector> two{basis[0], basis[1]};
  const std::vector<int> pm{1, -1};
  const auto c = symm::charge_from_eigenbasis(two, pm, et);
  CHECK((c.matrix() * two[0] - two[0]).norm() < 1e-14);
  CHECK((c.matrix() * two[1] + two[1]).norm() < 1e-14);
  const Matrix csq = c.matrix() * c.matrix();
  for (const auto& v : two) CHECK((csq * v - v).norm() < 1e-14);

  const std::vector<Vector> dup{basis[0], basis[0]};
  CHECK_THROWS_AS(symm::charge_from_eigenbasis(dup, pm, et), Error);
  try {
    symm::charge_from_eigenbasis(dup, pm, et);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Degeneracy);
  }
  const std::vector<int> bad{1, 2};
  CHECK_THROWS_AS(symm::charge_from_eigenbasis(two, bad, et), Error);
}

TEST_CASE("charge operator reproduces (-1)^(n1+n2) on coupled-oscillator states") {
  const OscillatorParams params(2, 1, 0.5);
  const TwoModeDims d = dims(20, 20);
  const auto states = model::model_eigensystem(params, d, 4);
  const auto et = symm::eta_tilde(symm::metric(model::theta_of(params), d));

  std::vector<Vector> psi;
  std::vector<int> signs;
  for (const auto& s : states) {
    psi.push_back(s.psi);
    // Oracle: (psi_n, psi_n)_eta~ = phi_n^T Pi phi_n.
    const Complex oracle = s.phi.transpose() * symm::parity(d).matrix() * s.phi;
    signs.push_back(oracle.real() > 0 ? 1 : -1);
    CHECK(signs.back() == (((s.label.n1 + s.label.n2) % 2 == 0) ? 1 : -1));
  }
  const auto c = symm::charge_from_eigenbasis(psi, signs, et);
  for (std::size_t i = 0; i < psi.size(); ++i) {
    CHECK((c.matrix() * psi[i] - Complex(signs[i]) * psi[i]).norm() < 1e-8 * psi[i].norm());
  }
}
