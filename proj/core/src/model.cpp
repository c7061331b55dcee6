#include "etapt/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "etapt/error.hpp"
#include "etapt/linalg.hpp"
#include "etapt/symm.hpp"

namespace etapt {

OscillatorParams::OscillatorParams(double c1_sq_, double c2_sq_, double c3_)
    : c1_sq(c1_sq_), c2_sq(c2_sq_), c3(c3_) {
  if (!std::isfinite(c1_sq) || !std::isfinite(c2_sq) || !std::isfinite(c3)) {
    throw Error(ErrorKind::InvalidArgument, "oscillator parameters must be finite");
  }
  if (!(c1_sq > 0.0) || !(c2_sq > 0.0)) {
    throw Error(ErrorKind::InvalidArgument,
                "c1^2 and c2^2 must be strictly positive");
  }
}

double OscillatorParams::discriminant() const noexcept {
  const double d = c1_sq - c2_sq;
  return d * d - c3 * c3;
}

bool OscillatorParams::unbroken() const noexcept { return discriminant() > 0.0; }

namespace model {

namespace {

std::string describe(const OscillatorParams& p) {
  std::ostringstream os;
  os << "(c1^2=" << p.c1_sq << ", c2^2=" << p.c2_sq << ", c3=" << p.c3 << ")";
  return os.str();
}

[[noreturn]] void throw_broken(const OscillatorParams& p) {
  throw BrokenPhaseError("no real metric angle for " + describe(p) +
                             ": requires (c2^2 - c1^2)^2 > c3^2",
                         squared_frequencies(p));
}

}  // namespace

std::array<std::complex<double>, 2> squared_frequencies(const OscillatorParams& p) {
  const double mean = 0.5 * (p.c1_sq + p.c2_sq);
  const std::complex<double> half_root =
      0.5 * std::sqrt(std::complex<double>(p.discriminant(), 0.0));
  // Mode-following branch: the first entry reduces to c1^2 at c3 = 0.
  const double s = p.c1_sq >= p.c2_sq ? 1.0 : -1.0;
  return {mean + s * half_root, mean - s * half_root};
}

double theta_of(const OscillatorParams& p) {
  const double gap = p.c2_sq - p.c1_sq;
  if (gap == 0.0) {
    if (p.c3 == 0.0) {
      throw Error(ErrorKind::DegenerateFrequencies,
                  "c1^2 == c2^2 leaves the metric angle undetermined for " +
                      describe(p));
    }
    throw_broken(p);
  }
  if (std::abs(p.c3) >= std::abs(gap)) throw_broken(p);
  return std::atanh(p.c3 / gap);
}

double closure_residual(const OscillatorParams& p, double theta) noexcept {
  return (p.c1_sq - p.c2_sq) * std::sinh(theta) + p.c3 * std::cosh(theta);
}

DecoupledSpec decoupled_frequencies(const OscillatorParams& p) {
  const double disc = p.discriminant();
  if (disc < 0.0) throw_broken(p);
  const auto w2 = squared_frequencies(p);
  double theta = 0.0;
  if (p.c3 != 0.0) {
    theta = disc > 0.0 ? theta_of(p)
                       : std::copysign(std::numeric_limits<double>::infinity(),
                                       p.c3 / (p.c2_sq - p.c1_sq));
  }
  return {theta, std::sqrt(w2[0].real()), std::sqrt(w2[1].real())};
}

double analytic_energy(const DecoupledSpec& spec, int n1, int n2) {
  if (n1 < 0 || n2 < 0) {
    throw Error(ErrorKind::InvalidArgument, "quantum numbers must be nonnegative");
  }
  return spec.omega1 * (n1 + 0.5) + spec.omega2 * (n2 + 0.5);
}

std::vector<AnalyticLevel> analytic_levels(const DecoupledSpec& spec,
                                           std::size_t count) {
  // Every level among the lowest `count` has n_i <= count.
  const int reach = static_cast<int>(count);
  std::vector<AnalyticLevel> all;
  for (int n1 = 0; n1 <= reach; ++n1) {
    for (int n2 = 0; n2 <= reach; ++n2) {
      all.push_back({{n1, n2}, analytic_energy(spec, n1, n2)});
    }
  }
  std::stable_sort(all.begin(), all.end(),
                   [](const AnalyticLevel& a, const AnalyticLevel& b) {
                     return a.energy < b.energy;
                   });
  all.resize(std::min(count, all.size()));
  return all;
}

namespace {

// 1/2 sum_i (P_i^2 + k_i X_i^2), squared per mode before embedding.
TruncatedOperator uncoupled_part(TwoModeDims dims, double k1, double k2) {
  auto mode = [](ModeDim dim, double k) {
    const auto x = fock::position_op(dim);
    const auto p = fock::momentum_op(dim);
    return Complex(0.5) * (p * p + Complex(k) * (x * x));
  };
  return fock::embed_mode1(mode(dims.mode1, k1), dims.mode2) +
         fock::embed_mode2(mode(dims.mode2, k2), dims.mode1);
}

}  // namespace

TruncatedOperator hamiltonian(const OscillatorParams& p, TwoModeDims dims) {
  const auto x1x2 = fock::tensor(fock::position_op(dims.mode1), fock::position_op(dims.mode2));
  return uncoupled_part(dims, p.c1_sq, p.c2_sq) + Complex(0.0, 0.5 * p.c3) * x1x2;
}

TruncatedOperator decoupled_hamiltonian(const DecoupledSpec& spec, TwoModeDims dims) {
  return uncoupled_part(dims, spec.omega1 * spec.omega1, spec.omega2 * spec.omega2);
}

std::size_t max_reliable_levels(TwoModeDims dims) {
  return BulkProjector(dims, 0.5).indices().size();
}

namespace {

struct RealPair {
  double value;
  Eigen::VectorXd vector;
};

// Lowest `count` eigenpairs of a real symmetric matrix, solved per invariant block.
std::vector<RealPair> lowest_symmetric(const Matrix& m, std::size_t count) {
  std::vector<RealPair> pairs;
  const Eigen::MatrixXd re = m.real();
  for (const auto& idx : linalg::invariant_blocks(m)) {
    const Eigen::MatrixXd sub = re(idx, idx);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sub);
    if (solver.info() != Eigen::Success) {
      throw Error(ErrorKind::Numerical, "symmetric eigensolve failed");
    }
    for (Index k = 0; k < sub.rows(); ++k) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(m.rows());
      v(idx) = solver.eigenvectors().col(k);
      pairs.push_back({solver.eigenvalues()(k), std::move(v)});
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const RealPair& a, const RealPair& b) { return a.value < b.value; });
  pairs.resize(std::min(count, pairs.size()));
  return pairs;
}

void fix_sign(Eigen::VectorXd& v) {
  const double cutoff = 1e-10 * v.cwiseAbs().maxCoeff();
  for (Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > cutoff) {
      if (v(i) < 0.0) v = -v;
      return;
    }
  }
}

}  // namespace

std::vector<ModelState> model_eigensystem(const OscillatorParams& params,
                                          TwoModeDims dims, std::size_t k) {
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "k must be at least 1");
  if (!params.unbroken()) throw_broken(params);
  if (k > max_reliable_levels(dims)) {
    throw Error(ErrorKind::TruncationLimit,
                "k = " + std::to_string(k) + " exceeds the " +
                    std::to_string(max_reliable_levels(dims)) +
                    " levels resolved at this truncation");
  }

  const DecoupledSpec spec = decoupled_frequencies(params);
  const auto levels = analytic_levels(spec, k + 2);
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < levels.size(); ++i) {
    min_gap = std::min(min_gap, levels[i].energy - levels[i - 1].energy);
  }
  const double window = 0.5 * min_gap;
  if (!(window > 1e-9)) {
    throw Error(ErrorKind::Degeneracy,
                "analytic levels are (near-)degenerate; pick incommensurate frequencies");
  }

  const TruncatedOperator h = decoupled_hamiltonian(spec, dims);
  const auto pairs = lowest_symmetric(h.matrix(), k);
  const MetricPair met = symm::metric(spec.theta, dims);
  const AntilinearMap pt_rho = symm::pt_map(dims) * AntilinearMap::linear(met.rho);

  std::vector<ModelState> states;
  std::vector<bool> used(levels.size(), false);
  for (auto pair : pairs) {
    std::size_t best = levels.size();
    for (std::size_t j = 0; j < levels.size(); ++j) {
      if (used[j]) continue;
      if (std::abs(levels[j].energy - pair.value) < window &&
          (best == levels.size() ||
           std::abs(levels[j].energy - pair.value) <
               std::abs(levels[best].energy - pair.value))) {
        best = j;
      }
    }
    if (best == levels.size()) {
      throw Error(ErrorKind::TruncationLimit,
                  "decoupled eigenvalue " + std::to_string(pair.value) +
                      " matches no analytic level; increase the truncation");
    }
    used[best] = true;
    fix_sign(pair.vector);
    const Vector phi = pair.vector.cast<Complex>();
    states.push_back({levels[best].label, levels[best].energy, pair.value, phi,
                      pt_rho.apply(phi)});
  }
  std::stable_sort(states.begin(), states.end(),
                   [](const ModelState& a, const ModelState& b) { return a.energy < b.energy; });
  return states;
}

}  // namespace model
}  // namespace etapt
