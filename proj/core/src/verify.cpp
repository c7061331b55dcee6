#include "etapt/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "etapt/error.hpp"
#include "etapt/linalg.hpp"

namespace etapt::verify {

namespace {

double relative(const BulkProjector& bulk, const Matrix& diff, const Matrix& ref) {
  const double denom = ref.norm();
  const double num = bulk.restrict(diff).norm();
  if (denom == 0.0) return num;
  return num / denom;
}

TwoModeDims dims_of(const TruncatedOperator& op, const BulkProjector& bulk) {
  const TwoModeDims dims = op.shape().pair_dims();
  if (!(dims == bulk.dims())) {
    throw Error(ErrorKind::DimensionMismatch,
                "bulk projector built for a different truncation");
  }
  return dims;
}

}  // namespace

ResidualReport make_report(std::string name, double residual, const BulkProjector& bulk,
                           double tolerance) {
  return {std::move(name), residual, bulk.fraction(), bulk.dims(), tolerance,
          residual < tolerance};
}

ResidualReport pseudo_hermiticity_residual(const TruncatedOperator& h,
                                           const MetricPair& metric,
                                           const BulkProjector& bulk, double tolerance) {
  dims_of(h, bulk);
  require_same_shape(h.shape(), metric.eta.shape());
  const Matrix& hm = h.matrix();
  const Matrix diff = hm.adjoint() - metric.eta.matrix() * hm * metric.eta_inv.matrix();
  return make_report("pseudo_hermiticity", relative(bulk, diff, hm), bulk, tolerance);
}

ResidualReport pseudo_pt_residual(const TruncatedOperator& h, const BulkProjector& bulk,
                                  double tolerance) {
  dims_of(h, bulk);
  const Matrix diff = h.matrix().adjoint() - symm::pt_conjugate(h).matrix();
  return make_report("pseudo_pt", relative(bulk, diff, h.matrix()), bulk, tolerance);
}

ResidualReport eta_tilde_commutator(const TruncatedOperator& h, const AntilinearMap& et,
                                    const BulkProjector& bulk, double tolerance) {
  dims_of(h, bulk);
  require_same_shape(h.shape(), et.shape());
  const Matrix& hm = h.matrix();
  const Matrix& l = et.linear_part().matrix();
  // eta~ H v = L conj(H v) = L conj(H) conj(v);  H eta~ v = H L conj(v).
  const Matrix diff = et.conjugates() ? Matrix(hm * l - l * hm.conjugate())
                                      : Matrix(hm * l - l * hm);
  return make_report("eta_tilde_commutator", relative(bulk, diff, hm), bulk, tolerance);
}

ResidualReport eta_tilde_involution(const AntilinearMap& et, const BulkProjector& bulk,
                                    double tolerance) {
  const AntilinearMap sq = et * et;
  const Index n = sq.linear_part().side();
  const Matrix id = Matrix::Identity(n, n);
  // A leftover conjugation is an O(1) failure no matter what the linear part is.
  const double residual = sq.conjugates()
                              ? std::numeric_limits<double>::infinity()
                              : relative(bulk, sq.linear_part().matrix() - id, id);
  return make_report("eta_tilde_involution", residual, bulk, tolerance);
}

ResidualReport pt_metric_inverse(const MetricPair& metric, const BulkProjector& bulk,
                                 double tolerance) {
  dims_of(metric.eta, bulk);
  const Matrix diff = symm::pt_conjugate(metric.eta).matrix() - metric.eta_inv.matrix();
  return make_report("pt_metric_inverse", relative(bulk, diff, metric.eta_inv.matrix()),
                     bulk, tolerance);
}

std::vector<ResidualReport> transform_rules_check(const MetricPair& metric,
                                                  const BulkProjector& bulk,
                                                  double tolerance, double sinh_sign) {
  const TwoModeDims dims = dims_of(metric.eta, bulk);
  const auto c = fock::canonical_operators(dims);
  const Complex ch(std::cosh(metric.theta), 0.0);
  const Complex ish(0.0, sinh_sign * std::sinh(metric.theta));
  const Matrix& eta = metric.eta.matrix();
  const Matrix& eta_inv = metric.eta_inv.matrix();

  struct Rule {
    const char* name;
    const TruncatedOperator& op;
    TruncatedOperator expected;
  };
  const Rule rules[] = {
      {"transform_p1", c.p1, ch * c.p1 + ish * c.p2},
      {"transform_p2", c.p2, ch * c.p2 - ish * c.p1},
      {"transform_x1", c.x1, ch * c.x1 + ish * c.x2},
      {"transform_x2", c.x2, ch * c.x2 - ish * c.x1},
  };
  std::vector<ResidualReport> out;
  for (const auto& r : rules) {
    const Matrix diff = eta * r.op.matrix() * eta_inv - r.expected.matrix();
    out.push_back(make_report(r.name, relative(bulk, diff, r.op.matrix()), bulk, tolerance));
  }
  return out;
}

ResidualReport dyson_decoupling_residual(const TruncatedOperator& h,
                                         const MetricPair& metric,
                                         const TruncatedOperator& h_reference,
                                         const BulkProjector& bulk, double tolerance) {
  dims_of(h, bulk);
  require_same_shape(h.shape(), h_reference.shape());
  require_same_shape(h.shape(), metric.rho.shape());
  const Matrix diff =
      metric.rho.matrix() * h.matrix() * metric.rho_inv.matrix() - h_reference.matrix();
  return make_report("dyson_decoupling", relative(bulk, diff, h_reference.matrix()), bulk,
                     tolerance);
}

ResidualReport dyson_decoupling_residual(const OscillatorParams& params, TwoModeDims dims,
                                         const BulkProjector& bulk, double tolerance) {
  const DecoupledSpec spec = model::decoupled_frequencies(params);
  return dyson_decoupling_residual(model::hamiltonian(params, dims),
                                   symm::metric(spec.theta, dims),
                                   model::decoupled_hamiltonian(spec, dims), bulk,
                                   tolerance);
}

Complex bilinear_eta_tilde(const Vector& u, const Vector& v, const AntilinearMap& et) {
  if (u.size() != v.size()) {
    throw Error(ErrorKind::DimensionMismatch, "bilinear form of unequal-length vectors");
  }
  return et.apply(u).transpose() * v;
}

std::vector<Vector> normalize_eta_tilde(std::span<const Vector> eigvecs,
                                        const AntilinearMap& et, double threshold) {
  std::vector<Vector> out;
  out.reserve(eigvecs.size());
  for (const auto& v : eigvecs) {
    const double self = std::abs(bilinear_eta_tilde(v, v, et));
    if (!(self >= threshold * v.squaredNorm())) {
      throw Error(ErrorKind::IllConditionedNormalization,
                  "eta~ self-pairing " + std::to_string(self) +
                      " is too small to normalize");
    }
    // (eta~ (s v))^T (s v) = s^2 (eta~ v)^T v for real s.
    out.push_back(v / std::sqrt(self));
  }
  return out;
}

GramReport gram(std::span<const Vector> eigvecs, GramForm form, const AntilinearMap& et,
                double threshold) {
  if (eigvecs.empty()) {
    throw Error(ErrorKind::InvalidArgument, "Gram matrix of an empty vector set");
  }
  const auto psi = normalize_eta_tilde(eigvecs, et, threshold);
  const Index k = static_cast<Index>(psi.size());
  Matrix g(k, k);
  std::vector<Vector> images;
  images.reserve(psi.size());
  for (const auto& v : psi) images.push_back(et.apply(v));
  for (Index n = 0; n < k; ++n) {
    for (Index m = 0; m < k; ++m) g(n, m) = images[n].transpose() * psi[m];
  }

  GramReport report{form, Matrix(), {}, Matrix::Zero(k, k), 0.0, 0.0};
  for (Index n = 0; n < k; ++n) report.signs.push_back(g(n, n).real() >= 0.0 ? 1 : -1);
  if (form == GramForm::CEtaTilde) {
    // C eta~ psi_n = s_n eta~ psi_n.
    for (Index n = 0; n < k; ++n) g.row(n) *= static_cast<double>(report.signs[n]);
    report.target = Matrix::Identity(k, k);
  } else {
    for (Index n = 0; n < k; ++n) report.target(n, n) = report.signs[n];
  }
  report.matrix = std::move(g);
  report.max_deviation = (report.matrix - report.target).cwiseAbs().maxCoeff();
  for (Index n = 0; n < k; ++n) {
    for (Index m = 0; m < k; ++m) {
      if (n != m) {
        report.max_offdiag = std::max(report.max_offdiag, std::abs(report.matrix(n, m)));
      }
    }
  }
  return report;
}

double conjugate_pair_audit(std::span<const Complex> eigenvalues, double tol) {
  double worst = 0.0;
  for (const Complex& l : eigenvalues) {
    if (std::abs(l.imag()) <= tol) continue;
    const Complex partner = std::conj(l);
    double best = std::numeric_limits<double>::infinity();
    for (const Complex& m : eigenvalues) best = std::min(best, std::abs(partner - m));
    worst = std::max(worst, best);
  }
  return worst;
}

namespace {

void require_k(TwoModeDims dims, std::size_t k) {
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "k must be at least 1");
  if (k > model::max_reliable_levels(dims)) {
    throw Error(ErrorKind::TruncationLimit,
                "k = " + std::to_string(k) + " exceeds the " +
                    std::to_string(model::max_reliable_levels(dims)) +
                    " levels resolved at this truncation");
  }
}

double max_abs_imag(std::span<const Complex> values) {
  double m = 0.0;
  for (const Complex& v : values) m = std::max(m, std::abs(v.imag()));
  return m;
}

}  // namespace

SpectrumReport spectrum_report(const OscillatorParams& params, TwoModeDims dims,
                               std::size_t k, const Tolerances& tol) {
  require_k(dims, k);
  const auto all = linalg::general_eigenvalues(model::hamiltonian(params, dims).matrix());

  SpectrumReport r{dims, k, {}, {}, {}, 0.0, Phase::Unbroken, 0.0, tol, false};
  r.numeric.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k));
  r.max_imag = max_abs_imag(r.numeric);

  if (!params.unbroken()) {
    r.phase = Phase::Broken;
    r.pair_audit = conjugate_pair_audit(all, tol.reality);
    r.pass = r.pair_audit <= tol.reality;
    return r;
  }

  const DecoupledSpec spec = model::decoupled_frequencies(params);
  const auto levels = model::analytic_levels(spec, k + 2);
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < levels.size(); ++i) {
    min_gap = std::min(min_gap, levels[i].energy - levels[i - 1].energy);
  }
  const double window = 0.5 * min_gap;
  std::vector<bool> used(levels.size(), false);
  for (const Complex& lambda : r.numeric) {
    std::size_t best = levels.size();
    double best_dist = window;
    for (std::size_t j = 0; j < levels.size(); ++j) {
      const double d = std::abs(lambda - levels[j].energy);
      if (!used[j] && d < best_dist) {
        best = j;
        best_dist = d;
      }
    }
    if (best == levels.size()) {
      r.unmatched.push_back(lambda);
      continue;
    }
    used[best] = true;
    r.matched.push_back({levels[best].label, levels[best].energy, lambda, best_dist});
  }

  bool ok = r.unmatched.empty() && r.max_imag < tol.reality;
  for (const auto& m : r.matched) ok = ok && m.abs_error < tol.convergence;
  r.pass = ok;
  return r;
}

SweepReport phase_sweep(double c1_sq, double c2_sq, std::span<const double> c3_grid,
                        TwoModeDims dims, std::size_t k, double threshold,
                        unsigned jobs) {
  if (c3_grid.empty()) throw Error(ErrorKind::InvalidArgument, "empty c3 grid");
  if (!std::is_sorted(c3_grid.begin(), c3_grid.end())) {
    throw Error(ErrorKind::InvalidArgument, "c3 grid must be nondecreasing");
  }
  require_k(dims, k);
  // Validates c1_sq, c2_sq once up front.
  (void)OscillatorParams(c1_sq, c2_sq, 0.0);

  SweepReport r{c1_sq, c2_sq, dims, k, threshold, 0.0, std::abs(c2_sq - c1_sq),
                std::nullopt, {}, {}, false};
  for (std::size_t i = 1; i < c3_grid.size(); ++i) {
    r.step = std::max(r.step, c3_grid[i] - c3_grid[i - 1]);
  }
  if (dims.min_levels() < 12) {
    r.warnings.push_back("truncation below 12 levels per mode; boundary detection unreliable");
  }

  r.rows.resize(c3_grid.size());
  std::vector<std::exception_ptr> errors(c3_grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < c3_grid.size(); i = next++) {
      try {
        const OscillatorParams p(c1_sq, c2_sq, c3_grid[i]);
        const auto all = linalg::general_eigenvalues(model::hamiltonian(p, dims).matrix());
        const double mi =
            max_abs_imag(std::span<const Complex>(all.data(), std::min(k, all.size())));
        r.rows[i] = {c3_grid[i], mi, p.unbroken(), mi <= threshold};
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n_threads =
      std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(c3_grid.size())));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  for (const auto& row : r.rows) {
    if (!row.unbroken_numeric) {
      r.detected_boundary = row.c3;
      break;
    }
  }

  // Classification must agree with the analytic flag away from the boundary.
  bool ok = true;
  for (const auto& row : r.rows) {
    const bool near = std::abs(std::abs(row.c3) - r.analytic_boundary) <= r.step;
    if (!near && row.unbroken_numeric != row.unbroken_analytic) ok = false;
  }
  if (r.detected_boundary) {
    ok = ok && std::abs(std::abs(*r.detected_boundary) - r.analytic_boundary) <= r.step;
  }
  r.pass = ok;
  return r;
}

std::vector<ResidualReport> identity_suite(const OscillatorParams& params,
                                           TwoModeDims dims, const SuiteOptions& options) {
  const Tolerances& tol = options.tolerances;
  const DecoupledSpec spec = model::decoupled_frequencies(params);
  const double theta = options.theta_override.value_or(spec.theta);
  if (!std::isfinite(theta)) {
    throw Error(ErrorKind::BrokenPhase, "metric angle diverges at the exceptional point");
  }
  const BulkProjector bulk(dims, options.bulk_fraction);
  const BulkProjector full = BulkProjector::full(dims);

  const TruncatedOperator h = model::hamiltonian(params, dims);
  const MetricPair met = symm::metric(theta, dims);
  const AntilinearMap et = symm::eta_tilde(met);

  std::vector<ResidualReport> out;
  out.push_back(pseudo_hermiticity_residual(h, met, bulk, tol.identity));
  out.push_back(pseudo_pt_residual(h, full, tol.machine));
  out.push_back(eta_tilde_commutator(h, et, bulk, tol.identity));
  out.push_back(eta_tilde_involution(et, bulk, tol.identity));
  out.push_back(pt_metric_inverse(met, bulk, tol.identity));
  for (auto& r : transform_rules_check(met, bulk, tol.identity)) out.push_back(std::move(r));
  out.push_back(dyson_decoupling_residual(h, met, model::decoupled_hamiltonian(spec, dims),
                                          bulk, tol.identity));
  return out;
}

}  // namespace etapt::verify
