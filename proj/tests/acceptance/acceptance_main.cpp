// Acceptance suite: one PASS/FAIL line per criterion, details indented below.
// Exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Eigenvalues>

#include "cli/app.hpp"
#include "etapt/etapt.hpp"

using namespace etapt;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    details.push_back(std::string(ok ? "ok    " : "FAIL  ") + what);
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

TwoModeDims square(int n) { return {ModeDim(n), ModeDim(n)}; }

const OscillatorParams kFixture(2.0, 1.0, 0.5);

// omega^2 from the 2x2 potential matrix, larger first.
std::array<Complex, 2> potential_oracle(double c1_sq, double c2_sq, double c3) {
  Eigen::Matrix2cd v;
  v << c1_sq, Complex(0, 0.5 * c3), Complex(0, 0.5 * c3), c2_sq;
  const Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(v);
  std::array<Complex, 2> w{es.eigenvalues()(0), es.eigenvalues()(1)};
  if (w[0].real() < w[1].real()) std::swap(w[0], w[1]);
  return w;
}

struct OracleLevel {
  int n1, n2;
  double energy;
};

// c1^2 > c2^2 here, so mode 1 carries the larger frequency.
std::vector<OracleLevel> oracle_levels(double w1, double w2, int count) {
  std::vector<OracleLevel> all;
  for (int n1 = 0; n1 < 12; ++n1)
    for (int n2 = 0; n2 < 12; ++n2) all.push_back({n1, n2, w1 * (n1 + 0.5) + w2 * (n2 + 0.5)});
  std::sort(all.begin(), all.end(),
            [](const auto& a, const auto& b) { return a.energy < b.energy; });
  all.resize(count);
  return all;
}

Outcome spectrum_reproduction() {
  Outcome o;
  const auto w = potential_oracle(2.0, 1.0, 0.5);
  const double w1 = std::sqrt(w[0].real()), w2 = std::sqrt(w[1].real());
  o.details.push_back("oracle omega1 = " + fmt("%.7f", w1) + ", omega2 = " + fmt("%.7f", w2) +
                      ", E00 = " + fmt("%.7f", 0.5 * (w1 + w2)));

  // Unblocked dense eigensolve of the full 900 x 900 matrix.
  const Matrix h = model::hamiltonian(kFixture, square(30)).matrix();
  const Eigen::ComplexEigenSolver<Matrix> es(h, false);
  std::vector<Complex> values(es.eigenvalues().data(),
                              es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(values.begin(), values.end(),
            [](Complex a, Complex b) { return a.real() < b.real(); });

  const auto expected = oracle_levels(w1, w2, 6);
  double max_imag = 0.0, max_err = 0.0;
  for (int i = 0; i < 6; ++i) {
    max_imag = std::max(max_imag, std::abs(values[i].imag()));
    max_err = std::max(max_err, std::abs(values[i].real() - expected[i].energy));
  }
  o.check(max_imag < 1e-8, "max |Im E| over lowest 6 = " + fmt("%.3e", max_imag));
  o.check(max_err < 1e-6, "max |E - E_n1n2| over lowest 6 = " + fmt("%.3e", max_err));

  const auto rep = verify::spectrum_report(kFixture, square(30), 6);
  o.check(rep.pass, "library spectrum report at dims 30 passes");
  return o;
}

Outcome identity_suite() {
  Outcome o;
  const double theta = std::atanh(-0.5);
  o.check(std::abs(model::theta_of(kFixture) - theta) < 1e-15,
          "closure angle = atanh(-0.5) = " + fmt("%.10f", theta));

  const char* names[] = {"pseudo_hermiticity", "eta_tilde_commutator", "pt_metric_inverse",
                         "eta_tilde_involution", "transform_p1", "transform_p2",
                         "transform_x1", "transform_x2", "dyson_decoupling"};
  const verify::SuiteOptions options{0.5, {}, std::nullopt};
  const auto small = verify::identity_suite(kFixture, square(16), options);
  const auto large = verify::identity_suite(kFixture, square(24), options);
  auto find = [](const std::vector<ResidualReport>& reps, const std::string& name) {
    for (const auto& r : reps)
      if (r.name == name) return r.residual;
    return std::nan("");
  };
  for (const char* name : names) {
    const double r16 = find(small, name), r24 = find(large, name);
    o.check(r24 < 1e-8, std::string(name) + " at dims 24: " + fmt("%.3e", r24) + " < 1e-8");
    o.check(r24 < r16, std::string(name) + " decreases 16 -> 24: " + fmt("%.3e", r16) +
                           " -> " + fmt("%.3e", r24));
  }
  return o;
}

Outcome exact_identities() {
  Outcome o;
  double worst = 0.0;
  for (int n : {4, 8, 16, 24, 30}) {
    for (const OscillatorParams& p :
         {kFixture, OscillatorParams(1, 3, -1.2), OscillatorParams(2, 1, 1.4)}) {
      const auto r = verify::pseudo_pt_residual(model::hamiltonian(p, square(n)),
                                                BulkProjector::full(square(n)), 1e-13);
      worst = std::max(worst, r.residual);
    }
  }
  o.check(worst < 1e-13, "H^dagger = PT H PT, max over dims 4..30 = " + fmt("%.3e", worst));

  double pi_sq = 0.0, pt_sq = 0.0, pxp = 0.0;
  for (int n : {4, 8, 16, 24, 30}) {
    const auto d = square(n);
    const Matrix pi = symm::parity(d).matrix();
    const Index size = d.size();
    pi_sq = std::max(pi_sq, (pi * pi - Matrix::Identity(size, size)).cwiseAbs().maxCoeff());
    const auto ptpt = symm::pt_map(d) * symm::pt_map(d);
    pt_sq = std::max(pt_sq, ptpt.conjugates() ? 1.0 :
                     (ptpt.linear_part().matrix() - Matrix::Identity(size, size))
                         .cwiseAbs().maxCoeff());
    const auto c = fock::canonical_operators(d);
    for (const auto* x : {&c.x1, &c.x2}) {
      pxp = std::max(pxp, (pi * x->matrix() * pi + x->matrix()).cwiseAbs().maxCoeff());
    }
  }
  o.check(pi_sq == 0.0, "Pi^2 = I exactly");
  o.check(pt_sq == 0.0, "(PT)^2 = id exactly");
  o.check(pxp == 0.0, "Pi X_i Pi = -X_i exactly");
  return o;
}

Outcome gram_structure() {
  Outcome o;
  const auto d = square(30);
  const auto states = model::model_eigensystem(kFixture, d, 6);
  const Matrix pi = symm::parity(d).matrix();

  const auto pairs = linalg::general_eigensystem(model::hamiltonian(kFixture, d).matrix());
  std::vector<Vector> vecs;
  for (int i = 0; i < 6; ++i) vecs.push_back(pairs[i].vector);
  const auto et = symm::eta_tilde(symm::metric(model::theta_of(kFixture), d));
  const auto g = verify::gram(vecs, GramForm::EtaTilde, et);
  const auto c = verify::gram(vecs, GramForm::CEtaTilde, et);

  o.check(g.max_offdiag < 1e-6, "eta~ Gram off-diagonal max = " + fmt("%.3e", g.max_offdiag));
  bool signs_ok = true;
  std::ostringstream signs;
  for (int n = 0; n < 6; ++n) {
    const auto& s = states[n];
    const Complex oracle = s.phi.transpose() * pi * s.phi;
    const int oracle_sign = oracle.real() > 0 ? 1 : -1;
    const int parity_sign = (s.label.n1 + s.label.n2) % 2 == 0 ? 1 : -1;
    signs_ok = signs_ok && g.signs[n] == oracle_sign && oracle_sign == parity_sign;
    signs << (n ? " " : "") << "(" << s.label.n1 << "," << s.label.n2 << "):"
          << (g.signs[n] > 0 ? "+" : "-");
  }
  o.check(signs_ok, "signs match phi^T Pi phi and (-1)^(n1+n2): " + signs.str());
  o.check(c.max_deviation < 1e-6, "C eta~ Gram vs identity max = " + fmt("%.3e", c.max_deviation));
  return o;
}

Outcome phase_boundary() {
  Outcome o;
  std::vector<double> grid;
  for (int i = 0; i <= 30; ++i) grid.push_back(0.05 * i);
  const unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  const auto rep = verify::phase_sweep(2.0, 1.0, grid, square(24), 6, 1e-4, jobs);

  double first = std::nan("");
  for (const auto& row : rep.rows) {
    if (row.max_imag > 1e-4) {
      first = row.c3;
      break;
    }
  }
  o.check(std::abs(first - 1.0) <= 0.05 + 1e-12,
          "first c3 with max|Im| > 1e-4 is " + fmt("%.2f", first) + ", boundary at 1");

  double audit = 0.0;
  for (double c3 : {1.05, 1.2, 1.5}) {
    const auto values =
        linalg::general_eigenvalues(model::hamiltonian({2.0, 1.0, c3}, square(24)).matrix());
    audit = std::max(audit, verify::conjugate_pair_audit(values, 1e-8));
  }
  o.check(audit < 1e-8, "broken-phase conjugate-pair audit max = " + fmt("%.3e", audit));
  return o;
}

Outcome negative_controls() {
  Outcome o;
  const verify::SuiteOptions options{0.5, {}, 0.1};
  const auto reps = verify::identity_suite(kFixture, square(24), options);
  for (const auto& r : reps) {
    if (r.name == "eta_tilde_commutator" || r.name == "dyson_decoupling") {
      o.check(r.residual > 1e-3, r.name + " at theta = 0.1: " + fmt("%.3e", r.residual));
    }
  }

  const char* argv[] = {"etapt", "verify", "--dims", "24,24", "--theta-override", "0.1"};
  std::ostringstream out, err;
  const int code = cli::run_app(6, argv, out, err);
  o.check(code != 0, "verify with --theta-override 0.1 exits " + std::to_string(code));

  bool raised = false;
  try {
    model::theta_of(OscillatorParams(1.5, 1.5, 0.3));
  } catch (const Error& e) {
    raised = e.kind() == ErrorKind::BrokenPhase || e.kind() == ErrorKind::DegenerateFrequencies;
  }
  o.check(raised, "theta_of with c1^2 = c2^2, c3 != 0 raises");
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  std::mt19937 rng(20241015);
  std::uniform_real_distribution<double> c(0.1, 5.0);
  std::uniform_real_distribution<double> frac(-0.98, 0.98);
  double freq_err = 0.0, closure_err = 0.0;
  for (int checked = 0; checked < 100;) {
    const double c1 = c(rng), c2 = c(rng);
    if (std::abs(c1 - c2) < 1e-3) continue;
    const OscillatorParams p(c1, c2, frac(rng) * std::abs(c2 - c1));
    const auto s = model::decoupled_frequencies(p);
    const auto w = potential_oracle(p.c1_sq, p.c2_sq, p.c3);
    const double hi = std::max(s.omega1, s.omega2), lo = std::min(s.omega1, s.omega2);
    freq_err = std::max({freq_err, std::abs(hi * hi - w[0].real()) / w[0].real(),
                         std::abs(lo * lo - w[1].real()) / w[1].real()});
    const double scale = std::abs((p.c1_sq - p.c2_sq) * std::sinh(s.theta)) +
                         std::abs(p.c3 * std::cosh(s.theta));
    closure_err = std::max(closure_err, std::abs(model::closure_residual(p, s.theta)) / scale);
    ++checked;
  }
  o.check(freq_err < 1e-12, "omega^2 vs potential matrix, max relative = " + fmt("%.3e", freq_err));
  o.check(closure_err < 1e-12, "closure condition, max relative = " + fmt("%.3e", closure_err));
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"AC1 spectrum reproduction", spectrum_reproduction},
      {"AC2 bulk identity suite", identity_suite},
      {"AC3 exact identities under truncation", exact_identities},
      {"AC4 Gram structure", gram_structure},
      {"AC5 phase boundary", phase_boundary},
      {"AC6 negative controls", negative_controls},
      {"AC7 oracle equivalence", oracle_equivalence},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.check(false, std::string("threw: ") + e.what());
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    std::printf("%s  %s  (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.name, elapsed.count());
    for (const auto& d : o.details) std::printf("        %s\n", d.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed,
              std::size(criteria));
  return failed == 0 ? 0 : 1;
}
