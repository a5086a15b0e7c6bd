#include "cvpqc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <ostream>

#include "cvpqc/distances.hpp"
#include "cvpqc/ensembles.hpp"
#include "cvpqc/optimizer.hpp"
#include "cvpqc/special_functions.hpp"

namespace cvpqc {

namespace {

std::string fmt(const char* format, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, format, value);
  return buffer;
}

std::string sci(double value) { return fmt("%.3e", value); }

class Collector {
 public:
  explicit Collector(std::string suite) : suite_(std::move(suite)) {}

  void check(std::string name, bool passed, std::string detail) {
    results_.push_back({suite_, std::move(name), passed, std::move(detail)});
  }

  // Runs `body`, turning any exception into a failed check.
  void guarded(const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      check(name, false, std::string("exception: ") + e.what());
    }
  }

  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  std::string suite_;
  std::vector<CheckResult> results_;
};

std::vector<CheckResult> identities() {
  Collector c("identities");
  for (double x : {0.5, 1.0, 2.0, 4.0, 8.0}) {
    c.guarded("bessel_identity", [&] {
      const double value = std::exp(-x) * (bessel_i<double>(0, x) + 2.0 * bessel_sum<double>(1, x));
      const double err = std::abs(value - 1.0);
      c.check("bessel_identity x=" + fmt("%g", x), err < 1e-12, "|e^-x(I0+2sum Ik)-1|=" + sci(err));
    });
  }
  // I0(2xy) + 2 sum Ik(2xy) = e^{2xy}
  double worst = 0.0;
  for (double x : {0.6, 1.2, 1.8, 2.4, 3.0})
    for (double y : {0.6, 1.2, 1.8, 2.4, 3.0}) {
      const double z = 2.0 * x * y;
      worst = std::max(worst, std::abs(std::exp(-z) * (bessel_i<double>(0, z) + 2.0 * bessel_sum<double>(1, z)) - 1.0));
    }
  c.check("bessel_identity_grid 5x5", worst < 1e-12, "max err=" + sci(worst));

  // With x = y the right-hand side e^{2xy} coincides with e^{x^2} e^{y^2}.
  double worst_diagonal = 0.0;
  for (double x : {0.6, 1.2, 1.8, 2.4, 3.0}) {
    const double z = 2.0 * x * x;
    worst_diagonal = std::max(
        worst_diagonal, std::abs(std::exp(-2.0 * x * x) * (bessel_i<double>(0, z) + 2.0 * bessel_sum<double>(1, z)) - 1.0));
  }
  c.check("bessel_identity_equal_radii", worst_diagonal < 1e-12, "max err=" + sci(worst_diagonal));

  c.guarded("unit_diagonal_closed_form", [&] {
    double worst_diag = 0.0;
    for (double b : {0.5, 1.0, 2.0, 3.0}) {
      const double lambda = b * b;
      long double partial = 0.0L, term = 1.0L;
      for (int n = 0; n < 40; ++n) {
        partial += term;
        const long double closed = std::exp(-static_cast<long double>(lambda)) *
                                   (std::exp(static_cast<long double>(lambda)) - partial) / lambda;
        worst_diag = std::max(worst_diag, std::abs(static_cast<double>(closed) - poisson_tail<double>(n, lambda) / lambda));
        term *= lambda / (n + 1);
      }
    }
    c.check("unit_diagonal_closed_form", worst_diag < 1e-13, "max err=" + sci(worst_diag));
  });
  return c.take();
}

std::vector<CheckResult> oracles(const VerifyOptions& options) {
  Collector c("oracles");
  const std::vector<double> bs{0.5, 1.0, 2.0};
  const int n_max = options.quick ? 3 : 6;
  for (double b : bs) {
    for (int N = 1; N <= n_max; ++N) {
      const std::string tag = "b=" + fmt("%g", b) + " N=" + std::to_string(N);
      c.guarded("distance_oracle " + tag, [&] {
        DistanceReport report = hs2_exact(b, N);
        attach_numeric_oracle(report, 1e-12);
        const double err = *report.discrepancy();
        c.check("distance_oracle " + tag, err < 1e-8, "|exact-numeric|=" + sci(err));

        const CutoffPolicy cutoff{1e-12, b};
        const FockOperator unit = maximally_mixed(b, cutoff);
        const FockOperator phi = phi_n({b, N}, cutoff);
        const double e1 = std::abs(report.tr_unit2 - (unit * unit).trace().real());
        const double e2 = std::abs(report.tr_cross - (unit * phi).trace().real());
        const double e3 = std::abs(report.tr_phi2 - (phi * phi).trace().real());
        const double worst = std::max({e1, e2, e3});
        c.check("trace_terms " + tag, worst < 1e-9, "max term err=" + sci(worst));
      });
    }
  }

  c.guarded("unitary_invariance", [&] {
    const ChannelSpec spec{2.0, 4};
    const double exact = hs2_exact(spec.b, spec.N).d2_exact;
    for (Complex beta : {Complex(0.3, 0.0), std::polar(0.7, std::numbers::pi / 4)}) {
      const CoherentLabel label = CoherentLabel::from_amplitude(beta);
      const CutoffPolicy cutoff{1e-12, spec.b + label.r};
      const FockOperator shifted_unit = displacement_conjugate(maximally_mixed(spec.b, cutoff), label, cutoff);
      const FockOperator encrypted = encrypt(label, spec, cutoff);
      const double d = hs_distance_numeric(shifted_unit, encrypted);
      const double err = std::abs(d * d - exact);
      c.check("unitary_invariance |beta|=" + fmt("%g", label.r), err < 1e-6, "|D^2 - exact|=" + sci(err));
    }
  });

  c.guarded("simplified_oracle", [&] {
    const double b = 2.0, r = 1.0;
    const int p = 4;
    const CutoffPolicy cutoff{1e-12, b};
    const double d = hs_distance_numeric(maximally_mixed(b, cutoff), circle_mixture(p, r, cutoff));
    const double err = std::abs(d * d - hs2_simplified(b, p, r));
    c.check("simplified_oracle b=2 p=4 r=1", err < 1e-8, "|exact-numeric|=" + sci(err));
  });

  c.guarded("stationarity_derivative", [&] {
    const double b = 2.0, r = 1.0, h = 1e-4;
    const double fd = (hs2_simplified(b, kLargeP, r + h) - hs2_simplified(b, kLargeP, r - h)) / (2.0 * h);
    const double err = std::abs(4.0 * std::exp(-2.0 * r * r) * stationarity(b, r) - fd);
    c.check("stationarity_derivative b=2 r=1", err < 1e-5, "|4e^{-2r^2} S - fd|=" + sci(err));
  });

  for (double b : options.quick ? std::vector<double>{1.0, 2.0} : std::vector<double>{0.5, 1.0, 2.0, 4.0, 6.0}) {
    c.guarded("rmin b=" + fmt("%g", b), [&] {
      const RminResult r = find_rmin(b);
      const double gap = std::abs(r.r_min - r.grid_r_min);
      c.check("rmin b=" + fmt("%g", b),
              r.method == RminMethod::root_find && gap < 1e-3 && r.r_min < b && std::abs(r.residual) < 1e-10,
              "r_min=" + fmt("%.6f", r.r_min) + " |root-grid|=" + sci(gap) + " residual=" + sci(std::abs(r.residual)));
    });
  }

  c.guarded("lambda_diagonality", [&] {
    const std::size_t samples = options.quick ? 10'000 : 100'000;
    const OffDiagonalEstimate est = off_diagonal_check(0.5, samples, options.seed);
    c.check("lambda_diagonality b=0.5 samples=" + std::to_string(samples),
            est.max_magnitude < 5.0 * est.standard_error && est.max_z < 5.0,
            "max|offdiag|=" + sci(est.max_magnitude) + " se=" + sci(est.standard_error) + " max_z=" + fmt("%.2f", est.max_z));
  });
  return c.take();
}

std::vector<CheckResult> limits(const VerifyOptions& options) {
  Collector c("limits");
  c.guarded("phi_corner_convergence", [&] {
    const double b = 1.0;
    const double target = (1.0 - std::exp(-b * b)) / (b * b);
    double previous_corner = INFINITY, previous_diag = INFINITY;
    bool monotone = true;
    double last_diag = 0.0;
    for (int N : {5, 10, 20, 40, 80}) {
      const CutoffPolicy cutoff{1e-12, b};
      const FockOperator phi = phi_n({b, N}, cutoff);
      const Eigen::VectorXd unit = maximally_mixed_diagonal(b, cutoff.dim());
      const double corner = std::abs(phi(0, 0).real() - target);
      double diag = 0.0;
      for (Eigen::Index n = 0; n <= std::min<Eigen::Index>(20, unit.size() - 1); ++n)
        diag = std::max(diag, std::abs(phi(n, n).real() - unit(n)));
      monotone = monotone && corner < previous_corner && diag < previous_diag;
      previous_corner = corner;
      previous_diag = diag;
      last_diag = diag;
      c.check("phi_corner N=" + std::to_string(N), true,
              "Phi_N(0,0)=" + fmt("%.9f", phi(0, 0).real()) + " target=" + fmt("%.9f", target) +
                  " max_diag_err=" + sci(diag));
    }
    c.check("phi_diagonal_convergence b=1", monotone && last_diag < 5e-3,
            "monotone=" + std::string(monotone ? "yes" : "no") + " err(N=80)=" + sci(last_diag));
  });

  c.guarded("unit_purity_limit", [&] {
    const double err = std::abs(trace_unit_sq(1e-3) - 1.0);
    c.check("unit_purity_limit b=1e-3", err < 1e-5, "|Tr(I_b^2)-1|=" + sci(err));
  });

  c.guarded("holevo_small_b", [&] {
    const double chi = holevo_bound(1e-3, QuadratureSettings{options.quick ? 16 : 32, 64}, CutoffPolicy{1e-10, 2e-3});
    c.check("holevo_small_b b=1e-3", chi >= 0.0 && chi < 0.05, "chi=" + sci(chi) + " bits");
  });
  return c.take();
}

}  // namespace

VerifySuite parse_verify_suite(const std::string& name) {
  if (name == "identities") return VerifySuite::identities;
  if (name == "oracles") return VerifySuite::oracles;
  if (name == "limits") return VerifySuite::limits;
  if (name == "all") return VerifySuite::all;
  throw PreconditionError("unknown verify suite '" + name + "' (identities|oracles|limits|all)");
}

std::vector<CheckResult> run_verify(VerifySuite suite, const VerifyOptions& options) {
  std::vector<CheckResult> results;
  auto append = [&](std::vector<CheckResult> more) {
    results.insert(results.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
  };
  if (suite == VerifySuite::identities || suite == VerifySuite::all) append(identities());
  if (suite == VerifySuite::oracles || suite == VerifySuite::all) append(oracles(options));
  if (suite == VerifySuite::limits || suite == VerifySuite::all) append(limits(options));
  return results;
}

void print_report(std::ostream& out, const std::vector<CheckResult>& results) {
  std::size_t failed = 0;
  for (const auto& r : results) {
    out << (r.passed ? "PASS " : "FAIL ") << r.suite << '/' << r.name << ": " << r.detail << '\n';
    if (!r.passed) ++failed;
  }
  out << results.size() - failed << '/' << results.size() << " checks passed\n";
}

}  // namespace cvpqc
