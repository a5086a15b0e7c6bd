#include "cvpqc/ensembles.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace cvpqc {

void ChannelSpec::validate() const {
  require(std::isfinite(b) && b > 0.0, "ChannelSpec: b must be positive");
  require(N >= 1, "ChannelSpec: N must be >= 1");
}

void SimplifiedSpec::validate() const {
  require(std::isfinite(b) && b > 0.0, "SimplifiedSpec: b must be positive");
  require(p >= 1, "SimplifiedSpec: p must be >= 1");
  require(std::isfinite(r) && r > 0.0 && r <= b, "SimplifiedSpec: r must satisfy 0 < r <= b");
}

double SimplifiedSpec::rotation(int q) const { return 2.0 * std::numbers::pi * q / p; }

Diagnostics diagnose(const FockOperator& rho) {
  return {static_cast<std::size_t>(rho.rows()), 1.0 - rho.trace().real()};
}

Eigen::VectorXd maximally_mixed_diagonal(double b, std::size_t dim) {
  require(b > 0.0, "maximally_mixed: b must be positive");
  Eigen::VectorXd d(static_cast<Eigen::Index>(dim));
  const double lambda = b * b;
  for (Eigen::Index n = 0; n < d.size(); ++n) d(n) = poisson_tail<double>(n, lambda) / lambda;
  return d;
}

FockOperator maximally_mixed(double b, const CutoffPolicy& cutoff) {
  cutoff.require_admits(b, "maximally_mixed");
  return maximally_mixed_diagonal(b, cutoff.dim()).cast<Complex>().asDiagonal();
}

namespace {

// Adds weight * rho_p(radius) into out.
void add_circle(FockOperator& out, int p, double radius, double weight) {
  const auto c = coherent_amplitudes<double>(Complex(radius, 0.0), static_cast<std::size_t>(out.rows()));
  for (Eigen::Index m = 0; m < out.rows(); ++m)
    for (Eigen::Index n = m % p; n < out.cols(); n += p) out(m, n) += weight * (c(m) * c(n)).real();
}

}  // namespace

FockOperator circle_mixture(int p, double radius, const CutoffPolicy& cutoff) {
  require(p >= 1, "circle_mixture: p must be >= 1");
  require(radius >= 0.0, "circle_mixture: radius must be non-negative");
  cutoff.require_admits(radius, "circle_mixture");
  const auto dim = static_cast<Eigen::Index>(cutoff.dim());
  FockOperator out = FockOperator::Zero(dim, dim);
  add_circle(out, p, radius, 1.0);
  return out;
}

FockOperator phi_n(const ChannelSpec& spec, const CutoffPolicy& cutoff) {
  spec.validate();
  cutoff.require_admits(spec.b, "phi_n");
  const auto dim = static_cast<Eigen::Index>(cutoff.dim());
  FockOperator out = FockOperator::Zero(dim, dim);
  const double m = static_cast<double>(spec.key_count());
  for (int p = 1; p <= spec.N; ++p) add_circle(out, p, spec.radius(p), p / m);
  return out;
}

FockOperator encrypt(const CoherentLabel& input, const ChannelSpec& spec, const CutoffPolicy& cutoff) {
  spec.validate();
  require(input.r >= 0.0 && input.r <= spec.b, "encrypt: input must lie inside the disk |beta| <= b");
  cutoff.require_admits(spec.b + input.r, "encrypt");
  return displacement_conjugate(phi_n(spec, cutoff), input, cutoff);
}

PhaseShiftState phase_shift_ensemble(const CoherentLabel& input, const SimplifiedSpec& spec,
                                     const CutoffPolicy& cutoff) {
  require(spec.p >= 1, "phase_shift_ensemble: p must be >= 1");
  require(input.r >= 0.0 && input.r <= spec.b, "phase_shift_ensemble: input must lie inside the disk |alpha| <= b");
  // The rotations 2*pi*q/p applied to r e^{i theta} give the canonical
  // circle (angles 2*pi*q/p) turned by theta.
  return {circle_mixture(spec.p, input.r, cutoff), input.theta};
}

}  // namespace cvpqc
